#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace psent {

struct TokenizeOptions {
  // Keep `#PersonN#` speaker markers (trailing colon removed) as tokens.
  bool keep_speaker_tokens = false;
};

struct Span {
  std::size_t begin = 0;  // byte offset, inclusive
  std::size_t end = 0;    // byte offset, exclusive

  bool operator==(const Span&) const = default;
};

struct TokenStream {
  std::vector<std::string> tokens;
  std::vector<Span> spans;

  [[nodiscard]] std::size_t size() const noexcept { return tokens.size(); }
  [[nodiscard]] bool empty() const noexcept { return tokens.empty(); }
};

// Splits on Unicode whitespace, drops speaker markers and pure-punctuation
// pieces, and strips punctuation from both ends of what remains. Interior
// punctuation ("that's", "well-known") is kept.
TokenStream tokenize(std::string_view text, const TokenizeOptions& options = {});

bool is_speaker_marker(std::string_view piece) noexcept;
bool is_unicode_space(char32_t cp) noexcept;
bool is_punctuation(char32_t cp) noexcept;

}  // namespace psent
