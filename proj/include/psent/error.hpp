#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace psent {

// Machine-readable failure classes. The CLI prints the name next to the
// human message so scripts can match on specific failure modes.
enum class ErrorCode {
  io,
  malformed_record,
  duplicate_id,
  invalid_label,
  empty_sentence,
  lexicon_overlap,
  empty_lexicon,
  invalid_entry,
  tag_alignment,
  unknown_id,
  missing_tags,
  empty_document,
  degenerate_statistic,
  insufficient_samples,
  invalid_argument,
};

std::string_view to_string(ErrorCode code) noexcept;
std::optional<ErrorCode> parse_error_code(std::string_view name) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace psent
