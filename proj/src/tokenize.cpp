#include "psent/tokenize.hpp"

#include "text_util.hpp"

namespace psent {

bool is_unicode_space(char32_t cp) noexcept {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_punctuation(char32_t cp) noexcept {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  switch (cp) {
    case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB: case 0xBF:
      return true;
    default:
      break;
  }
  return (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E) ||
         (cp >= 0x3001 && cp <= 0x3003) || (cp >= 0x3008 && cp <= 0x3011) ||
         (cp >= 0xFF01 && cp <= 0xFF0F);
}

bool is_speaker_marker(std::string_view piece) noexcept {
  if (!piece.empty() && piece.back() == ':') piece.remove_suffix(1);
  constexpr std::string_view prefix = "#Person";
  if (piece.size() < prefix.size() + 2 || piece.substr(0, prefix.size()) != prefix ||
      piece.back() != '#') {
    return false;
  }
  const auto digits = piece.substr(prefix.size(), piece.size() - prefix.size() - 1);
  for (const char c : digits) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

namespace {

void emit_piece(std::string_view text, std::size_t begin, std::size_t end,
                const TokenizeOptions& options, TokenStream& out) {
  const auto piece = text.substr(begin, end - begin);
  if (is_speaker_marker(piece)) {
    if (options.keep_speaker_tokens) {
      const auto len = piece.back() == ':' ? piece.size() - 1 : piece.size();
      out.tokens.emplace_back(piece.substr(0, len));
      out.spans.push_back({begin, begin + len});
    }
    return;
  }

  auto lo = begin;
  while (lo < end) {
    const auto ch = detail::decode_utf8(text, lo);
    if (!is_punctuation(ch.cp)) break;
    lo += ch.length;
  }
  if (lo >= end) return;  // pure punctuation

  // Walk forward to find the end of the last non-punctuation character.
  auto hi = lo;
  for (auto pos = lo; pos < end;) {
    const auto ch = detail::decode_utf8(text, pos);
    pos += ch.length;
    if (!is_punctuation(ch.cp)) hi = pos;
  }
  out.tokens.emplace_back(text.substr(lo, hi - lo));
  out.spans.push_back({lo, hi});
}

}  // namespace

TokenStream tokenize(std::string_view text, const TokenizeOptions& options) {
  TokenStream out;
  std::size_t pos = 0;
  std::size_t piece_begin = 0;
  bool in_piece = false;
  while (pos < text.size()) {
    const auto ch = detail::decode_utf8(text, pos);
    if (is_unicode_space(ch.cp)) {
      if (in_piece) emit_piece(text, piece_begin, pos, options, out);
      in_piece = false;
    } else if (!in_piece) {
      in_piece = true;
      piece_begin = pos;
    }
    pos += ch.length;
  }
  if (in_piece) emit_piece(text, piece_begin, text.size(), options, out);
  return out;
}

}  // namespace psent
