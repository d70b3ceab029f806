#include "psent/error.hpp"

namespace psent {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::io: return "io";
    case ErrorCode::malformed_record: return "malformed_record";
    case ErrorCode::duplicate_id: return "duplicate_id";
    case ErrorCode::invalid_label: return "invalid_label";
    case ErrorCode::empty_sentence: return "empty_sentence";
    case ErrorCode::lexicon_overlap: return "lexicon_overlap";
    case ErrorCode::empty_lexicon: return "empty_lexicon";
    case ErrorCode::invalid_entry: return "invalid_entry";
    case ErrorCode::tag_alignment: return "tag_alignment";
    case ErrorCode::unknown_id: return "unknown_id";
    case ErrorCode::missing_tags: return "missing_tags";
    case ErrorCode::empty_document: return "empty_document";
    case ErrorCode::degenerate_statistic: return "degenerate_statistic";
    case ErrorCode::insufficient_samples: return "insufficient_samples";
    case ErrorCode::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

std::optional<ErrorCode> parse_error_code(std::string_view name) noexcept {
  for (int i = 0; i <= static_cast<int>(ErrorCode::invalid_argument); ++i) {
    const auto code = static_cast<ErrorCode>(i);
    if (to_string(code) == name) return code;
  }
  return std::nullopt;
}

}  // namespace psent
