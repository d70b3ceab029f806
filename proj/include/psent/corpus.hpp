#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace psent {

enum class SentimentLabel { negative, neutral, positive };

// Five-grade scale used by the original treebank annotation.
enum class FiveGradeLabel { very_negative, negative, neutral, positive, very_positive };

inline constexpr std::array<SentimentLabel, 3> kAllLabels = {
    SentimentLabel::negative, SentimentLabel::neutral, SentimentLabel::positive};

SentimentLabel merge_five_to_three(FiveGradeLabel label) noexcept;

std::string_view to_string(SentimentLabel label) noexcept;
std::optional<SentimentLabel> parse_three_grade(std::string_view text) noexcept;
std::optional<FiveGradeLabel> parse_five_grade(std::string_view text) noexcept;

// Single-character codes used by tag files: p, n, o.
char to_code(SentimentLabel label) noexcept;
std::optional<SentimentLabel> from_code(std::string_view code) noexcept;

enum class SummaryOrigin { reference, generated };

struct DialogueSummaryPair {
  std::string id;
  std::string dialogue;
  std::vector<std::string> summaries;
  SummaryOrigin origin = SummaryOrigin::reference;

  bool operator==(const DialogueSummaryPair&) const = default;
};

enum class PairFormat { simple, multi_reference };

std::optional<PairFormat> parse_pair_format(std::string_view text) noexcept;

// Reads a line-delimited JSON pair file. Blank lines are skipped but still
// counted, so error messages point at the physical line.
std::vector<DialogueSummaryPair> load_pairs(const std::filesystem::path& path, PairFormat format,
                                            SummaryOrigin origin = SummaryOrigin::reference);
std::vector<DialogueSummaryPair> parse_pairs(std::istream& in, PairFormat format,
                                             SummaryOrigin origin = SummaryOrigin::reference,
                                             std::string_view source = "<stream>");

// One record per line, `summary`, `summary2`, ... in list order.
std::string serialize_pair(const DialogueSummaryPair& pair);
std::string serialize_pairs(const std::vector<DialogueSummaryPair>& pairs);

struct LabeledToken {
  std::string text;
  SentimentLabel label = SentimentLabel::neutral;

  bool operator==(const LabeledToken&) const = default;
};

using LabeledSentence = std::vector<LabeledToken>;

enum class Split { train, validation, test };

struct LabeledSentenceCorpus {
  std::vector<LabeledSentence> sentences;
  Split split = Split::test;

  [[nodiscard]] std::size_t token_count() const noexcept;
};

// Token-label file: `#labels=3` or `#labels=5` header, then one sentence per
// line as space-separated `word/label` items. A literal slash inside a word
// is written `\/`.
LabeledSentenceCorpus load_labeled_corpus(const std::filesystem::path& path,
                                          Split split = Split::test);
LabeledSentenceCorpus parse_labeled_corpus(std::istream& in, Split split = Split::test,
                                           std::string_view source = "<stream>");
std::string serialize_labeled_corpus(const LabeledSentenceCorpus& corpus);

}  // namespace psent
