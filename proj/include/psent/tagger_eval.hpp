#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "psent/corpus.hpp"
#include "psent/lexicon.hpp"

namespace psent {

// Rows are gold labels, columns predictions, both in kAllLabels order.
class ConfusionTable {
 public:
  void add(SentimentLabel gold, SentimentLabel predicted, std::uint64_t count = 1) noexcept;
  void merge(const ConfusionTable& other) noexcept;

  [[nodiscard]] std::uint64_t at(SentimentLabel gold, SentimentLabel predicted) const noexcept;
  [[nodiscard]] std::uint64_t total() const noexcept;
  [[nodiscard]] std::uint64_t correct() const noexcept;

  bool operator==(const ConfusionTable&) const = default;

 private:
  std::array<std::array<std::uint64_t, 3>, 3> cells_{};
};

struct ClassMetrics {
  SentimentLabel label = SentimentLabel::neutral;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;

  bool operator==(const ClassMetrics&) const = default;
};

// All scores are percentages. Undefined per-class precision or recall
// (zero denominator) counts as 0 so the macro averages always span 3 classes.
struct TaggerMetrics {
  double overall_accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  std::array<ClassMetrics, 3> per_class{};
  ConfusionTable confusion;
  std::uint64_t tokens = 0;

  bool operator==(const TaggerMetrics&) const = default;
};

using LabelSequences = std::vector<std::vector<SentimentLabel>>;

ConfusionTable confusion_table(const LabeledSentenceCorpus& gold, const LabelSequences& predictions);
TaggerMetrics metrics_from_confusion(const ConfusionTable& table);

// Throws ErrorCode::tag_alignment naming the first misaligned sentence.
TaggerMetrics evaluate_tagger(const LabeledSentenceCorpus& gold, const LabelSequences& predictions);

// Labels the gold tokens as given (no re-tokenization) with the lexicon.
LabelSequences lexicon_predictions(const LabeledSentenceCorpus& gold, const SentimentLexicon& lexicon);

LabelSequences labels_of(const LabeledSentenceCorpus& corpus);

}  // namespace psent
