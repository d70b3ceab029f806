#include "psent/tagger_eval.hpp"

#include <string>

#include "psent/error.hpp"

namespace psent {

namespace {

std::size_t index_of(SentimentLabel label) noexcept {
  switch (label) {
    case SentimentLabel::negative: return 0;
    case SentimentLabel::neutral: return 1;
    case SentimentLabel::positive: return 2;
  }
  return 1;
}

double ratio_percent(std::uint64_t num, std::uint64_t den) noexcept {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

void ConfusionTable::add(SentimentLabel gold, SentimentLabel predicted,
                         std::uint64_t count) noexcept {
  cells_[index_of(gold)][index_of(predicted)] += count;
}

void ConfusionTable::merge(const ConfusionTable& other) noexcept {
  for (std::size_t g = 0; g < 3; ++g) {
    for (std::size_t p = 0; p < 3; ++p) cells_[g][p] += other.cells_[g][p];
  }
}

std::uint64_t ConfusionTable::at(SentimentLabel gold, SentimentLabel predicted) const noexcept {
  return cells_[index_of(gold)][index_of(predicted)];
}

std::uint64_t ConfusionTable::total() const noexcept {
  std::uint64_t n = 0;
  for (const auto& row : cells_) {
    for (const auto c : row) n += c;
  }
  return n;
}

std::uint64_t ConfusionTable::correct() const noexcept {
  return cells_[0][0] + cells_[1][1] + cells_[2][2];
}

ConfusionTable confusion_table(const LabeledSentenceCorpus& gold,
                               const LabelSequences& predictions) {
  if (predictions.size() != gold.sentences.size()) {
    throw Error(ErrorCode::tag_alignment,
                "gold has " + std::to_string(gold.sentences.size()) + " sentences but " +
                    std::to_string(predictions.size()) + " prediction sequences were given");
  }
  ConfusionTable table;
  for (std::size_t s = 0; s < predictions.size(); ++s) {
    const auto& sentence = gold.sentences[s];
    const auto& predicted = predictions[s];
    if (sentence.size() != predicted.size()) {
      throw Error(ErrorCode::tag_alignment,
                  "sentence " + std::to_string(s) + ": " + std::to_string(sentence.size()) +
                      " gold tokens but " + std::to_string(predicted.size()) + " predictions");
    }
    for (std::size_t i = 0; i < sentence.size(); ++i) table.add(sentence[i].label, predicted[i]);
  }
  return table;
}

TaggerMetrics metrics_from_confusion(const ConfusionTable& table) {
  TaggerMetrics m;
  m.confusion = table;
  m.tokens = table.total();
  m.overall_accuracy = ratio_percent(table.correct(), table.total());
  for (std::size_t k = 0; k < kAllLabels.size(); ++k) {
    const auto label = kAllLabels[k];
    std::uint64_t predicted = 0;
    std::uint64_t gold = 0;
    for (const auto other : kAllLabels) {
      predicted += table.at(other, label);
      gold += table.at(label, other);
    }
    auto& c = m.per_class[k];
    c.label = label;
    c.support = gold;
    c.precision = ratio_percent(table.at(label, label), predicted);
    c.recall = ratio_percent(table.at(label, label), gold);
    c.f1 = c.precision + c.recall == 0.0 ? 0.0
                                         : 2.0 * c.precision * c.recall / (c.precision + c.recall);
    m.macro_precision += c.precision / 3.0;
    m.macro_recall += c.recall / 3.0;
    m.macro_f1 += c.f1 / 3.0;
  }
  return m;
}

TaggerMetrics evaluate_tagger(const LabeledSentenceCorpus& gold,
                              const LabelSequences& predictions) {
  return metrics_from_confusion(confusion_table(gold, predictions));
}

LabelSequences lexicon_predictions(const LabeledSentenceCorpus& gold,
                                   const SentimentLexicon& lexicon) {
  LabelSequences out;
  out.reserve(gold.sentences.size());
  for (const auto& sentence : gold.sentences) {
    std::vector<SentimentLabel> labels;
    labels.reserve(sentence.size());
    for (const auto& token : sentence) labels.push_back(lexicon.lookup(token.text));
    out.push_back(std::move(labels));
  }
  return out;
}

LabelSequences labels_of(const LabeledSentenceCorpus& corpus) {
  LabelSequences out;
  out.reserve(corpus.sentences.size());
  for (const auto& sentence : corpus.sentences) {
    std::vector<SentimentLabel> labels;
    labels.reserve(sentence.size());
    for (const auto& token : sentence) labels.push_back(token.label);
    out.push_back(std::move(labels));
  }
  return out;
}

}  // namespace psent
