#include "psent/proportion.hpp"

#include "psent/error.hpp"

namespace psent {

PSentTriple PSentTriple::from_counts(const TokenCounts& counts) {
  if (counts.total_n == 0) throw Error(ErrorCode::empty_document, "empty document");
  if (counts.pos_n + counts.neg_n > counts.total_n) {
    throw Error(ErrorCode::invalid_argument, "charged word count exceeds total word count");
  }
  const auto total = static_cast<double>(counts.total_n);
  PSentTriple t;
  t.counts = counts;
  t.psent = static_cast<double>(counts.pos_n + counts.neg_n) / total;
  t.psent_p = static_cast<double>(counts.pos_n) / total;
  t.psent_n = static_cast<double>(counts.neg_n) / total;
  return t;
}

double channel_value(const PSentTriple& triple, Channel channel) noexcept {
  switch (channel) {
    case Channel::all: return triple.psent;
    case Channel::positive: return triple.psent_p;
    case Channel::negative: return triple.psent_n;
  }
  return triple.psent;
}

TokenCounts count_labels(std::span<const SentimentLabel> labels) noexcept {
  TokenCounts c;
  c.total_n = labels.size();
  for (const auto label : labels) {
    if (label == SentimentLabel::positive) ++c.pos_n;
    if (label == SentimentLabel::negative) ++c.neg_n;
  }
  return c;
}

PSentTriple compute_psent(std::span<const SentimentLabel> labels) {
  return PSentTriple::from_counts(count_labels(labels));
}

namespace {

PSentTriple document_psent(const DialogueSummaryPair& pair, const TagSet& tags,
                           const DocumentRef& which) {
  const auto* labels = tags.find(pair.id, which);
  if (!labels) {
    throw Error(ErrorCode::missing_tags,
                "no tags for '" + pair.id + "' " + to_string(which));
  }
  try {
    return compute_psent(*labels);
  } catch (const Error& e) {
    throw Error(e.code(), "'" + pair.id + "' " + to_string(which) + ": " + e.what());
  }
}

}  // namespace

PairPSent psent_for_pair(const DialogueSummaryPair& pair, const TagSet& tags,
                         SummaryPolicy policy) {
  PairPSent out;
  out.dialogue = document_psent(pair, tags, DocumentRef::dialogue());
  for (std::size_t k = 0; k < pair.summaries.size(); ++k) {
    out.summaries.push_back(document_psent(pair, tags, DocumentRef::summary(k)));
  }
  if (policy == SummaryPolicy::mean && out.summaries.size() > 1) {
    PSentTriple mean;
    for (const auto& s : out.summaries) {
      mean.psent += s.psent;
      mean.psent_p += s.psent_p;
      mean.psent_n += s.psent_n;
      mean.counts.pos_n += s.counts.pos_n;
      mean.counts.neg_n += s.counts.neg_n;
      mean.counts.total_n += s.counts.total_n;
    }
    const auto n = static_cast<double>(out.summaries.size());
    mean.psent /= n;
    mean.psent_p /= n;
    mean.psent_n /= n;
    out.summaries.assign(1, mean);
  }
  return out;
}

}  // namespace psent
