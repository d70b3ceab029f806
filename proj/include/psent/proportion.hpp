#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "psent/corpus.hpp"
#include "psent/lexicon.hpp"

namespace psent {

struct TokenCounts {
  std::uint64_t pos_n = 0;
  std::uint64_t neg_n = 0;
  std::uint64_t total_n = 0;

  bool operator==(const TokenCounts&) const = default;
};

// Proportions of charged words in one document. Values are derived from the
// integer counts at construction, so psent and psent_p + psent_n agree up to
// a single rounding.
struct PSentTriple {
  double psent = 0.0;
  double psent_p = 0.0;
  double psent_n = 0.0;
  TokenCounts counts;

  static PSentTriple from_counts(const TokenCounts& counts);

  bool operator==(const PSentTriple&) const = default;
};

enum class Channel { all, positive, negative };

// Value of the requested polarity channel.
double channel_value(const PSentTriple& triple, Channel channel) noexcept;

TokenCounts count_labels(std::span<const SentimentLabel> labels) noexcept;

// Throws ErrorCode::empty_document for an empty label list.
PSentTriple compute_psent(std::span<const SentimentLabel> labels);

enum class SummaryPolicy { each, mean };

struct PairPSent {
  PSentTriple dialogue;
  // One entry per reference for `each`; a single entry for `mean` whose
  // proportions are the per-reference means and whose counts are summed.
  std::vector<PSentTriple> summaries;
};

PairPSent psent_for_pair(const DialogueSummaryPair& pair, const TagSet& tags,
                         SummaryPolicy policy = SummaryPolicy::each);

}  // namespace psent
