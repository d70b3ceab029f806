#include "psent/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "psent/stats.hpp"

namespace psent {

std::string_view to_string(Channel channel) noexcept {
  switch (channel) {
    case Channel::all: return "all";
    case Channel::positive: return "positive";
    case Channel::negative: return "negative";
  }
  return "all";
}

std::optional<Channel> parse_channel(std::string_view text) noexcept {
  if (text == "all") return Channel::all;
  if (text == "pos" || text == "positive") return Channel::positive;
  if (text == "neg" || text == "negative") return Channel::negative;
  return std::nullopt;
}

std::string_view to_string(SummaryPolicy policy) noexcept {
  return policy == SummaryPolicy::mean ? "mean" : "each";
}

std::optional<SummaryPolicy> parse_summary_policy(std::string_view text) noexcept {
  if (text == "each") return SummaryPolicy::each;
  if (text == "mean") return SummaryPolicy::mean;
  return std::nullopt;
}

std::string_view to_string(FilterMode mode) noexcept {
  return mode == FilterMode::train_like ? "train-like" : "test-like";
}

std::optional<FilterMode> parse_filter_mode(std::string_view text) noexcept {
  if (text == "train-like" || text == "train_like") return FilterMode::train_like;
  if (text == "test-like" || text == "test_like") return FilterMode::test_like;
  return std::nullopt;
}

std::vector<PairPSent> psent_for_corpus(const std::vector<DialogueSummaryPair>& pairs,
                                        const TagSet& tags, SummaryPolicy policy) {
  std::vector<PairPSent> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) out.push_back(psent_for_pair(pair, tags, policy));
  return out;
}

ChannelSeries build_series(const std::vector<PairPSent>& psents, Channel channel) {
  ChannelSeries series;
  for (const auto& p : psents) {
    const double x = channel_value(p.dialogue, channel);
    series.n_total += p.summaries.size();
    if (x == 0.0) {
      series.n_zero_dialogue += p.summaries.size();
      continue;
    }
    for (const auto& s : p.summaries) {
      series.dialogue.push_back(x);
      series.summary.push_back(channel_value(s, channel));
    }
  }
  return series;
}

ChannelScore score_series(const ChannelSeries& series, Channel channel) {
  const auto n = series.dialogue.size();
  if (n < 2) {
    throw Error(ErrorCode::insufficient_samples,
                "insufficient samples after zero-filtering (" + std::to_string(n) + " of " +
                    std::to_string(series.n_total) + " remain for channel '" +
                    std::string(to_string(channel)) + "')");
  }
  ChannelScore score;
  score.channel = channel;
  score.n_used = n;
  score.n_total = series.n_total;
  try {
    score.spearman = stats::spearman(series.dialogue, series.summary);
    score.ccc = stats::ccc(series.dialogue, series.summary);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(e.what()) + " for channel '" +
                              std::string(to_string(channel)) + "' over " + std::to_string(n) +
                              " samples");
  }
  score.mae = stats::mae(series.dialogue, series.summary);
  return score;
}

ChannelScore score_corpus(const std::vector<DialogueSummaryPair>& pairs, const TagSet& tags,
                          Channel channel, SummaryPolicy policy) {
  return score_series(build_series(psent_for_corpus(pairs, tags, policy), channel), channel);
}

const ChannelResult* ScoreReport::find(Channel channel) const noexcept {
  for (const auto& c : channels) {
    if (c.channel() == channel) return &c;
  }
  return nullptr;
}

ScoreReport score_report(const std::vector<DialogueSummaryPair>& pairs, const TagSet& tags,
                         const std::vector<Channel>& channels, SummaryPolicy policy,
                         std::string tagger) {
  ScoreReport report;
  report.metadata.tagger = std::move(tagger);
  report.metadata.summary_policy = policy;

  const auto psents = psent_for_corpus(pairs, tags, policy);
  for (const auto channel : channels) {
    const auto series = build_series(psents, channel);
    ChannelResult result;
    try {
      result.score = score_series(series, channel);
    } catch (const Error& e) {
      result.failure = ChannelFailure{channel, e.code(), e.what(), series.dialogue.size()};
    }
    report.channels.push_back(std::move(result));
  }
  return report;
}

FilterResult filter_corpus(const std::vector<DialogueSummaryPair>& pairs, const TagSet& tags,
                           FilterMode mode) {
  FilterResult result;
  auto& r = result.report;
  r.mode = mode;
  r.total = pairs.size();
  for (const auto& pair : pairs) {
    const auto p = psent_for_pair(pair, tags, SummaryPolicy::each);
    if (p.dialogue.psent == 0.0) {
      ++r.dropped_zero_dialogue;
      continue;
    }
    if (mode == FilterMode::train_like &&
        std::any_of(p.summaries.begin(), p.summaries.end(),
                    [](const PSentTriple& s) { return s.psent == 0.0; })) {
      ++r.dropped_zero_summary;
      continue;
    }
    result.kept.push_back(pair);
  }
  r.kept = result.kept.size();
  r.kept_fraction = r.total == 0 ? 0.0 : static_cast<double>(r.kept) / static_cast<double>(r.total);
  return result;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

double quantile_linear(std::vector<double> values, double p) {
  if (values.empty()) throw Error(ErrorCode::invalid_argument, "quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::invalid_argument, "quantile outside [0, 1]");
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, p);
}

DistributionSummary distribution_summary(std::vector<double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::invalid_argument, "distribution summary of an empty sample");
  }
  std::sort(values.begin(), values.end());
  DistributionSummary d;
  d.n = values.size();
  d.q1 = quantile_sorted(values, 0.25);
  d.median = quantile_sorted(values, 0.5);
  d.q3 = quantile_sorted(values, 0.75);
  const double iqr = d.q3 - d.q1;
  const double fence_low = d.q1 - 1.5 * iqr;
  const double fence_high = d.q3 + 1.5 * iqr;

  // Matplotlib convention: the lowest value not below the low fence and the
  // highest value not above the high fence, never inside the box.
  d.whisker_low = std::min(d.q1, *std::lower_bound(values.begin(), values.end(), fence_low));
  d.whisker_high =
      std::max(d.q3, *std::prev(std::upper_bound(values.begin(), values.end(), fence_high)));
  for (const double v : values) {
    if (v < fence_low || v > fence_high) d.outliers.push_back(v);
  }
  return d;
}

DistributionPair psent_distributions(const std::vector<PairPSent>& psents, Channel channel,
                                     bool drop_zero) {
  std::vector<double> dialogue;
  std::vector<double> summary;
  for (const auto& p : psents) {
    const double x = channel_value(p.dialogue, channel);
    if (drop_zero) {
      const bool zero_summary =
          std::any_of(p.summaries.begin(), p.summaries.end(),
                      [&](const PSentTriple& s) { return channel_value(s, channel) == 0.0; });
      if (x == 0.0 || zero_summary) continue;
    }
    dialogue.push_back(x);
    for (const auto& s : p.summaries) summary.push_back(channel_value(s, channel));
  }
  if (dialogue.empty()) {
    throw Error(ErrorCode::insufficient_samples,
                "no pairs left for the distribution of channel '" +
                    std::string(to_string(channel)) + "'");
  }
  return {channel, drop_zero, distribution_summary(std::move(dialogue)),
          distribution_summary(std::move(summary))};
}

}  // namespace psent
