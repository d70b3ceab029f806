#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psent/corpus.hpp"
#include "psent/error.hpp"
#include "psent/lexicon.hpp"
#include "psent/proportion.hpp"
#include "psent/version.hpp"

namespace psent {

std::string_view to_string(Channel channel) noexcept;
std::optional<Channel> parse_channel(std::string_view text) noexcept;
std::string_view to_string(SummaryPolicy policy) noexcept;
std::optional<SummaryPolicy> parse_summary_policy(std::string_view text) noexcept;

// Dialogue-side (x) and summary-side (y) values for one channel after
// zero-removal on the dialogue side.
struct ChannelSeries {
  std::vector<double> dialogue;
  std::vector<double> summary;
  std::size_t n_total = 0;             // series entries before zero-removal
  std::size_t n_zero_dialogue = 0;     // entries removed
};

ChannelSeries build_series(const std::vector<PairPSent>& psents, Channel channel);

std::vector<PairPSent> psent_for_corpus(const std::vector<DialogueSummaryPair>& pairs,
                                        const TagSet& tags, SummaryPolicy policy);

struct ChannelScore {
  Channel channel = Channel::all;
  double spearman = 0.0;
  double ccc = 0.0;
  double mae = 0.0;
  std::size_t n_used = 0;
  std::size_t n_total = 0;

  bool operator==(const ChannelScore&) const = default;
};

// PSentScore for one channel. Throws ErrorCode::insufficient_samples when
// fewer than two entries survive zero-removal, and the statistics' own
// errors for degenerate series.
ChannelScore score_corpus(const std::vector<DialogueSummaryPair>& pairs, const TagSet& tags,
                          Channel channel, SummaryPolicy policy = SummaryPolicy::each);
ChannelScore score_series(const ChannelSeries& series, Channel channel);

struct ChannelFailure {
  Channel channel = Channel::all;
  ErrorCode code = ErrorCode::degenerate_statistic;
  std::string message;
  std::size_t n_used = 0;

  bool operator==(const ChannelFailure&) const = default;
};

struct ChannelResult {
  std::optional<ChannelScore> score;
  std::optional<ChannelFailure> failure;

  [[nodiscard]] Channel channel() const noexcept {
    return score ? score->channel : failure->channel;
  }
  bool operator==(const ChannelResult&) const = default;
};

struct ReportMetadata {
  std::string toolkit_version = kToolkitVersion;
  std::string tagger;
  SummaryPolicy summary_policy = SummaryPolicy::each;
  std::string variance = "population";
  std::string ties = "average-rank";
  std::string quantiles = "linear";
  std::optional<std::string> stamp;

  bool operator==(const ReportMetadata&) const = default;
};

struct ScoreReport {
  ReportMetadata metadata;
  std::vector<ChannelResult> channels;

  [[nodiscard]] const ChannelResult* find(Channel channel) const noexcept;
  bool operator==(const ScoreReport&) const = default;
};

// Scores each requested channel independently; a channel whose statistics are
// undefined is recorded as a failure instead of aborting the others.
ScoreReport score_report(const std::vector<DialogueSummaryPair>& pairs, const TagSet& tags,
                         const std::vector<Channel>& channels, SummaryPolicy policy,
                         std::string tagger);

enum class FilterMode { train_like, test_like };

std::string_view to_string(FilterMode mode) noexcept;
std::optional<FilterMode> parse_filter_mode(std::string_view text) noexcept;

struct FilterReport {
  FilterMode mode = FilterMode::train_like;
  std::size_t kept = 0;
  std::size_t dropped_zero_dialogue = 0;
  std::size_t dropped_zero_summary = 0;
  std::size_t total = 0;
  double kept_fraction = 0.0;  // 0 for an empty corpus

  bool operator==(const FilterReport&) const = default;
};

struct FilterResult {
  std::vector<DialogueSummaryPair> kept;
  FilterReport report;
};

// train_like drops pairs with an affect-free dialogue or any affect-free
// reference; test_like only looks at the dialogue. A pair with both sides at
// zero is counted as a zero-dialogue drop.
FilterResult filter_corpus(const std::vector<DialogueSummaryPair>& pairs, const TagSet& tags,
                           FilterMode mode);

struct DistributionSummary {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;  // ascending
  std::size_t n = 0;

  bool operator==(const DistributionSummary&) const = default;
};

// Linearly interpolated quantile (position (n-1)*p over sorted values).
double quantile_linear(std::vector<double> values, double p);

// Box-plot statistics: whiskers reach the most extreme values within 1.5 IQR
// of the quartiles.
DistributionSummary distribution_summary(std::vector<double> values);

// PSentDial and PSentSumm box-plot statistics for one channel. With
// `drop_zero`, pairs whose dialogue or any summary is zero on the channel are
// left out of both sides.
struct DistributionPair {
  Channel channel = Channel::all;
  bool drop_zero = false;
  DistributionSummary dialogue;
  DistributionSummary summary;

  bool operator==(const DistributionPair&) const = default;
};

DistributionPair psent_distributions(const std::vector<PairPSent>& psents, Channel channel,
                                     bool drop_zero);

}  // namespace psent
