#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "psent/error.hpp"
#include "psent/report.hpp"

namespace {

namespace fs = std::filesystem;
using psent::Channel;

psent::ScoreReport sample_report() {
  psent::ScoreReport r;
  r.metadata.tagger = "lexicon(positive=10,negative=10)";
  r.metadata.summary_policy = psent::SummaryPolicy::mean;
  r.channels.push_back({psent::ChannelScore{Channel::all, 0.1 + 0.2, 2.0 / 3.0, 1e-17, 499, 500},
                        std::nullopt});
  r.channels.push_back({std::nullopt, psent::ChannelFailure{Channel::negative,
                                                            psent::ErrorCode::insufficient_samples,
                                                            "only \"one\" left", 1}});
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Report, FormatNumberRoundTrips) {
  EXPECT_EQ(psent::format_number(1.0), "1");
  EXPECT_EQ(psent::format_number(0.5), "0.5");
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng);
    EXPECT_EQ(std::stod(psent::format_number(v)), v);
  }
}

TEST(Report, ScoreReportJsonRoundTrip) {
  auto r = sample_report();
  EXPECT_EQ(psent::parse_score_report(psent::score_report_json(r)), r);
  r.metadata.stamp = "2024-01-01T00:00:00Z";
  const auto text = psent::score_report_json(r);
  EXPECT_NE(text.find("\"stamp\""), std::string::npos);
  EXPECT_EQ(psent::parse_score_report(text), r);
  EXPECT_EQ(text.back(), '\n');
}

TEST(Report, ScoreReportMetadata) {
  const auto text = psent::score_report_json(sample_report());
  for (const auto* key : {"\"toolkit\": \"psentscore\"", "\"variance\": \"population\"",
                          "\"ties\": \"average-rank\"", "\"summary_policy\": \"mean\"",
                          "\"zero_removal\": \"dialogue-side\""}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
  EXPECT_EQ(text.find("stamp"), std::string::npos);
}

TEST(Report, ScoreReportCsvColumnOrder) {
  const auto csv = psent::score_report_csv(sample_report());
  EXPECT_EQ(csv,
            "channel,spearman,ccc,mae,n_used,error\n"
            "all," + psent::format_number(0.1 + 0.2) + "," + psent::format_number(2.0 / 3.0) +
                ",1e-17,499,\n"
            "negative,,,,1,insufficient_samples\n");
}

TEST(Report, MalformedReportsAreErrors) {
  for (const auto* text : {"", "{", "{}", R"({"metadata":{},"channels":[]})"}) {
    try {
      psent::parse_score_report(text);
      FAIL() << text;
    } catch (const psent::Error& e) {
      EXPECT_EQ(e.code(), psent::ErrorCode::malformed_record);
    }
  }
}

TEST(Report, FilterReportRoundTrip) {
  const psent::FilterReport r{psent::FilterMode::test_like, 9, 1, 0, 10, 0.9};
  EXPECT_EQ(psent::parse_filter_report(psent::filter_report_json(r)), r);
}

TEST(Report, DistributionRoundTrip) {
  psent::DistributionPair d;
  d.channel = Channel::positive;
  d.drop_zero = true;
  d.dialogue = psent::distribution_summary({0.1, 0.2, 0.2, 0.9, 0.15});
  d.summary = psent::distribution_summary({0.0, 0.0, 0.0, 0.0, 1.0});
  EXPECT_EQ(psent::parse_distribution(psent::distribution_json(d)), d);
}

TEST(Report, TaggerMetricsRoundTripAndCsv) {
  psent::ConfusionTable t;
  t.add(psent::SentimentLabel::neutral, psent::SentimentLabel::neutral, 80);
  t.add(psent::SentimentLabel::positive, psent::SentimentLabel::neutral, 7);
  t.add(psent::SentimentLabel::negative, psent::SentimentLabel::negative, 3);
  t.add(psent::SentimentLabel::neutral, psent::SentimentLabel::positive, 2);
  const auto m = psent::metrics_from_confusion(t);
  EXPECT_EQ(psent::parse_tagger_metrics(psent::tagger_metrics_json(m)), m);
  const auto csv = psent::tagger_metrics_csv(m);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "overall_accuracy,precision,recall,f1");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST(Report, AtomicWriteReplacesWholeFile) {
  const auto dir = fs::temp_directory_path() / ("psent_report_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  fs::create_directories(dir);
  const auto path = dir / "out.json";
  psent::write_file_atomic(path, "first version, longer\n");
  psent::write_file_atomic(path, "second\n");
  EXPECT_EQ(slurp(path), "second\n");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  EXPECT_EQ(entries, 1u);  // no temporaries left behind

  try {
    psent::write_file_atomic(dir / "missing" / "out.json", "x");
    FAIL();
  } catch (const psent::Error& e) {
    EXPECT_EQ(e.code(), psent::ErrorCode::io);
  }
  EXPECT_FALSE(fs::exists(dir / "missing"));
  fs::remove_all(dir);
}

}  // namespace
