#include "psent/report.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "json.hpp"
#include "psent/error.hpp"
#include "psent/version.hpp"

#if defined(__unix__) || defined(__APPLE__)
#include <unistd.h>
#endif

namespace psent {

using Json = nlohmann::ordered_json;

namespace {

Json parse_document(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::malformed_record, std::string(what) + ": " + e.what());
  }
}

// Wraps nlohmann's type errors so callers only see psent::Error.
template <typename F>
auto reading(std::string_view what, F&& body) {
  try {
    return body();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::malformed_record, std::string(what) + ": " + e.what());
  }
}

template <typename T, typename Parse>
T enum_field(const Json& j, const char* key, Parse parse) {
  const auto text = j.at(key).get<std::string>();
  const auto value = parse(text);
  if (!value) throw Error(ErrorCode::malformed_record, "bad value '" + text + "' for " + key);
  return *value;
}

Json metadata_json(const ReportMetadata& m) {
  Json j;
  j["toolkit"] = kToolkitName;
  j["version"] = m.toolkit_version;
  j["tagger"] = m.tagger;
  j["summary_policy"] = std::string(to_string(m.summary_policy));
  j["variance"] = m.variance;
  j["ties"] = m.ties;
  j["quantiles"] = m.quantiles;
  j["zero_removal"] = "dialogue-side";
  if (m.stamp) j["stamp"] = *m.stamp;
  return j;
}

Json summary_json(const DistributionSummary& d) {
  Json j;
  j["n"] = d.n;
  j["median"] = d.median;
  j["q1"] = d.q1;
  j["q3"] = d.q3;
  j["whisker_low"] = d.whisker_low;
  j["whisker_high"] = d.whisker_high;
  j["outliers"] = d.outliers;
  return j;
}

DistributionSummary summary_from(const Json& j) {
  DistributionSummary d;
  d.n = j.at("n").get<std::size_t>();
  d.median = j.at("median").get<double>();
  d.q1 = j.at("q1").get<double>();
  d.q3 = j.at("q3").get<double>();
  d.whisker_low = j.at("whisker_low").get<double>();
  d.whisker_high = j.at("whisker_high").get<double>();
  d.outliers = j.at("outliers").get<std::vector<double>>();
  return d;
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

std::string score_report_json(const ScoreReport& report) {
  Json j;
  j["metadata"] = metadata_json(report.metadata);
  auto channels = Json::array();
  for (const auto& c : report.channels) {
    Json entry;
    entry["channel"] = std::string(to_string(c.channel()));
    if (c.score) {
      entry["spearman"] = c.score->spearman;
      entry["ccc"] = c.score->ccc;
      entry["mae"] = c.score->mae;
      entry["n_used"] = c.score->n_used;
      entry["n_total"] = c.score->n_total;
    } else {
      entry["n_used"] = c.failure->n_used;
      entry["error"] = {{"code", std::string(to_string(c.failure->code))},
                        {"message", c.failure->message}};
    }
    channels.push_back(std::move(entry));
  }
  j["channels"] = std::move(channels);
  return j.dump(2) + "\n";
}

std::string score_report_csv(const ScoreReport& report) {
  std::string out = "channel,spearman,ccc,mae,n_used,error\n";
  for (const auto& c : report.channels) {
    out += to_string(c.channel());
    if (c.score) {
      out += ',' + format_number(c.score->spearman) + ',' + format_number(c.score->ccc) + ',' +
             format_number(c.score->mae) + ',' + std::to_string(c.score->n_used) + ",\n";
    } else {
      out += ",,,," + std::to_string(c.failure->n_used) + ',' +
             std::string(to_string(c.failure->code)) + '\n';
    }
  }
  return out;
}

ScoreReport parse_score_report(std::string_view text) {
  const auto j = parse_document(text, "score report");
  return reading("score report", [&] {
    ScoreReport r;
    const auto& m = j.at("metadata");
    r.metadata.toolkit_version = m.at("version").get<std::string>();
    r.metadata.tagger = m.at("tagger").get<std::string>();
    r.metadata.summary_policy =
        enum_field<SummaryPolicy>(m, "summary_policy", parse_summary_policy);
    r.metadata.variance = m.at("variance").get<std::string>();
    r.metadata.ties = m.at("ties").get<std::string>();
    r.metadata.quantiles = m.at("quantiles").get<std::string>();
    if (m.contains("stamp")) r.metadata.stamp = m.at("stamp").get<std::string>();
    for (const auto& entry : j.at("channels")) {
      ChannelResult c;
      const auto channel = enum_field<Channel>(entry, "channel", parse_channel);
      if (entry.contains("error")) {
        const auto& e = entry.at("error");
        c.failure = ChannelFailure{channel,
                                   enum_field<ErrorCode>(e, "code", parse_error_code),
                                   e.at("message").get<std::string>(),
                                   entry.at("n_used").get<std::size_t>()};
      } else {
        c.score = ChannelScore{channel,
                               entry.at("spearman").get<double>(),
                               entry.at("ccc").get<double>(),
                               entry.at("mae").get<double>(),
                               entry.at("n_used").get<std::size_t>(),
                               entry.at("n_total").get<std::size_t>()};
      }
      r.channels.push_back(std::move(c));
    }
    return r;
  });
}

std::string filter_report_json(const FilterReport& report) {
  Json j;
  j["mode"] = std::string(to_string(report.mode));
  j["total"] = report.total;
  j["kept"] = report.kept;
  j["dropped_zero_dialogue"] = report.dropped_zero_dialogue;
  j["dropped_zero_summary"] = report.dropped_zero_summary;
  j["kept_fraction"] = report.kept_fraction;
  return j.dump(2) + "\n";
}

FilterReport parse_filter_report(std::string_view text) {
  const auto j = parse_document(text, "filter report");
  return reading("filter report", [&] {
    FilterReport r;
    r.mode = enum_field<FilterMode>(j, "mode", parse_filter_mode);
    r.total = j.at("total").get<std::size_t>();
    r.kept = j.at("kept").get<std::size_t>();
    r.dropped_zero_dialogue = j.at("dropped_zero_dialogue").get<std::size_t>();
    r.dropped_zero_summary = j.at("dropped_zero_summary").get<std::size_t>();
    r.kept_fraction = j.at("kept_fraction").get<double>();
    return r;
  });
}

std::string distribution_json(const DistributionPair& dist) {
  Json j;
  j["channel"] = std::string(to_string(dist.channel));
  j["drop_zero"] = dist.drop_zero;
  j["quantiles"] = "linear";
  j["whisker_iqr"] = 1.5;
  j["dialogue"] = summary_json(dist.dialogue);
  j["summary"] = summary_json(dist.summary);
  return j.dump(2) + "\n";
}

DistributionPair parse_distribution(std::string_view text) {
  const auto j = parse_document(text, "distribution");
  return reading("distribution", [&] {
    DistributionPair d;
    d.channel = enum_field<Channel>(j, "channel", parse_channel);
    d.drop_zero = j.at("drop_zero").get<bool>();
    d.dialogue = summary_from(j.at("dialogue"));
    d.summary = summary_from(j.at("summary"));
    return d;
  });
}

std::string tagger_metrics_json(const TaggerMetrics& m) {
  Json j;
  j["overall_accuracy"] = m.overall_accuracy;
  j["precision"] = m.macro_precision;
  j["recall"] = m.macro_recall;
  j["f1"] = m.macro_f1;
  j["averaging"] = "macro";
  j["tokens"] = m.tokens;
  Json per_class;
  for (const auto& c : m.per_class) {
    per_class[std::string(to_string(c.label))] = {
        {"precision", c.precision}, {"recall", c.recall}, {"f1", c.f1}, {"support", c.support}};
  }
  j["per_class"] = std::move(per_class);
  auto rows = Json::array();
  for (const auto gold : kAllLabels) {
    auto row = Json::array();
    for (const auto predicted : kAllLabels) row.push_back(m.confusion.at(gold, predicted));
    rows.push_back(std::move(row));
  }
  j["confusion"] = {{"order", {"negative", "neutral", "positive"}}, {"gold_by_predicted", rows}};
  return j.dump(2) + "\n";
}

std::string tagger_metrics_csv(const TaggerMetrics& m) {
  return "overall_accuracy,precision,recall,f1\n" + format_number(m.overall_accuracy) + ',' +
         format_number(m.macro_precision) + ',' + format_number(m.macro_recall) + ',' +
         format_number(m.macro_f1) + '\n';
}

TaggerMetrics parse_tagger_metrics(std::string_view text) {
  const auto j = parse_document(text, "tagger metrics");
  return reading("tagger metrics", [&] {
    TaggerMetrics m;
    m.overall_accuracy = j.at("overall_accuracy").get<double>();
    m.macro_precision = j.at("precision").get<double>();
    m.macro_recall = j.at("recall").get<double>();
    m.macro_f1 = j.at("f1").get<double>();
    m.tokens = j.at("tokens").get<std::uint64_t>();
    for (std::size_t k = 0; k < kAllLabels.size(); ++k) {
      const auto& c = j.at("per_class").at(std::string(to_string(kAllLabels[k])));
      m.per_class[k] = ClassMetrics{kAllLabels[k], c.at("precision").get<double>(),
                                    c.at("recall").get<double>(), c.at("f1").get<double>(),
                                    c.at("support").get<std::uint64_t>()};
    }
    const auto& rows = j.at("confusion").at("gold_by_predicted");
    for (std::size_t g = 0; g < 3; ++g) {
      for (std::size_t p = 0; p < 3; ++p) {
        m.confusion.add(kAllLabels[g], kAllLabels[p], rows.at(g).at(p).get<std::uint64_t>());
      }
    }
    return m;
  });
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
#if defined(__unix__) || defined(__APPLE__)
  tmp += ".tmp." + std::to_string(::getpid());
#else
  tmp += ".tmp";
#endif
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io, "cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::io, "failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(ErrorCode::io, "cannot rename output to '" + path.string() + "': " + ec.message());
  }
}

}  // namespace psent
