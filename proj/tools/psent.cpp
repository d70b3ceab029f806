// psent: command-line front end for affect-preservation scoring.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "psent/corpus.hpp"
#include "psent/error.hpp"
#include "psent/lexicon.hpp"
#include "psent/report.hpp"
#include "psent/scoring.hpp"
#include "psent/tagger_eval.hpp"
#include "psent/tokenize.hpp"
#include "psent/version.hpp"

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string pairs;
  std::string format = "simple";
  std::string origin = "reference";
  std::string lexicon_pos;
  std::string lexicon_neg;
  std::string tags;
  std::vector<std::string> channels;
  std::string summary_policy = "each";
  std::string mode;
  std::string gold;
  std::string predictions;
  std::string out;
  std::string report;
  bool keep_speaker_tokens = false;
  bool csv = false;
  bool emit = false;
  bool stamp = false;
  bool drop_zero = false;
};

[[noreturn]] void config_error(const std::string& message) {
  throw psent::Error(psent::ErrorCode::invalid_argument, message);
}

template <typename T, typename Parse>
T parse_flag(const std::string& value, const char* flag, Parse parse) {
  const auto parsed = parse(value);
  if (!parsed) config_error(std::string("invalid value '") + value + "' for " + flag);
  return *parsed;
}

void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    psent::write_file_atomic(cfg.out, content);
  }
}

psent::TokenizeOptions tokenize_options(const RunConfig& cfg) {
  return {cfg.keep_speaker_tokens};
}

std::vector<psent::DialogueSummaryPair> read_pairs(const RunConfig& cfg) {
  if (cfg.pairs.empty()) config_error("--pairs is required");
  const auto format = parse_flag<psent::PairFormat>(cfg.format, "--format", psent::parse_pair_format);
  auto origin = psent::SummaryOrigin::reference;
  if (cfg.origin == "generated") {
    origin = psent::SummaryOrigin::generated;
  } else if (cfg.origin != "reference") {
    config_error("invalid value '" + cfg.origin + "' for --origin");
  }
  return psent::load_pairs(cfg.pairs, format, origin);
}

// Lexicon from explicit flags, else from $PSENT_LEXICON_DIR.
std::optional<std::pair<fs::path, fs::path>> lexicon_paths(const RunConfig& cfg) {
  if (!cfg.lexicon_pos.empty() || !cfg.lexicon_neg.empty()) {
    if (cfg.lexicon_pos.empty() || cfg.lexicon_neg.empty()) {
      config_error("--lexicon-pos and --lexicon-neg must be given together");
    }
    return std::make_pair(fs::path(cfg.lexicon_pos), fs::path(cfg.lexicon_neg));
  }
  if (const char* dir = std::getenv("PSENT_LEXICON_DIR"); dir && *dir) {
    return std::make_pair(fs::path(dir) / "positive-words.txt",
                          fs::path(dir) / "negative-words.txt");
  }
  return std::nullopt;
}

std::string lexicon_identity(const psent::SentimentLexicon& lexicon) {
  return "lexicon(positive=" + std::to_string(lexicon.positive().size()) +
         ",negative=" + std::to_string(lexicon.negative().size()) + ")";
}

struct TagSource {
  psent::TagSet tags;
  std::string identity;
};

// Exactly one source: an external tag file or the lexicon tagger.
TagSource resolve_tags(const RunConfig& cfg, const std::vector<psent::DialogueSummaryPair>& pairs) {
  const bool explicit_lexicon = !cfg.lexicon_pos.empty() || !cfg.lexicon_neg.empty();
  if (!cfg.tags.empty()) {
    if (explicit_lexicon) config_error("--tags and --lexicon-pos/--lexicon-neg are exclusive");
    return {psent::load_external_tags(cfg.tags, pairs, tokenize_options(cfg)),
            "external(" + fs::path(cfg.tags).filename().string() + ")"};
  }
  const auto paths = lexicon_paths(cfg);
  if (!paths) {
    config_error("no tag source: pass --tags, --lexicon-pos/--lexicon-neg, or set PSENT_LEXICON_DIR");
  }
  const auto lexicon = psent::load_lexicon(paths->first, paths->second);
  return {psent::tag_corpus(pairs, lexicon, tokenize_options(cfg)), lexicon_identity(lexicon)};
}

std::string utc_stamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int run_tokenize(const RunConfig& cfg) {
  const auto pairs = read_pairs(cfg);
  const auto options = tokenize_options(cfg);
  std::string out;
  auto write_doc = [&](const std::string& id, const psent::DocumentRef& which,
                       const std::string& text) {
    const auto stream = psent::tokenize(text, options);
    if (cfg.emit) {
      nlohmann::ordered_json record;
      record["id"] = id;
      record["which"] = psent::to_string(which);
      record["tokens"] = stream.tokens;
      auto spans = nlohmann::ordered_json::array();
      for (const auto& s : stream.spans) spans.push_back({s.begin, s.end});
      record["spans"] = std::move(spans);
      out += record.dump() + '\n';
    } else {
      out += id + '\t' + psent::to_string(which) + '\t';
      for (std::size_t i = 0; i < stream.size(); ++i) {
        if (i) out += ' ';
        out += stream.tokens[i];
      }
      out += '\n';
    }
  };
  for (const auto& pair : pairs) {
    write_doc(pair.id, psent::DocumentRef::dialogue(), pair.dialogue);
    for (std::size_t k = 0; k < pair.summaries.size(); ++k) {
      write_doc(pair.id, psent::DocumentRef::summary(k), pair.summaries[k]);
    }
  }
  emit(cfg, out);
  return 0;
}

int run_tag(const RunConfig& cfg) {
  if (!cfg.tags.empty()) config_error("'tag' produces a tag file; --tags is not accepted");
  const auto pairs = read_pairs(cfg);
  const auto source = resolve_tags(cfg, pairs);
  emit(cfg, psent::serialize_tags(source.tags));
  return 0;
}

std::vector<psent::Channel> requested_channels(const RunConfig& cfg) {
  if (cfg.channels.empty()) {
    return {psent::Channel::all, psent::Channel::positive, psent::Channel::negative};
  }
  std::vector<psent::Channel> channels;
  for (const auto& c : cfg.channels) {
    channels.push_back(parse_flag<psent::Channel>(c, "--channel", psent::parse_channel));
  }
  return channels;
}

int run_score(const RunConfig& cfg) {
  const auto pairs = read_pairs(cfg);
  const auto source = resolve_tags(cfg, pairs);
  const auto policy =
      parse_flag<psent::SummaryPolicy>(cfg.summary_policy, "--summary-policy",
                                       psent::parse_summary_policy);
  auto report = psent::score_report(pairs, source.tags, requested_channels(cfg), policy,
                                    source.identity);
  if (cfg.stamp) report.metadata.stamp = utc_stamp();

  std::size_t failed = 0;
  for (const auto& c : report.channels) {
    if (c.failure) {
      ++failed;
      std::cerr << "psent: channel " << psent::to_string(c.channel()) << " failed ["
                << psent::to_string(c.failure->code) << "]: " << c.failure->message << '\n';
    }
  }
  if (failed == report.channels.size()) {
    const auto& f = *report.channels.front().failure;
    throw psent::Error(f.code, f.message);
  }
  emit(cfg, cfg.csv ? psent::score_report_csv(report) : psent::score_report_json(report));
  return 0;
}

int run_filter(const RunConfig& cfg) {
  if (cfg.mode.empty()) config_error("--mode is required for 'filter'");
  if (cfg.out.empty()) config_error("--out is required for 'filter' (kept pairs)");
  const auto mode = parse_flag<psent::FilterMode>(cfg.mode, "--mode", psent::parse_filter_mode);
  const auto pairs = read_pairs(cfg);
  const auto source = resolve_tags(cfg, pairs);
  const auto result = psent::filter_corpus(pairs, source.tags, mode);

  const auto report = psent::filter_report_json(result.report);
  emit(cfg, psent::serialize_pairs(result.kept));
  if (cfg.report.empty() || cfg.report == "-") {
    std::cout << report;
  } else {
    psent::write_file_atomic(cfg.report, report);
  }
  return 0;
}

int run_stats(const RunConfig& cfg) {
  const auto pairs = read_pairs(cfg);
  const auto source = resolve_tags(cfg, pairs);
  const auto policy =
      parse_flag<psent::SummaryPolicy>(cfg.summary_policy, "--summary-policy",
                                       psent::parse_summary_policy);
  const auto channels = requested_channels(cfg);
  if (channels.size() != 1 && !cfg.channels.empty()) {
    config_error("'stats' takes a single --channel");
  }
  const auto channel = cfg.channels.empty() ? psent::Channel::all : channels.front();
  const auto psents = psent::psent_for_corpus(pairs, source.tags, policy);
  emit(cfg, psent::distribution_json(psent::psent_distributions(psents, channel, cfg.drop_zero)));
  return 0;
}

int run_eval_tagger(const RunConfig& cfg) {
  if (cfg.gold.empty()) config_error("--gold is required for 'eval-tagger'");
  const auto gold = psent::load_labeled_corpus(cfg.gold);

  psent::LabelSequences predictions;
  const bool explicit_lexicon = !cfg.lexicon_pos.empty() || !cfg.lexicon_neg.empty();
  if (!cfg.predictions.empty()) {
    if (explicit_lexicon) {
      config_error("--predictions and --lexicon-pos/--lexicon-neg are exclusive");
    }
    predictions = psent::labels_of(psent::load_labeled_corpus(cfg.predictions));
  } else {
    const auto paths = lexicon_paths(cfg);
    if (!paths) {
      config_error("no tagger: pass --predictions, --lexicon-pos/--lexicon-neg, or set PSENT_LEXICON_DIR");
    }
    predictions = psent::lexicon_predictions(gold, psent::load_lexicon(paths->first, paths->second));
  }
  const auto metrics = psent::evaluate_tagger(gold, predictions);
  emit(cfg, cfg.csv ? psent::tagger_metrics_csv(metrics) : psent::tagger_metrics_json(metrics));
  return 0;
}

void add_pair_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--pairs", cfg.pairs, "Line-delimited JSON dialogue/summary file")->required();
  cmd->add_option("--format", cfg.format, "simple | multi-reference")
      ->check(CLI::IsMember({"simple", "multi-reference", "multi_reference"}));
  cmd->add_option("--origin", cfg.origin, "reference | generated")
      ->check(CLI::IsMember({"reference", "generated"}));
  cmd->add_flag("--keep-speaker-tokens", cfg.keep_speaker_tokens,
                "Count #PersonN# speaker markers as words");
}

void add_tag_source_options(CLI::App* cmd, RunConfig& cfg, bool allow_tag_file = true) {
  cmd->add_option("--lexicon-pos", cfg.lexicon_pos, "Positive word list");
  cmd->add_option("--lexicon-neg", cfg.lexicon_neg, "Negative word list");
  if (allow_tag_file) cmd->add_option("--tags", cfg.tags, "External tag file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affective-content preservation scoring for dialogue summaries"};
  app.set_version_flag("--version", psent::kToolkitVersion);
  app.require_subcommand(1);
  RunConfig cfg;

  auto* tok = app.add_subcommand("tokenize", "Print token streams for each document");
  add_pair_options(tok, cfg);
  tok->add_flag("--emit", cfg.emit, "Emit JSON records (tokens and byte spans) for external taggers");
  tok->add_option("--out", cfg.out, "Output path (default: stdout)");

  auto* tag = app.add_subcommand("tag", "Write a tag file using the lexicon tagger");
  add_pair_options(tag, cfg);
  add_tag_source_options(tag, cfg, false);
  tag->add_option("--out", cfg.out, "Output path (default: stdout)");

  auto* score = app.add_subcommand("score", "Compute PSentScore (Spearman / CCC / MAE)");
  add_pair_options(score, cfg);
  add_tag_source_options(score, cfg);
  score->add_option("--channel", cfg.channels, "all | pos | neg (repeatable; default: all three)")
      ->check(CLI::IsMember({"all", "pos", "neg", "positive", "negative"}));
  score->add_option("--summary-policy", cfg.summary_policy, "each | mean")
      ->check(CLI::IsMember({"each", "mean"}));
  score->add_flag("--csv", cfg.csv, "Emit CSV rows instead of JSON");
  score->add_flag("--stamp", cfg.stamp, "Record a UTC timestamp in the report metadata");
  score->add_option("--out", cfg.out, "Output path (default: stdout)");

  auto* filter = app.add_subcommand("filter", "Drop pairs without affective content");
  add_pair_options(filter, cfg);
  add_tag_source_options(filter, cfg);
  filter->add_option("--mode", cfg.mode, "train-like | test-like")
      ->required()
      ->check(CLI::IsMember({"train-like", "test-like", "train_like", "test_like"}));
  filter->add_option("--out", cfg.out, "Kept pairs output path")->required();
  filter->add_option("--report", cfg.report, "Filter report path (default: stdout)");

  auto* stats = app.add_subcommand("stats", "Box-plot statistics of PSentDial and PSentSumm");
  add_pair_options(stats, cfg);
  add_tag_source_options(stats, cfg);
  stats->add_option("--channel", cfg.channels, "all | pos | neg")
      ->check(CLI::IsMember({"all", "pos", "neg", "positive", "negative"}));
  stats->add_option("--summary-policy", cfg.summary_policy, "each | mean")
      ->check(CLI::IsMember({"each", "mean"}));
  stats->add_flag("--drop-zero", cfg.drop_zero,
                  "Leave out pairs with a zero dialogue or summary value");
  stats->add_option("--out", cfg.out, "Output path (default: stdout)");

  auto* eval = app.add_subcommand("eval-tagger", "Token-level accuracy and macro P/R/F1");
  eval->add_option("--gold", cfg.gold, "Gold token-label file")->required();
  eval->add_option("--predictions", cfg.predictions, "Predicted token-label file");
  add_tag_source_options(eval, cfg, false);
  eval->add_flag("--csv", cfg.csv, "Emit a single CSV row");
  eval->add_option("--out", cfg.out, "Output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (tok->parsed()) return run_tokenize(cfg);
    if (tag->parsed()) return run_tag(cfg);
    if (score->parsed()) return run_score(cfg);
    if (filter->parsed()) return run_filter(cfg);
    if (stats->parsed()) return run_stats(cfg);
    if (eval->parsed()) return run_eval_tagger(cfg);
  } catch (const psent::Error& e) {
    std::cerr << "psent: error [" << psent::to_string(e.code()) << "]: " << e.what() << '\n';
    return e.code() == psent::ErrorCode::invalid_argument ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "psent: error [internal]: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
