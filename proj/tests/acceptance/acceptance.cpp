// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "psent/error.hpp"
#include "psent/proportion.hpp"
#include "psent/report.hpp"
#include "psent/scoring.hpp"
#include "psent/stats.hpp"
#include "psent/tagger_eval.hpp"

namespace {

namespace fs = std::filesystem;
using Vec = std::vector<double>;
using Clock = std::chrono::steady_clock;

const std::string kFixtures = PSENT_FIXTURE_DIR;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void report(const std::string& name, const Outcome& o, const std::string& note) {
  std::cout << (o.ok ? "PASS " : "FAIL ") << name << ": " << (o.ok ? note : o.detail) << '\n';
  if (!o.ok) ++failures;
}

Outcome guarded(const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  return o;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "psent_acceptance";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs the CLI with stdout captured to a file; returns exit status.
int cli(const std::string& args, const fs::path& out) {
  const std::string cmd = PSENT_CLI_PATH " " + args + " > " + out.string() + " 2> /dev/null";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

const std::string kLexicon = " --lexicon-pos " + kFixtures + "/lexicon/positive-words.txt" +
                             " --lexicon-neg " + kFixtures + "/lexicon/negative-words.txt";

// --- statistics oracles -----------------------------------------------------

double closed_form_rank_correlation(const Vec& x, const Vec& y) {
  const std::size_t n = x.size();
  std::vector<std::size_t> ix(n), iy(n);
  for (std::size_t i = 0; i < n; ++i) ix[i] = iy[i] = i;
  std::sort(ix.begin(), ix.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::sort(iy.begin(), iy.end(), [&](auto a, auto b) { return y[a] < y[b]; });
  Vec rx(n), ry(n);
  for (std::size_t r = 0; r < n; ++r) {
    rx[ix[r]] = static_cast<double>(r + 1);
    ry[iy[r]] = static_cast<double>(r + 1);
  }
  double d2 = 0;
  for (std::size_t i = 0; i < n; ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  const double nn = static_cast<double>(n);
  return 1.0 - 6.0 * d2 / (nn * (nn * nn - 1.0));
}

double direct_ccc(const Vec& x, const Vec& y) {
  const long double n = static_cast<long double>(x.size());
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double vx = 0, vy = 0, c = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    vx += (x[i] - mx) * (x[i] - mx);
    vy += (y[i] - my) * (y[i] - my);
    c += (x[i] - mx) * (y[i] - my);
  }
  const long double rho = c / std::sqrt(vx * vy);
  const long double sx = std::sqrt(vx / n), sy = std::sqrt(vy / n);
  return static_cast<double>(2 * rho * sx * sy / (sx * sx + sy * sy + (mx - my) * (mx - my)));
}

double direct_mae(const Vec& x, const Vec& y) {
  long double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::fabs(static_cast<long double>(x[i]) - y[i]);
  return static_cast<double>(s / static_cast<long double>(x.size()));
}

void check_statistics() {
  const auto t0 = Clock::now();
  double worst = 0;
  const auto o = guarded([&](Outcome& o) {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::size_t> len(3, 200);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto n = len(rng);
      Vec x(n), y(n);
      for (auto& v : x) v = u(rng);
      for (auto& v : y) v = u(rng);
      // tie-free by construction check
      Vec sx = x, sy = y;
      std::sort(sx.begin(), sx.end());
      std::sort(sy.begin(), sy.end());
      if (std::adjacent_find(sx.begin(), sx.end()) != sx.end() ||
          std::adjacent_find(sy.begin(), sy.end()) != sy.end()) {
        --trial;
        continue;
      }
      const double e1 = std::abs(psent::stats::spearman(x, y) - closed_form_rank_correlation(x, y));
      const double e2 = std::abs(psent::stats::ccc(x, y) - direct_ccc(x, y));
      const double e3 = std::abs(psent::stats::mae(x, y) - direct_mae(x, y));
      worst = std::max({worst, e1, e2, e3});
      o.require(e1 <= 1e-12, "spearman differs by " + std::to_string(e1) + " at trial " + std::to_string(trial));
      o.require(e2 <= 1e-12, "ccc differs by " + std::to_string(e2) + " at trial " + std::to_string(trial));
      o.require(e3 <= 1e-12, "mae differs by " + std::to_string(e3) + " at trial " + std::to_string(trial));
    }
  });
  Outcome timed = o;
  const double secs = seconds_since(t0);
  timed.require(secs < 5.0, "took " + std::to_string(secs) + " s");
  std::ostringstream note;
  note << "1000 tie-free series, max abs error " << worst << " (tol 1e-12), " << secs << " s";
  report("statistics-oracles", timed, note.str());
}

// --- PSent invariants ---------------------------------------------------------

void check_psent_invariants() {
  const auto t0 = Clock::now();
  auto o = guarded([&](Outcome& o) {
    using L = psent::SentimentLabel;
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> len(1, 200), lab(0, 2);
    for (int trial = 0; trial < 10000; ++trial) {
      std::vector<L> labels(static_cast<std::size_t>(len(rng)));
      for (auto& l : labels) l = psent::kAllLabels[static_cast<std::size_t>(lab(rng))];
      const auto t = psent::compute_psent(labels);
      o.require(std::abs(t.psent - (t.psent_p + t.psent_n)) <= 1e-12, "psent != psent_p + psent_n");
      for (const double v : {t.psent, t.psent_p, t.psent_n}) {
        o.require(v >= 0.0 && v <= 1.0, "value outside [0, 1]");
      }
      auto doubled = labels;
      doubled.insert(doubled.end(), labels.begin(), labels.end());
      const auto d = psent::compute_psent(doubled);
      o.require(d.psent == t.psent && d.psent_p == t.psent_p && d.psent_n == t.psent_n,
                "duplication changed proportions");
      auto more = labels;
      more.push_back(L::neutral);
      const auto m = psent::compute_psent(more);
      o.require(t.psent > 0 ? m.psent < t.psent : m.psent == 0.0, "neutral append not monotone");
    }
  });
  const double secs = seconds_since(t0);
  o.require(secs < 5.0, "took " + std::to_string(secs) + " s");
  report("psent-invariants", o, "10000 random label sequences, " + std::to_string(secs) + " s");
}

// --- identity corpus ----------------------------------------------------------

void check_identity() {
  auto o = guarded([&](Outcome& o) {
    const auto out = scratch() / "identity.json";
    o.require(cli("score --pairs " + kFixtures + "/identity.jsonl" + kLexicon + " --out " +
                      out.string(),
                  scratch() / "stdout") == 0,
              "score exited nonzero");
    const auto r = psent::parse_score_report(slurp(out));
    o.require(r.channels.size() == 3, "expected 3 channels");
    for (const auto& c : r.channels) {
      o.require(c.score.has_value(), "channel failed unexpectedly");
      if (!c.score) continue;
      o.require(std::abs(c.score->spearman - 1.0) <= 1e-12 && std::abs(c.score->ccc - 1.0) <= 1e-12 &&
                    c.score->mae == 0.0,
                "channel " + std::string(psent::to_string(c.channel())) + " not perfect");
    }

    // constant dialogue side on the positive channel must fail explicitly
    std::ofstream(scratch() / "flat_pos.jsonl")
        << R"({"id":"a","dialogue":"good day","summary":"good day"})" "\n"
        << R"({"id":"b","dialogue":"nice one","summary":"nice one"})" "\n"
        << R"({"id":"c","dialogue":"good bad","summary":"good bad"})" "\n";
    const auto flat = scratch() / "flat.json";
    o.require(cli("score --pairs " + (scratch() / "flat_pos.jsonl").string() + kLexicon +
                      " --out " + flat.string(),
                  scratch() / "stdout") == 0,
              "score on constant-positive corpus exited nonzero");
    const auto f = psent::parse_score_report(slurp(flat));
    const auto* pos = f.find(psent::Channel::positive);
    o.require(pos && pos->failure && pos->failure->code == psent::ErrorCode::degenerate_statistic,
              "constant positive channel did not report degenerate_statistic");
    const auto single = cli("score --channel pos --pairs " +
                                (scratch() / "flat_pos.jsonl").string() + kLexicon,
                            scratch() / "stdout");
    o.require(single == 1, "single degenerate channel should exit 1");
  });
  report("identity-corpus", o,
         "spearman=1 ccc=1 mae=0 on all three channels; degenerate channel errors explicitly");
}

// --- filtering ------------------------------------------------------------------

void check_filtering() {
  auto o = guarded([&](Outcome& o) {
    const auto train_out = scratch() / "kept_train.jsonl";
    const auto train_report = scratch() / "train_report.json";
    o.require(cli("filter --mode train-like --pairs " + kFixtures + "/filter10.jsonl" + kLexicon +
                      " --out " + train_out.string() + " --report " + train_report.string(),
                  scratch() / "stdout") == 0,
              "filter train-like exited nonzero");
    const auto train = psent::parse_filter_report(slurp(train_report));
    o.require(train == psent::FilterReport{psent::FilterMode::train_like, 6, 1, 3, 10, 0.6},
              "train-like report mismatch: kept=" + std::to_string(train.kept));

    const auto test_out = scratch() / "kept_test.jsonl";
    o.require(cli("filter --mode test-like --pairs " + kFixtures + "/filter10.jsonl" + kLexicon +
                      " --out " + test_out.string(),
                  scratch() / "test_report.json") == 0,
              "filter test-like exited nonzero");
    const auto test = psent::parse_filter_report(slurp(scratch() / "test_report.json"));
    o.require(test == psent::FilterReport{psent::FilterMode::test_like, 9, 1, 0, 10, 0.9},
              "test-like report mismatch: kept=" + std::to_string(test.kept));

    // 500 pairs, one with an affect-free dialogue
    const auto big = scratch() / "test500.jsonl";
    {
      std::ofstream out(big);
      const char* words[] = {"good", "bad", "table", "nice", "chair", "sorry", "happy", "road"};
      std::mt19937 rng(500);
      std::uniform_int_distribution<int> pick(0, 7), len(2, 12);
      for (int i = 0; i < 500; ++i) {
        std::string d = i == 250 ? "where is the station" : "good";
        std::string s = "summary";
        for (int k = len(rng); k > 0 && i != 250; --k) d += std::string(" ") + words[pick(rng)];
        for (int k = len(rng); k > 0; --k) s += std::string(" ") + words[pick(rng)];
        out << R"({"id":"t)" << i << R"(","dialogue":")" << d << R"(","summary":")" << s << "\"}\n";
      }
    }
    const auto score = scratch() / "score500.json";
    o.require(cli("score --channel all --pairs " + big.string() + kLexicon + " --out " +
                      score.string(),
                  scratch() / "stdout") == 0,
              "score on 500-pair corpus exited nonzero");
    const auto r = psent::parse_score_report(slurp(score));
    o.require(!r.channels.empty() && r.channels[0].score && r.channels[0].score->n_used == 499 &&
                  r.channels[0].score->n_total == 500,
              "expected n_used 499 of 500");
  });
  report("filtering-fixture", o,
         "train-like kept 6 (1 zero-dialogue, 3 zero-summary), test-like kept 9; 500 -> 499");
}

// --- tagger evaluation ----------------------------------------------------------

void check_tagger_with_data(const std::string& gold_path, const std::string& lexicon_dir) {
  auto o = guarded([&](Outcome& o) {
    const auto gold = psent::load_labeled_corpus(gold_path);
    const auto lexicon = psent::load_lexicon(fs::path(lexicon_dir) / "positive-words.txt",
                                             fs::path(lexicon_dir) / "negative-words.txt");
    const auto m = psent::evaluate_tagger(gold, psent::lexicon_predictions(gold, lexicon));
    std::ostringstream got;
    got << "accuracy " << m.overall_accuracy << " (88.82 +/- 2.0), macro F1 " << m.macro_f1
        << " (65.64 +/- 3.0)";
    o.require(std::abs(m.overall_accuracy - 88.82) <= 2.0 && std::abs(m.macro_f1 - 65.64) <= 3.0,
              got.str());
    o.detail = o.ok ? got.str() : o.detail;
  });
  report("lexicon-tagger-reproduction", o, o.detail);
}

// Replacement when the gold corpus and lexicon are not available.
void check_tagger_properties() {
  auto o = guarded([&](Outcome& o) {
    using L = psent::SentimentLabel;
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> len(1, 20), lab(0, 2);
    std::bernoulli_distribution flip(0.35);
    auto corpus_of = [](const psent::LabelSequences& seqs) {
      psent::LabeledSentenceCorpus c;
      for (const auto& seq : seqs) {
        psent::LabeledSentence s;
        for (const auto l : seq) s.push_back({"w", l});
        c.sentences.push_back(std::move(s));
      }
      return c;
    };
    for (int trial = 0; trial < 300; ++trial) {
      psent::LabelSequences gold(25), pred;
      for (auto& seq : gold) {
        for (int i = len(rng); i > 0; --i) seq.push_back(psent::kAllLabels[static_cast<std::size_t>(lab(rng))]);
      }
      pred = gold;
      for (auto& seq : pred) {
        for (auto& l : seq) {
          if (flip(rng)) l = psent::kAllLabels[static_cast<std::size_t>(lab(rng))];
        }
      }
      const auto perfect = psent::evaluate_tagger(corpus_of(gold), gold);
      o.require(perfect.overall_accuracy == 100.0 && perfect.macro_f1 == 100.0,
                "perfect predictions not 100");

      const auto m = psent::evaluate_tagger(corpus_of(gold), pred);
      std::vector<std::size_t> order(gold.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::shuffle(order.begin(), order.end(), rng);
      psent::LabelSequences g2, p2;
      for (auto i : order) {
        g2.push_back(gold[i]);
        p2.push_back(pred[i]);
      }
      o.require(psent::evaluate_tagger(corpus_of(g2), p2) == m, "sentence permutation changed metrics");

      double lo = 100, hi = 0;
      for (const auto& c : m.per_class) {
        lo = std::min(lo, c.f1);
        hi = std::max(hi, c.f1);
      }
      o.require(m.macro_f1 >= lo - 1e-12 && m.macro_f1 <= hi + 1e-12, "macro F1 outside per-class bounds");

      auto swap = [](psent::LabelSequences s) {
        for (auto& seq : s) {
          for (auto& l : seq) l = l == L::positive ? L::negative : l == L::negative ? L::positive : l;
        }
        return s;
      };
      o.require(psent::evaluate_tagger(corpus_of(swap(gold)), swap(pred)).overall_accuracy ==
                    m.overall_accuracy,
                "class relabeling changed accuracy");
    }
    // all-neutral on 80% neutral gold
    const psent::LabelSequences g = {{L::neutral, L::neutral, L::positive, L::neutral, L::neutral},
                                     {L::neutral, L::negative, L::neutral, L::neutral, L::neutral}};
    const psent::LabelSequences p = {std::vector<L>(5, L::neutral), std::vector<L>(5, L::neutral)};
    const auto m = psent::evaluate_tagger(corpus_of(g), p);
    o.require(std::abs(m.overall_accuracy - 80.0) <= 1e-12 &&
                  std::abs(m.macro_recall - 100.0 / 3.0) <= 1e-12,
              "all-neutral example mismatch");
  });
  report("lexicon-tagger-reproduction", o,
         "gold corpus / lexicon not provided (set PSENT_SST3_TEST and PSENT_LEXICON_DIR); "
         "replaced by confusion-table property suite: perfect=100, permutation invariance, "
         "macro-F1 bounds, relabeling invariance");
}

// --- excluded model-dependent numbers --------------------------------------------

void check_external_tag_pipeline() {
  auto o = guarded([&](Outcome& o) {
    // An external tagger's output drives filter and score the same way the
    // built-in tagger does.
    const auto tags = kFixtures + "/filter10.tags.jsonl";
    const auto kept = scratch() / "ext_kept.jsonl";
    o.require(cli("filter --mode train-like --pairs " + kFixtures + "/filter10.jsonl --tags " + tags +
                      " --out " + kept.string(),
                  scratch() / "ext_filter.json") == 0,
              "filter with external tags failed");
    o.require(psent::parse_filter_report(slurp(scratch() / "ext_filter.json")).kept == 6,
              "external-tag filter mismatch");
    o.require(cli("score --pairs " + kFixtures + "/filter10.jsonl --tags " + tags,
                  scratch() / "ext_score.json") == 0,
              "score with external tags failed");
    const auto r = psent::parse_score_report(slurp(scratch() / "ext_score.json"));
    o.require(r.metadata.tagger == "external(filter10.tags.jsonl)", "tagger identity not recorded");
  });
  report("model-dependent-numbers", o,
         "EXCLUDED: kept fractions and system scores need the neural tagger and fine-tuned "
         "summarizers, not available here; external tag files drive filter/score end to end");
}

// --- determinism ----------------------------------------------------------------

void check_determinism() {
  auto o = guarded([&](Outcome& o) {
    const std::string pairs = " --pairs " + kFixtures + "/filter10.jsonl";
    const std::vector<std::string> commands = {
        "tokenize" + pairs,
        "tokenize --emit" + pairs,
        "tag" + pairs + kLexicon,
        "score" + pairs + kLexicon,
        "score --csv --summary-policy mean" + pairs + kLexicon,
        "score --tags " + kFixtures + "/filter10.tags.jsonl" + pairs,
        "filter --mode test-like" + pairs + kLexicon + " --out " + (scratch() / "det_kept").string(),
        "stats --drop-zero" + pairs + kLexicon,
        "eval-tagger --gold " + kFixtures + "/sst3_small.txt" + kLexicon,
    };
    for (const auto& c : commands) {
      const auto a = scratch() / "det_a", b = scratch() / "det_b";
      o.require(cli(c, a) == 0, "exit nonzero: " + c);
      const auto kept_a = slurp(scratch() / "det_kept");
      o.require(cli(c, b) == 0, "exit nonzero: " + c);
      o.require(slurp(a) == slurp(b) && !slurp(a).empty(), "outputs differ: " + c);
      o.require(kept_a == slurp(scratch() / "det_kept"), "kept pairs differ: " + c);
    }
  });
  report("determinism", o, "9 subcommand invocations byte-identical across two runs");
}

}  // namespace

int main() {
  check_statistics();
  check_psent_invariants();
  check_identity();
  check_filtering();
  const char* gold = std::getenv("PSENT_SST3_TEST");
  const char* lex = std::getenv("PSENT_LEXICON_DIR");
  if (gold && *gold && lex && *lex) {
    check_tagger_with_data(gold, lex);
  } else {
    check_tagger_properties();
  }
  check_external_tag_pipeline();
  check_determinism();
  fs::remove_all(scratch());
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << '\n';
  return failures == 0 ? 0 : 1;
}
