#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "psent/corpus.hpp"
#include "psent/error.hpp"
#include "psent/lexicon.hpp"
#include "psent/proportion.hpp"
#include "psent/report.hpp"
#include "psent/scoring.hpp"
#include "psent/stats.hpp"
#include "psent/tagger_eval.hpp"
#include "psent/tokenize.hpp"
#include "psent/version.hpp"

namespace py = pybind11;

namespace {

template <typename T, typename Parse>
T parse_or_throw(const std::string& text, const char* what, Parse parse) {
  const auto v = parse(text);
  if (!v) throw psent::Error(psent::ErrorCode::invalid_argument, "invalid " + std::string(what) + " '" + text + "'");
  return *v;
}

std::vector<psent::SentimentLabel> labels_from(const std::vector<std::string>& codes) {
  std::vector<psent::SentimentLabel> out;
  out.reserve(codes.size());
  for (const auto& c : codes) {
    auto l = psent::from_code(c);
    if (!l) l = psent::parse_three_grade(c);
    if (!l) throw psent::Error(psent::ErrorCode::invalid_label, "unknown label '" + c + "'");
    out.push_back(*l);
  }
  return out;
}

std::vector<std::string> codes_of(const std::vector<psent::SentimentLabel>& labels) {
  std::vector<std::string> out;
  out.reserve(labels.size());
  for (const auto l : labels) out.emplace_back(1, psent::to_code(l));
  return out;
}

psent::TokenStream stream_of(std::vector<std::string> tokens) {
  psent::TokenStream s;
  s.tokens = std::move(tokens);
  return s;
}

}  // namespace

PYBIND11_MODULE(_psentscore, m) {
  m.doc() = "Affective-content preservation scoring (native core)";
  m.attr("__version__") = std::string(psent::kToolkitVersion);

  static py::handle error_type =
      py::exception<psent::Error>(m, "PsentError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const psent::Error& e) {
      py::object exc = error_type(std::string(e.what()));
      exc.attr("code") = std::string(psent::to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  // tokenize
  m.def(
      "tokenize",
      [](const std::string& text, bool keep_speaker_tokens) {
        return psent::tokenize(text, {keep_speaker_tokens}).tokens;
      },
      py::arg("text"), py::arg("keep_speaker_tokens") = false);
  m.def(
      "token_spans",
      [](const std::string& text, bool keep_speaker_tokens) {
        const auto s = psent::tokenize(text, {keep_speaker_tokens});
        std::vector<std::tuple<std::string, std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < s.size(); ++i) out.emplace_back(s.tokens[i], s.spans[i].begin, s.spans[i].end);
        return out;
      },
      py::arg("text"), py::arg("keep_speaker_tokens") = false,
      "(token, begin, end) with byte offsets into the UTF-8 text");

  // lexicon
  py::class_<psent::SentimentLexicon>(m, "Lexicon")
      .def(py::init<std::set<std::string>, std::set<std::string>>(), py::arg("positive"), py::arg("negative"))
      .def_static("load", [](const std::filesystem::path& pos, const std::filesystem::path& neg) {
        return psent::load_lexicon(pos, neg);
      }, py::arg("positive_path"), py::arg("negative_path"))
      .def("lookup", [](const psent::SentimentLexicon& lex, const std::string& word) {
        return std::string(1, psent::to_code(lex.lookup(word)));
      })
      .def("tag", [](const psent::SentimentLexicon& lex, std::vector<std::string> tokens) {
        return codes_of(psent::tag_tokens(stream_of(std::move(tokens)), lex));
      })
      .def_property_readonly("positive", &psent::SentimentLexicon::positive)
      .def_property_readonly("negative", &psent::SentimentLexicon::negative);

  // proportions
  py::class_<psent::PSentTriple>(m, "PSent")
      .def_readonly("psent", &psent::PSentTriple::psent)
      .def_readonly("psent_p", &psent::PSentTriple::psent_p)
      .def_readonly("psent_n", &psent::PSentTriple::psent_n)
      .def_property_readonly("pos_n", [](const psent::PSentTriple& t) { return t.counts.pos_n; })
      .def_property_readonly("neg_n", [](const psent::PSentTriple& t) { return t.counts.neg_n; })
      .def_property_readonly("total_n", [](const psent::PSentTriple& t) { return t.counts.total_n; })
      .def("__repr__", [](const psent::PSentTriple& t) {
        return "PSent(psent=" + psent::format_number(t.psent) + ", psent_p=" +
               psent::format_number(t.psent_p) + ", psent_n=" + psent::format_number(t.psent_n) + ")";
      });
  m.def("compute_psent", [](const std::vector<std::string>& labels) {
    return psent::compute_psent(labels_from(labels));
  }, py::arg("labels"), "labels as 'p'/'n'/'o' or positive/negative/neutral");

  // statistics
  using Vec = std::vector<double>;
  m.def("spearman", [](const Vec& x, const Vec& y) { return psent::stats::spearman(x, y); }, py::arg("x"), py::arg("y"));
  m.def("pearson", [](const Vec& x, const Vec& y) { return psent::stats::pearson(x, y); }, py::arg("x"), py::arg("y"));
  m.def("ccc", [](const Vec& x, const Vec& y) { return psent::stats::ccc(x, y); }, py::arg("x"), py::arg("y"));
  m.def("mae", [](const Vec& x, const Vec& y) { return psent::stats::mae(x, y); }, py::arg("x"), py::arg("y"));
  m.def("average_ranks", [](const Vec& v) { return psent::stats::average_ranks(v); }, py::arg("values"));

  py::class_<psent::DistributionSummary>(m, "DistributionSummary")
      .def_readonly("median", &psent::DistributionSummary::median)
      .def_readonly("q1", &psent::DistributionSummary::q1)
      .def_readonly("q3", &psent::DistributionSummary::q3)
      .def_readonly("whisker_low", &psent::DistributionSummary::whisker_low)
      .def_readonly("whisker_high", &psent::DistributionSummary::whisker_high)
      .def_readonly("outliers", &psent::DistributionSummary::outliers)
      .def_readonly("n", &psent::DistributionSummary::n);
  m.def("distribution_summary", &psent::distribution_summary, py::arg("values"));

  // corpus
  py::class_<psent::DialogueSummaryPair>(m, "Pair")
      .def(py::init([](std::string id, std::string dialogue, std::vector<std::string> summaries) {
             return psent::DialogueSummaryPair{std::move(id), std::move(dialogue), std::move(summaries)};
           }),
           py::arg("id"), py::arg("dialogue"), py::arg("summaries"))
      .def_readonly("id", &psent::DialogueSummaryPair::id)
      .def_readonly("dialogue", &psent::DialogueSummaryPair::dialogue)
      .def_readonly("summaries", &psent::DialogueSummaryPair::summaries)
      .def("__repr__", [](const psent::DialogueSummaryPair& p) { return "Pair(id='" + p.id + "')"; });
  m.def("load_pairs", [](const std::filesystem::path& path, const std::string& format) {
    return psent::load_pairs(path, parse_or_throw<psent::PairFormat>(format, "format", psent::parse_pair_format));
  }, py::arg("path"), py::arg("format") = "simple");
  m.def("serialize_pairs", &psent::serialize_pairs, py::arg("pairs"));

  py::class_<psent::TagSet>(m, "TagSet")
      .def("__len__", &psent::TagSet::size)
      .def("get", [](const psent::TagSet& t, const std::string& id, const std::string& which) -> std::optional<std::vector<std::string>> {
        const auto ref = psent::parse_document_ref(which);
        if (!ref) throw psent::Error(psent::ErrorCode::invalid_argument, "bad document '" + which + "'");
        const auto* labels = t.find(id, *ref);
        if (!labels) return std::nullopt;
        return codes_of(*labels);
      }, py::arg("id"), py::arg("which"))
      .def("serialize", &psent::serialize_tags);
  m.def("tag_corpus", [](const std::vector<psent::DialogueSummaryPair>& pairs, const psent::SentimentLexicon& lex, bool keep) {
    return psent::tag_corpus(pairs, lex, {keep});
  }, py::arg("pairs"), py::arg("lexicon"), py::arg("keep_speaker_tokens") = false);
  m.def("load_tags", [](const std::filesystem::path& path, const std::vector<psent::DialogueSummaryPair>& pairs, bool keep) {
    return psent::load_external_tags(path, pairs, {keep});
  }, py::arg("path"), py::arg("pairs"), py::arg("keep_speaker_tokens") = false);

  // scoring: reports cross the boundary as their JSON serialization
  m.def("_score_report_json", [](const std::vector<psent::DialogueSummaryPair>& pairs, const psent::TagSet& tags,
                                 const std::vector<std::string>& channels, const std::string& policy,
                                 const std::string& tagger) {
    std::vector<psent::Channel> cs;
    for (const auto& c : channels) cs.push_back(parse_or_throw<psent::Channel>(c, "channel", psent::parse_channel));
    const auto p = parse_or_throw<psent::SummaryPolicy>(policy, "summary policy", psent::parse_summary_policy);
    return psent::score_report_json(psent::score_report(pairs, tags, cs, p, tagger));
  });
  m.def("_filter", [](const std::vector<psent::DialogueSummaryPair>& pairs, const psent::TagSet& tags,
                      const std::string& mode) {
    auto r = psent::filter_corpus(pairs, tags, parse_or_throw<psent::FilterMode>(mode, "mode", psent::parse_filter_mode));
    return py::make_tuple(r.kept, psent::filter_report_json(r.report));
  });
  m.def("_distribution_json", [](const std::vector<psent::DialogueSummaryPair>& pairs, const psent::TagSet& tags,
                                 const std::string& channel, bool drop_zero, const std::string& policy) {
    const auto psents = psent::psent_for_corpus(
        pairs, tags, parse_or_throw<psent::SummaryPolicy>(policy, "summary policy", psent::parse_summary_policy));
    return psent::distribution_json(psent::psent_distributions(
        psents, parse_or_throw<psent::Channel>(channel, "channel", psent::parse_channel), drop_zero));
  });

  // tagger evaluation
  m.def("_evaluate_labels_json", [](const std::vector<std::vector<std::string>>& gold,
                                    const std::vector<std::vector<std::string>>& predicted) {
    psent::LabeledSentenceCorpus corpus;
    psent::LabelSequences preds;
    for (const auto& s : gold) {
      psent::LabeledSentence sentence;
      for (const auto l : labels_from(s)) sentence.push_back({"_", l});
      corpus.sentences.push_back(std::move(sentence));
    }
    for (const auto& s : predicted) preds.push_back(labels_from(s));
    return psent::tagger_metrics_json(psent::evaluate_tagger(corpus, preds));
  });
  m.def("_evaluate_files_json", [](const std::filesystem::path& gold_path, const psent::SentimentLexicon* lexicon,
                                   const std::optional<std::filesystem::path>& predictions_path) {
    const auto gold = psent::load_labeled_corpus(gold_path);
    if (predictions_path) {
      return psent::tagger_metrics_json(
          psent::evaluate_tagger(gold, psent::labels_of(psent::load_labeled_corpus(*predictions_path))));
    }
    if (!lexicon) throw psent::Error(psent::ErrorCode::invalid_argument, "need a lexicon or a predictions file");
    return psent::tagger_metrics_json(psent::evaluate_tagger(gold, psent::lexicon_predictions(gold, *lexicon)));
  }, py::arg("gold"), py::arg("lexicon") = nullptr, py::arg("predictions") = std::nullopt);
}
