#include "psent/corpus.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "psent/error.hpp"
#include "text_util.hpp"

namespace psent {

using nlohmann::json;

SentimentLabel merge_five_to_three(FiveGradeLabel label) noexcept {
  switch (label) {
    case FiveGradeLabel::very_negative:
    case FiveGradeLabel::negative:
      return SentimentLabel::negative;
    case FiveGradeLabel::neutral:
      return SentimentLabel::neutral;
    case FiveGradeLabel::positive:
    case FiveGradeLabel::very_positive:
      return SentimentLabel::positive;
  }
  return SentimentLabel::neutral;
}

std::string_view to_string(SentimentLabel label) noexcept {
  switch (label) {
    case SentimentLabel::negative: return "negative";
    case SentimentLabel::neutral: return "neutral";
    case SentimentLabel::positive: return "positive";
  }
  return "neutral";
}

std::optional<SentimentLabel> parse_three_grade(std::string_view text) noexcept {
  if (text == "negative") return SentimentLabel::negative;
  if (text == "neutral") return SentimentLabel::neutral;
  if (text == "positive") return SentimentLabel::positive;
  return std::nullopt;
}

std::optional<FiveGradeLabel> parse_five_grade(std::string_view text) noexcept {
  if (text == "very_negative") return FiveGradeLabel::very_negative;
  if (text == "negative") return FiveGradeLabel::negative;
  if (text == "neutral") return FiveGradeLabel::neutral;
  if (text == "positive") return FiveGradeLabel::positive;
  if (text == "very_positive") return FiveGradeLabel::very_positive;
  return std::nullopt;
}

char to_code(SentimentLabel label) noexcept {
  switch (label) {
    case SentimentLabel::negative: return 'n';
    case SentimentLabel::neutral: return 'o';
    case SentimentLabel::positive: return 'p';
  }
  return 'o';
}

std::optional<SentimentLabel> from_code(std::string_view code) noexcept {
  if (code == "p") return SentimentLabel::positive;
  if (code == "n") return SentimentLabel::negative;
  if (code == "o") return SentimentLabel::neutral;
  return std::nullopt;
}

std::optional<PairFormat> parse_pair_format(std::string_view text) noexcept {
  if (text == "simple") return PairFormat::simple;
  if (text == "multi-reference" || text == "multi_reference") return PairFormat::multi_reference;
  return std::nullopt;
}

namespace {

std::string at_line(std::string_view source, std::size_t line) {
  std::ostringstream os;
  os << source << ':' << line;
  return os.str();
}

std::string required_text(const json& record, const char* field, std::string_view where) {
  const auto it = record.find(field);
  if (it == record.end()) {
    throw Error(ErrorCode::malformed_record,
                std::string(where) + ": missing field '" + field + "'");
  }
  if (!it->is_string()) {
    throw Error(ErrorCode::malformed_record,
                std::string(where) + ": field '" + field + "' is not a string");
  }
  return it->get<std::string>();
}

}  // namespace

std::vector<DialogueSummaryPair> parse_pairs(std::istream& in, PairFormat format,
                                             SummaryOrigin origin, std::string_view source) {
  std::vector<DialogueSummaryPair> pairs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    const auto where = at_line(source, line_no);

    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::malformed_record, where + ": invalid JSON (" + e.what() + ")");
    }
    if (!record.is_object()) {
      throw Error(ErrorCode::malformed_record, where + ": record is not an object");
    }

    DialogueSummaryPair pair;
    pair.origin = origin;
    pair.id = record.contains("id") ? required_text(record, "id", where)
                                    : required_text(record, "fname", where);
    if (pair.id.empty()) {
      throw Error(ErrorCode::malformed_record, where + ": empty id");
    }
    pair.dialogue = required_text(record, "dialogue", where);

    pair.summaries.push_back(required_text(record, "summary", where));
    if (format == PairFormat::multi_reference) {
      for (int k = 2;; ++k) {
        const std::string field = "summary" + std::to_string(k);
        if (!record.contains(field)) break;
        pair.summaries.push_back(required_text(record, field.c_str(), where));
      }
    }
    for (std::size_t i = 0; i < pair.summaries.size(); ++i) {
      if (detail::trim(pair.summaries[i]).empty()) {
        throw Error(ErrorCode::malformed_record,
                    where + ": summary " + std::to_string(i) + " of '" + pair.id + "' is empty");
      }
    }

    if (!seen.insert(pair.id).second) {
      throw Error(ErrorCode::duplicate_id, where + ": duplicate id '" + pair.id + "'");
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<DialogueSummaryPair> load_pairs(const std::filesystem::path& path, PairFormat format,
                                            SummaryOrigin origin) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open pair file '" + path.string() + "'");
  return parse_pairs(in, format, origin, path.string());
}

std::string serialize_pair(const DialogueSummaryPair& pair) {
  // ordered_json keeps id/dialogue/summary in a readable order
  nlohmann::ordered_json record;
  record["id"] = pair.id;
  record["dialogue"] = pair.dialogue;
  for (std::size_t i = 0; i < pair.summaries.size(); ++i) {
    record[i == 0 ? std::string("summary") : "summary" + std::to_string(i + 1)] =
        pair.summaries[i];
  }
  return record.dump();
}

std::string serialize_pairs(const std::vector<DialogueSummaryPair>& pairs) {
  std::string out;
  for (const auto& pair : pairs) {
    out += serialize_pair(pair);
    out += '\n';
  }
  return out;
}

std::size_t LabeledSentenceCorpus::token_count() const noexcept {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

namespace {

// Splits `word/label` at the last unescaped slash and unescapes `\/`.
LabeledToken split_item(std::string_view item, int grades, const std::string& where) {
  std::optional<std::size_t> sep;
  for (std::size_t i = 0; i < item.size(); ++i) {
    if (item[i] == '\\' && i + 1 < item.size() && item[i + 1] == '/') {
      ++i;
    } else if (item[i] == '/') {
      sep = i;
    }
  }
  if (!sep) {
    throw Error(ErrorCode::malformed_record,
                where + ": item '" + std::string(item) + "' has no label");
  }
  std::string word;
  for (std::size_t i = 0; i < *sep; ++i) {
    if (item[i] == '\\' && i + 1 < *sep && item[i + 1] == '/') ++i;
    word += item[i];
  }
  if (word.empty()) {
    throw Error(ErrorCode::malformed_record,
                where + ": item '" + std::string(item) + "' has an empty word");
  }
  const auto label_text = item.substr(*sep + 1);

  std::optional<SentimentLabel> label;
  if (grades == 5) {
    if (const auto five = parse_five_grade(label_text)) label = merge_five_to_three(*five);
  } else {
    label = parse_three_grade(label_text);
  }
  if (!label) {
    throw Error(ErrorCode::invalid_label, where + ": unknown label '" +
                                              std::string(label_text) + "' for " +
                                              std::to_string(grades) + "-class file");
  }
  return {std::move(word), *label};
}

}  // namespace

LabeledSentenceCorpus parse_labeled_corpus(std::istream& in, Split split,
                                           std::string_view source) {
  LabeledSentenceCorpus corpus;
  corpus.split = split;

  std::string line;
  std::size_t line_no = 0;
  int grades = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto where = at_line(source, line_no);

    if (grades == 0) {
      const auto header = detail::trim(line);
      if (header == "#labels=3") {
        grades = 3;
      } else if (header == "#labels=5") {
        grades = 5;
      } else {
        throw Error(ErrorCode::malformed_record,
                    where + ": expected header '#labels=3' or '#labels=5'");
      }
      continue;
    }

    if (line.empty()) {
      throw Error(ErrorCode::empty_sentence, where + ": empty sentence");
    }
    LabeledSentence sentence;
    std::string_view rest = line;
    while (true) {
      const auto space = rest.find(' ');
      const auto item = rest.substr(0, space);
      if (item.empty()) {
        throw Error(ErrorCode::malformed_record, where + ": tokens must be separated by single spaces");
      }
      sentence.push_back(split_item(item, grades, where));
      if (space == std::string_view::npos) break;
      rest.remove_prefix(space + 1);
    }
    corpus.sentences.push_back(std::move(sentence));
  }
  if (grades == 0) {
    throw Error(ErrorCode::malformed_record, std::string(source) + ": missing '#labels=' header");
  }
  return corpus;
}

LabeledSentenceCorpus load_labeled_corpus(const std::filesystem::path& path, Split split) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open labeled corpus '" + path.string() + "'");
  return parse_labeled_corpus(in, split, path.string());
}

std::string serialize_labeled_corpus(const LabeledSentenceCorpus& corpus) {
  std::string out = "#labels=3\n";
  for (const auto& sentence : corpus.sentences) {
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (i) out += ' ';
      for (const char c : sentence[i].text) {
        if (c == '/') out += '\\';
        out += c;
      }
      out += '/';
      out += to_string(sentence[i].label);
    }
    out += '\n';
  }
  return out;
}

}  // namespace psent
