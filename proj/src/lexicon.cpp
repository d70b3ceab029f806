#include "psent/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <unordered_map>

#include "json.hpp"
#include "psent/error.hpp"
#include "text_util.hpp"

namespace psent {

namespace {

void check_entries(const std::set<std::string>& words, std::string_view which) {
  for (const auto& w : words) {
    const bool bad = w.empty() || std::any_of(w.begin(), w.end(), [](char c) {
                       return detail::is_ascii_space(c) || (c >= 'A' && c <= 'Z');
                     });
    if (bad) {
      throw Error(ErrorCode::invalid_entry,
                  std::string(which) + " lexicon entry '" + w +
                      "' must be lowercase, nonempty and whitespace-free");
    }
  }
}

}  // namespace

SentimentLexicon::SentimentLexicon(std::set<std::string> positive, std::set<std::string> negative)
    : positive_(std::move(positive)), negative_(std::move(negative)) {
  check_entries(positive_, "positive");
  check_entries(negative_, "negative");
  if (positive_.empty()) throw Error(ErrorCode::empty_lexicon, "positive word list is empty");
  if (negative_.empty()) throw Error(ErrorCode::empty_lexicon, "negative word list is empty");
  for (const auto& w : positive_) {
    if (negative_.count(w)) {
      throw Error(ErrorCode::lexicon_overlap,
                  "word '" + w + "' is listed as both positive and negative");
    }
  }
}

SentimentLabel SentimentLexicon::lookup(std::string_view word) const {
  const auto key = detail::ascii_lower(word);
  if (positive_.count(key)) return SentimentLabel::positive;
  if (negative_.count(key)) return SentimentLabel::negative;
  return SentimentLabel::neutral;
}

std::set<std::string> parse_word_list(std::istream& in, std::string_view source) {
  std::set<std::string> words;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto entry = detail::trim(line);
    if (entry.empty() || entry.front() == ';') continue;
    if (std::any_of(entry.begin(), entry.end(), detail::is_ascii_space)) {
      throw Error(ErrorCode::invalid_entry, std::string(source) + ":" + std::to_string(line_no) +
                                                ": entry contains whitespace");
    }
    words.insert(detail::ascii_lower(entry));
  }
  return words;
}

SentimentLexicon load_lexicon(const std::filesystem::path& positive_path,
                              const std::filesystem::path& negative_path) {
  auto read = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot open lexicon file '" + p.string() + "'");
    return parse_word_list(in, p.string());
  };
  return SentimentLexicon(read(positive_path), read(negative_path));
}

std::vector<SentimentLabel> tag_tokens(const TokenStream& stream,
                                       const SentimentLexicon& lexicon) {
  std::vector<SentimentLabel> labels;
  labels.reserve(stream.size());
  for (const auto& token : stream.tokens) labels.push_back(lexicon.lookup(token));
  return labels;
}

std::string to_string(const DocumentRef& ref) {
  if (ref.kind == DocumentRef::Kind::dialogue) return "dialogue";
  return "summary:" + std::to_string(ref.index);
}

std::optional<DocumentRef> parse_document_ref(std::string_view text) {
  if (text == "dialogue") return DocumentRef::dialogue();
  constexpr std::string_view prefix = "summary:";
  if (text.substr(0, prefix.size()) != prefix) return std::nullopt;
  const auto digits = text.substr(prefix.size());
  std::size_t k = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
    return std::nullopt;
  }
  return DocumentRef::summary(k);
}

void TagSet::add(TagAssignment assignment) {
  auto key = std::make_pair(assignment.doc_id, assignment.which);
  if (index_.count(key)) {
    throw Error(ErrorCode::duplicate_id, "duplicate tags for '" + assignment.doc_id + "' " +
                                             to_string(assignment.which));
  }
  index_.emplace(std::move(key), assignments_.size());
  assignments_.push_back(std::move(assignment));
}

const std::vector<SentimentLabel>* TagSet::find(std::string_view doc_id,
                                                const DocumentRef& which) const {
  const auto it = index_.find(std::make_pair(std::string(doc_id), which));
  return it == index_.end() ? nullptr : &assignments_[it->second].labels;
}

TagSet tag_corpus(const std::vector<DialogueSummaryPair>& pairs, const SentimentLexicon& lexicon,
                  const TokenizeOptions& options) {
  TagSet tags;
  for (const auto& pair : pairs) {
    tags.add({pair.id, DocumentRef::dialogue(),
              tag_tokens(tokenize(pair.dialogue, options), lexicon)});
    for (std::size_t k = 0; k < pair.summaries.size(); ++k) {
      tags.add({pair.id, DocumentRef::summary(k),
                tag_tokens(tokenize(pair.summaries[k], options), lexicon)});
    }
  }
  return tags;
}

TagSet parse_external_tags(std::istream& in, const std::vector<DialogueSummaryPair>& corpus,
                           const TokenizeOptions& options, std::string_view source) {
  std::unordered_map<std::string_view, const DialogueSummaryPair*> by_id;
  for (const auto& pair : corpus) by_id.emplace(pair.id, &pair);

  TagSet tags;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto where = std::string(source) + ":" + std::to_string(line_no);

    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::malformed_record, where + ": invalid JSON (" + e.what() + ")");
    }
    if (!record.is_object() || !record.contains("id") || !record["id"].is_string() ||
        !record.contains("which") || !record["which"].is_string() ||
        !record.contains("labels") || !record["labels"].is_array()) {
      throw Error(ErrorCode::malformed_record,
                  where + ": tag record needs string 'id', string 'which' and array 'labels'");
    }

    TagAssignment assignment;
    assignment.doc_id = record["id"].get<std::string>();
    const auto which = parse_document_ref(record["which"].get<std::string>());
    if (!which) {
      throw Error(ErrorCode::malformed_record,
                  where + ": 'which' must be 'dialogue' or 'summary:<k>'");
    }
    assignment.which = *which;

    const auto found = by_id.find(assignment.doc_id);
    if (found == by_id.end()) {
      throw Error(ErrorCode::unknown_id, where + ": unknown id '" + assignment.doc_id + "'");
    }
    const auto& pair = *found->second;
    if (which->kind == DocumentRef::Kind::summary && which->index >= pair.summaries.size()) {
      throw Error(ErrorCode::unknown_id, where + ": '" + pair.id + "' has no " + to_string(*which));
    }

    for (const auto& code : record["labels"]) {
      const auto label = code.is_string() ? from_code(code.get<std::string>()) : std::nullopt;
      if (!label) {
        throw Error(ErrorCode::invalid_label, where + ": labels must be 'p', 'n' or 'o'");
      }
      assignment.labels.push_back(*label);
    }

    const auto& text = which->kind == DocumentRef::Kind::dialogue ? pair.dialogue
                                                                  : pair.summaries[which->index];
    const auto expected = tokenize(text, options).size();
    if (assignment.labels.size() != expected) {
      throw Error(ErrorCode::tag_alignment,
                  where + ": '" + pair.id + "' " + to_string(*which) + " has " +
                      std::to_string(assignment.labels.size()) + " labels but " +
                      std::to_string(expected) + " tokens");
    }
    tags.add(std::move(assignment));
  }
  return tags;
}

TagSet load_external_tags(const std::filesystem::path& path,
                          const std::vector<DialogueSummaryPair>& corpus,
                          const TokenizeOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open tag file '" + path.string() + "'");
  return parse_external_tags(in, corpus, options, path.string());
}

std::string serialize_tags(const TagSet& tags) {
  std::string out;
  for (const auto& a : tags.assignments()) {
    nlohmann::ordered_json record;
    record["id"] = a.doc_id;
    record["which"] = to_string(a.which);
    auto labels = nlohmann::ordered_json::array();
    for (const auto label : a.labels) labels.push_back(std::string(1, to_code(label)));
    record["labels"] = std::move(labels);
    out += record.dump();
    out += '\n';
  }
  return out;
}

}  // namespace psent
