#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "psent/corpus.hpp"
#include "psent/tokenize.hpp"

namespace psent {

// Positive/negative word lists. Entries are lowercase, nonempty and contain no
// whitespace; the two sets are disjoint.
class SentimentLexicon {
 public:
  SentimentLexicon(std::set<std::string> positive, std::set<std::string> negative);

  [[nodiscard]] SentimentLabel lookup(std::string_view word) const;

  [[nodiscard]] const std::set<std::string>& positive() const noexcept { return positive_; }
  [[nodiscard]] const std::set<std::string>& negative() const noexcept { return negative_; }

 private:
  std::set<std::string> positive_;
  std::set<std::string> negative_;
};

// Opinion-lexicon layout: one word per line, `;` starts a comment line.
SentimentLexicon load_lexicon(const std::filesystem::path& positive_path,
                              const std::filesystem::path& negative_path);
std::set<std::string> parse_word_list(std::istream& in, std::string_view source);

std::vector<SentimentLabel> tag_tokens(const TokenStream& stream, const SentimentLexicon& lexicon);

struct DocumentRef {
  enum class Kind { dialogue, summary };
  Kind kind = Kind::dialogue;
  std::size_t index = 0;  // summary index, 0-based; unused for the dialogue

  static DocumentRef dialogue() noexcept { return {Kind::dialogue, 0}; }
  static DocumentRef summary(std::size_t k) noexcept { return {Kind::summary, k}; }

  auto operator<=>(const DocumentRef&) const = default;
};

// "dialogue" or "summary:<k>".
std::string to_string(const DocumentRef& ref);
std::optional<DocumentRef> parse_document_ref(std::string_view text);

struct TagAssignment {
  std::string doc_id;
  DocumentRef which;
  std::vector<SentimentLabel> labels;

  bool operator==(const TagAssignment&) const = default;
};

// Tag assignments keyed by (doc_id, document). Iteration follows insertion
// order so serialized output mirrors the corpus order.
class TagSet {
 public:
  void add(TagAssignment assignment);

  [[nodiscard]] const std::vector<SentimentLabel>* find(std::string_view doc_id,
                                                         const DocumentRef& which) const;
  [[nodiscard]] const std::vector<TagAssignment>& assignments() const noexcept {
    return assignments_;
  }
  [[nodiscard]] std::size_t size() const noexcept { return assignments_.size(); }

 private:
  std::vector<TagAssignment> assignments_;
  std::map<std::pair<std::string, DocumentRef>, std::size_t, std::less<>> index_;
};

// Tags the dialogue and every summary of each pair with the lexicon.
TagSet tag_corpus(const std::vector<DialogueSummaryPair>& pairs, const SentimentLexicon& lexicon,
                  const TokenizeOptions& options = {});

// Tag file records: {"id": ..., "which": "dialogue" | "summary:<k>", "labels": ["p","n","o",...]}.
// Label sequences must align with this toolkit's tokenization of the referenced text.
TagSet load_external_tags(const std::filesystem::path& path,
                          const std::vector<DialogueSummaryPair>& corpus,
                          const TokenizeOptions& options = {});
TagSet parse_external_tags(std::istream& in, const std::vector<DialogueSummaryPair>& corpus,
                           const TokenizeOptions& options = {},
                           std::string_view source = "<stream>");
std::string serialize_tags(const TagSet& tags);

}  // namespace psent
