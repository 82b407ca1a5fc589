#pragma once

#include <memory>
#include <string>
#include <vector>

namespace nl2uml {

// One token of a dependency-parsed sentence. Tags follow the Universal
// Dependencies coarse POS set; dep labels follow the usual English
// dependency scheme (nsubj, dobj, pobj, attr, conj, compound, ...).
struct Token {
  std::string text;
  std::string lemma;
  std::string pos;
  std::string dep;
  int head = 0;  // index of governing token; the root is its own head

  bool is_noun() const { return pos == "NOUN" || pos == "PROPN"; }
};

struct ParsedSentence {
  std::vector<Token> tokens;
  std::string source_text;

  int root_index() const;
  std::vector<int> children_of(int index) const;
  // First child of `index` with the given dep label, or -1.
  int child_with_dep(int index, const std::string& dep) const;
};

// A noun phrase: contiguous token span with a nominal head, covering the
// head's determiner, adjectival and compound modifiers.
struct NounPhrase {
  std::vector<int> token_indices;
  int head_index = 0;
};

// All third-party-style NLP tooling sits behind this contract so the
// pattern engine never depends on a concrete backend.
class ParserBackend {
 public:
  virtual ~ParserBackend() = default;
  virtual ParsedSentence parse(const std::string& sentence) const = 0;
  virtual std::string name() const = 0;
};

// Deterministic rule-based tagger + dependency cascade for simple English
// declaratives. The default backend: no model files, bit-stable output.
class BuiltinParser : public ParserBackend {
 public:
  ParsedSentence parse(const std::string& sentence) const override;
  std::string name() const override { return "builtin"; }
};

// Replays recorded parses from a JSON-lines fixture file (one
// ParsedSentence per line). Throws when asked for a sentence that was
// never recorded.
class FixtureParser : public ParserBackend {
 public:
  explicit FixtureParser(const std::string& path);
  ParsedSentence parse(const std::string& sentence) const override;
  std::string name() const override { return "fixture"; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

std::string parsed_to_json_line(const ParsedSentence& s);
ParsedSentence parsed_from_json_line(const std::string& line);
void save_fixtures(const std::vector<ParsedSentence>& sentences,
                   const std::string& path);

// Non-overlapping noun phrases in sentence order.
std::vector<NounPhrase> noun_phrases(const ParsedSentence& parsed);

// Phrase words in sentence order with determiners dropped.
std::vector<std::string> phrase_words(const ParsedSentence& parsed,
                                      const NounPhrase& np);

// Lightweight tokenize + POS pass shared with the preprocess module.
std::vector<Token> tag_tokens(const std::string& sentence);

}  // namespace nl2uml
