#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nl2uml/parse.hpp"
#include "nl2uml/uml.hpp"

namespace nl2uml {

enum class PatternId {
  CP1_COPULA,
  CP2_THERE_IS,
  CP3_COMPOUND_NOUN,
  CP4_COMPOUND_EXPLICIT,
  CP5_TO_HAVE,
  CP6_CLASS_NAMED,
  CP7_OF_PACKAGE,
  CP8_AND_CLAUSES,
  RP1_TO_HAVE,
  RP2_PASSIVE,
  RP3_COMPOSED,
  RP4_ACTIVE,
  RP5_NOUN_WITH,
  RP6_COPULA,
};

std::string pattern_id_name(PatternId id);
std::optional<PatternId> pattern_id_from_name(const std::string& name);
bool is_class_pattern(PatternId id);

enum class SentenceLabel { Class, Relationship };
std::string label_name(SentenceLabel label);
std::optional<SentenceLabel> label_from_name(const std::string& name);

struct BoundAttribute {
  std::vector<int> word_tokens;
  std::string type_name;  // empty when untyped
};

struct PatternMatch {
  PatternId pattern = PatternId::CP3_COMPOUND_NOUN;
  int priority = 0;
  int subject_token = -1;

  std::vector<int> subject_span;
  std::vector<int> object_span;
  std::vector<BoundAttribute> attributes;
  std::string package_name;
  std::string literal_name;
  int verb_token = -1;
  int prep_token = -1;
  int role_token = -1;
  int mult_begin = -1;
  int mult_end = -1;  // exclusive

  // Named token-span view of the bindings, for diagnostics and tests.
  std::map<std::string, std::vector<int>> spans() const;
};

// Declarative part of a pattern: which binder runs, when, and at what rank.
struct PatternRule {
  PatternId id = PatternId::CP3_COMPOUND_NOUN;
  std::string binder;
  int priority = 0;
  bool enabled = true;
  std::map<std::string, std::string> params;
};

struct PatternConfig {
  std::vector<PatternRule> rules;

  static PatternConfig builtin();
  static PatternConfig load(const std::string& path);
  void save(const std::string& path) const;
};

std::optional<Multiplicity> extract_multiplicity(const ParsedSentence& parsed,
                                                 int begin, int end,
                                                 int head_token = -1);

struct Generation {
  std::optional<Fragment> fragment;
  std::optional<PatternId> pattern;
  bool fallback = false;
  std::string diagnostic;  // non-empty on skip or fallback
};

class PatternEngine {
 public:
  PatternEngine();
  explicit PatternEngine(PatternConfig config);

  const PatternConfig& config() const { return config_; }

  std::vector<PatternMatch> match_patterns(const ParsedSentence& parsed,
                                           SentenceLabel label) const;
  // Highest priority wins; ties broken by earliest subject token.
  PatternMatch select_pattern(const std::vector<PatternMatch>& matches) const;

  Fragment generate_class_fragment(const ParsedSentence& parsed,
                                   const PatternMatch& match) const;
  Fragment generate_relationship_fragment(const ParsedSentence& parsed,
                                          const PatternMatch& match) const;

  Generation generate_fragment(const std::string& sentence,
                               SentenceLabel label,
                               const ParserBackend& parser) const;
  Generation generate_fragment(const ParsedSentence& parsed,
                               SentenceLabel label) const;

 private:
  PatternConfig config_;
};

}  // namespace nl2uml
