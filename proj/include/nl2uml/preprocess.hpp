#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace nl2uml {

// Text -> text coreference contract; implementations substitute anaphoric
// pronouns with their referent noun phrases.
class PronounResolver {
 public:
  virtual ~PronounResolver() = default;
  virtual std::string resolve(const std::string& text) const = 0;
  virtual std::string name() const = 0;
};

// Deterministic fallback: a third-person pronoun is replaced by the subject
// noun phrase of the nearest preceding sentence with matching number;
// possessives become "<referent>'s". Unresolvable pronouns stay verbatim.
class RuleBasedResolver : public PronounResolver {
 public:
  std::string resolve(const std::string& text) const override;
  std::string name() const override { return "rule-based"; }
};

class IdentityResolver : public PronounResolver {
 public:
  std::string resolve(const std::string& text) const override { return text; }
  std::string name() const override { return "identity"; }
};

// Returns the rule-based resolver for known names, identity otherwise
// (setting *warned so callers can log the fallback).
std::unique_ptr<PronounResolver> make_resolver(const std::string& name,
                                               bool* warned = nullptr);

// Byte ranges [begin, end) of each sentence; every byte outside the spans is
// inter-sentence whitespace. Boundaries are sentence-final ./!/? runs,
// skipping abbreviations such as "i.e." and "e.g.".
std::vector<std::pair<std::size_t, std::size_t>> sentence_spans(
    const std::string& text);

std::vector<std::string> split_sentences(const std::string& text);

std::string resolve_pronouns(const std::string& text);

// resolve then split, with the resolver pluggable.
std::vector<std::string> preprocess_text(const std::string& text,
                                         const PronounResolver& resolver);

}  // namespace nl2uml
