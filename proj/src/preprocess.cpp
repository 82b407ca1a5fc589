#include "nl2uml/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "nl2uml/lemma.hpp"
#include "nl2uml/parse.hpp"

namespace nl2uml {
namespace {

const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> s = {
      "i.e", "e.g", "etc", "cf", "vs", "dr", "mr", "mrs",
      "ms",  "fig", "no",  "vol", "al", "st"};
  return s;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)); }

// word (letters and dots) immediately preceding position `dot`
std::string word_before(const std::string& text, std::size_t dot) {
  std::size_t end = dot;
  std::size_t begin = end;
  while (begin > 0) {
    char c = text[begin - 1];
    if (std::isalpha(static_cast<unsigned char>(c)) ||
        (c == '.' && begin - 1 != dot))
      --begin;
    else
      break;
  }
  std::string w = text.substr(begin, end - begin);
  while (!w.empty() && w.back() == '.') w.pop_back();
  return to_lower(w);
}

struct SubjectInfo {
  std::string surface;  // determiner kept, e.g. "a place"
  bool plural = false;
  bool valid = false;
};

SubjectInfo sentence_subject(const std::string& sentence) {
  SubjectInfo info;
  static const BuiltinParser parser;
  ParsedSentence parsed = parser.parse(sentence);
  std::vector<NounPhrase> nps = noun_phrases(parsed);
  if (nps.empty()) return info;

  auto np_with_head_dep = [&](const std::string& dep) -> const NounPhrase* {
    for (const NounPhrase& np : nps)
      if (parsed.tokens[np.head_index].dep == dep) return &np;
    return nullptr;
  };
  const NounPhrase* subject = np_with_head_dep("nsubj");
  if (!subject) subject = np_with_head_dep("nsubjpass");
  if (!subject) {
    bool expl = false;
    for (const Token& t : parsed.tokens)
      if (t.dep == "expl") expl = true;
    if (expl) subject = np_with_head_dep("attr");
  }
  if (!subject) subject = &nps.front();

  std::string surface;
  for (std::size_t k = 0; k < subject->token_indices.size(); ++k) {
    const Token& t = parsed.tokens[subject->token_indices[k]];
    if (!surface.empty()) surface += " ";
    std::string w = t.text;
    if (t.pos == "DET") w = to_lower(w);
    surface += w;
  }
  if (surface.empty()) return info;
  info.surface = surface;
  info.plural =
      is_plural_noun(to_lower(parsed.tokens[subject->head_index].text));
  info.valid = true;
  return info;
}

struct PronounKind {
  bool matches = false;
  bool plural = false;
  bool possessive = false;
};

PronounKind classify_pronoun(const std::string& lower) {
  PronounKind k;
  static const std::unordered_set<std::string> singular = {"it", "he", "she",
                                                           "him", "her"};
  static const std::unordered_set<std::string> plural = {"they", "them"};
  if (singular.count(lower)) {
    k.matches = true;
  } else if (plural.count(lower)) {
    k.matches = true;
    k.plural = true;
  } else if (lower == "its") {
    k.matches = true;
    k.possessive = true;
  } else if (lower == "their") {
    k.matches = true;
    k.plural = true;
    k.possessive = true;
  }
  return k;
}

bool boundary_at(const std::string& s, std::size_t pos, std::size_t len) {
  if (pos > 0 && std::isalnum(static_cast<unsigned char>(s[pos - 1])))
    return false;
  if (pos + len < s.size() &&
      std::isalnum(static_cast<unsigned char>(s[pos + len])))
    return false;
  return true;
}

// Replaces pronouns of one sentence in place, given the subjects of the
// sentences before it (most recent first).
std::string resolve_sentence(const std::string& sentence,
                             const std::vector<SubjectInfo>& history) {
  std::vector<Token> tokens = tag_tokens(sentence);
  std::string out = sentence;
  std::size_t cursor = 0;
  for (const Token& tok : tokens) {
    // locate this token's occurrence to keep alignment with the raw string
    std::size_t pos = std::string::npos;
    for (std::size_t p = cursor; p + tok.text.size() <= out.size(); ++p) {
      bool eq = true;
      for (std::size_t k = 0; k < tok.text.size(); ++k)
        if (std::tolower(static_cast<unsigned char>(out[p + k])) !=
            std::tolower(static_cast<unsigned char>(tok.text[k]))) {
          eq = false;
          break;
        }
      if (eq && boundary_at(out, p, tok.text.size())) {
        pos = p;
        break;
      }
    }
    if (pos == std::string::npos) break;

    PronounKind kind;
    if (tok.pos == "PRON") kind = classify_pronoun(to_lower(tok.text));
    if (!kind.matches) {
      cursor = pos + tok.text.size();
      continue;
    }
    const SubjectInfo* referent = nullptr;
    for (const SubjectInfo& s : history)
      if (s.valid && s.plural == kind.plural) {
        referent = &s;
        break;
      }
    if (!referent) {
      cursor = pos + tok.text.size();
      continue;
    }
    std::string replacement = referent->surface;
    if (kind.possessive) replacement += "'s";
    bool sentence_initial = true;
    for (std::size_t p = 0; p < pos; ++p)
      if (!is_space(out[p])) sentence_initial = false;
    if (!replacement.empty()) {
      replacement[0] = sentence_initial
                           ? static_cast<char>(std::toupper(
                                 static_cast<unsigned char>(replacement[0])))
                           : static_cast<char>(std::tolower(
                                 static_cast<unsigned char>(replacement[0])));
    }
    out = out.substr(0, pos) + replacement + out.substr(pos + tok.text.size());
    cursor = pos + replacement.size();
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> sentence_spans(
    const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  const std::size_t n = text.size();
  std::size_t start = 0;
  while (start < n && is_space(text[start])) ++start;
  std::size_t i = start;
  while (i < n) {
    char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      std::size_t run_end = i;
      while (run_end + 1 < n && (text[run_end + 1] == '.' ||
                                 text[run_end + 1] == '!' ||
                                 text[run_end + 1] == '?'))
        ++run_end;
      const bool at_eof = run_end + 1 >= n;
      const bool before_space = !at_eof && is_space(text[run_end + 1]);
      const bool abbrev =
          c == '.' && run_end == i && abbreviations().count(word_before(text, i));
      if ((at_eof || before_space) && !abbrev) {
        spans.emplace_back(start, run_end + 1);
        i = run_end + 1;
        while (i < n && is_space(text[i])) ++i;
        start = i;
        continue;
      }
      i = run_end + 1;
      continue;
    }
    ++i;
  }
  if (start < n) {
    std::size_t end = n;
    while (end > start && is_space(text[end - 1])) --end;
    if (end > start) spans.emplace_back(start, end);
  }
  return spans;
}

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& [b, e] : sentence_spans(text))
    out.push_back(text.substr(b, e - b));
  return out;
}

std::string RuleBasedResolver::resolve(const std::string& text) const {
  const auto spans = sentence_spans(text);
  if (spans.empty()) return text;
  std::string out;
  std::vector<SubjectInfo> history;  // most recent first
  std::size_t consumed = 0;
  for (const auto& [b, e] : spans) {
    out += text.substr(consumed, b - consumed);
    std::string resolved = resolve_sentence(text.substr(b, e - b), history);
    out += resolved;
    consumed = e;
    history.insert(history.begin(), sentence_subject(resolved));
  }
  out += text.substr(consumed);
  return out;
}

std::unique_ptr<PronounResolver> make_resolver(const std::string& name,
                                               bool* warned) {
  if (warned) *warned = false;
  std::string lw = to_lower(name);
  if (lw.empty() || lw == "rule-based" || lw == "rules" || lw == "default")
    return std::make_unique<RuleBasedResolver>();
  if (lw == "identity" || lw == "none") return std::make_unique<IdentityResolver>();
  if (warned) *warned = true;
  return std::make_unique<IdentityResolver>();
}

std::string resolve_pronouns(const std::string& text) {
  return RuleBasedResolver().resolve(text);
}

std::vector<std::string> preprocess_text(const std::string& text,
                                         const PronounResolver& resolver) {
  return split_sentences(resolver.resolve(text));
}

}  // namespace nl2uml
