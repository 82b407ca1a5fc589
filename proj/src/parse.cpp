#include "nl2uml/parse.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "nl2uml/lemma.hpp"
#include "nlohmann/json.hpp"

namespace nl2uml {
namespace {

using StringSet = std::unordered_set<std::string>;

const StringSet& determiners() {
  static const StringSet s = {"a",    "an",   "the",  "this",    "that",
                              "these", "those", "every", "each",  "all",
                              "some",  "any",   "no",    "another", "both"};
  return s;
}

const StringSet& pronouns() {
  static const StringSet s = {"it",  "they", "them", "he",  "she", "him",
                              "her", "we",   "us",   "i",   "you", "me",
                              "its", "their", "his",  "itself", "themselves",
                              "there"};
  return s;
}

const StringSet& prepositions() {
  static const StringSet s = {
      "in",   "of",     "to",      "by",      "on",      "with",  "from",
      "at",   "for",    "into",    "about",   "over",    "under", "between",
      "among", "through", "during", "within",  "without", "across", "after",
      "before", "against", "along",  "around",  "behind",  "below", "beside",
      "near", "onto",   "per",     "since",   "toward",  "towards", "upon",
      "via",  "as"};
  return s;
}

const StringSet& coord_conjunctions() {
  static const StringSet s = {"and", "or", "but", "nor"};
  return s;
}

const StringSet& modals() {
  static const StringSet s = {"may",   "can",  "must",  "might", "will",
                              "would", "should", "could", "shall"};
  return s;
}

const StringSet& be_forms() {
  static const StringSet s = {"is", "are", "was", "were", "be", "been", "being",
                              "am"};
  return s;
}

const StringSet& have_forms() {
  static const StringSet s = {"have", "has", "had", "having"};
  return s;
}

const StringSet& do_forms() {
  static const StringSet s = {"do", "does", "did"};
  return s;
}

const StringSet& adverbs() {
  static const StringSet s = {"only",    "least",  "most",   "also",
                              "always",  "never",  "often",  "usually",
                              "currently", "already", "exactly", "directly",
                              "uniquely", "together", "separately"};
  return s;
}

const StringSet& adjectives() {
  static const StringSet s = {
      "other",    "specific", "new",       "old",        "big",
      "small",    "large",    "main",      "single",     "unique",
      "optional", "mandatory", "primary",  "secondary",  "current",
      "final",    "initial",  "important", "available",  "responsible",
      "different", "various",  "own",       "full",       "empty",
      "active",   "public",   "private",   "internal",   "external",
      "digital",  "physical", "electronic", "personal",   "medical",
      "legal",    "financial", "academic",  "monthly",    "annual",
      "daily",    "weekly",   "red",       "blue",       "green",
      "bold",     "italic",   "long",      "short",      "high",
      "low",      "executable", "additional", "separate", "multiple",
      "several",  "many",     "few",       "individual", "general",
      "common",   "special",  "standard",  "basic",      "simple",
      "corresponding", "registered", "free", "busy",     "possible"};
  return s;
}

const StringSet& number_words() {
  static const StringSet s = {"one", "two",  "three", "four", "five", "six",
                              "seven", "eight", "nine", "ten",  "eleven",
                              "twelve", "zero"};
  return s;
}

const StringSet& verb_bases() {
  static const StringSet s = {
      "be",       "have",     "do",       "contain",  "own",      "manage",
      "teach",    "borrow",   "require",  "publish",  "assign",   "map",
      "belong",   "include",  "use",      "create",   "send",     "receive",
      "store",    "track",    "employ",   "supervise", "schedule", "book",
      "order",    "deliver",  "rent",     "review",   "keep",     "hold",
      "take",     "make",     "give",     "get",      "run",      "provide",
      "offer",    "serve",    "process",  "handle",   "operate",  "maintain",
      "monitor",  "control",  "record",   "register", "issue",    "place",
      "locate",   "divide",   "group",    "describe", "identify", "define",
      "measure",  "mark",     "ship",     "bill",     "pay",      "sign",
      "approve",  "update",   "label",    "print",    "prepare",  "cook",
      "clean",    "repair",   "insure",   "loan",     "return",   "reserve",
      "enroll",   "grade",    "examine",  "treat",    "admit",    "discharge",
      "prescribe", "perform", "organize", "host",     "staff",    "equip",
      "drive",    "fly",      "pilot",    "board",    "depart",   "arrive",
      "consist",  "compose",  "relate",   "associate", "connect", "link",
      "attach",   "point",    "refer",    "correspond", "apply",  "depend",
      "lead",     "report",   "write",    "read",     "edit",     "display",
      "show",     "generate", "produce",  "buy",      "sell",     "lend",
      "collect",  "count",    "list",     "sort",     "search",   "find",
      "access",   "feed",     "visit",    "stay",     "live",     "play",
      "follow",   "support",  "need",     "want",     "allow",    "enable",
      "work",     "represent", "specify", "communicate", "subscribe",
      "comment",  "post",     "rate",     "flag",     "moderate", "archive",
      "index",    "tag",      "name",     "call",     "know",     "consider",
      "split",    "derive",   "extend",   "implement", "inherit", "reference",
      "aggregate", "comprise", "involve", "cover",    "earn",     "award",
      "nominate", "elect",    "appoint",  "hire",     "promote",  "transfer",
      "notify",   "remind",   "alert",    "email",    "mail",     "phone",
      "cite",     "supply",   "stock",    "house",    "ride",     "attend",
      "occupy",   "carry",    "check",    "open",     "close",    "start",
      "finish",   "cancel",   "confirm",  "verify",   "validate", "submit",
      "accept",   "reject",   "purchase", "consult",  "conduct",  "direct"};
  return s;
}

const StringSet& irregular_participles() {
  static const StringSet s = {
      "given",  "taken",  "written", "held",   "kept",   "made",   "sent",
      "built",  "bought", "sold",    "found",  "known",  "shown",  "seen",
      "done",   "been",   "got",     "gotten", "run",    "read",   "led",
      "fed",    "met",    "set",     "put",    "paid",   "left",   "drawn",
      "grown",  "thrown", "flown",   "driven", "hidden", "chosen", "broken",
      "spoken", "taught", "caught",  "brought", "sought", "thought", "felt",
      "lent",   "spent",  "meant",   "lost",   "told",   "heard",  "laid",
      "said",   "stood",  "won",     "lit",    "sat",    "spread", "cut",
      "hit",    "let",    "shut",    "split",  "cast",   "cost"};
  return s;
}

bool is_all_digits(const std::string& w) {
  if (w.empty()) return false;
  return std::all_of(w.begin(), w.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

bool could_be_verb(const std::string& lower) {
  if (verb_bases().count(lower)) return true;
  return verb_bases().count(lemma_verb(lower)) > 0;
}

bool is_base_verb_form(const std::string& lower) {
  return verb_bases().count(lower) > 0 && lemma_verb(lower) == lower;
}

bool is_participle(const std::string& lower) {
  if (irregular_participles().count(lower)) return true;
  if (lower.size() > 3 && lower.substr(lower.size() - 2) == "ed")
    return could_be_verb(lower);
  return false;
}

bool is_capitalized(const std::string& w) {
  return !w.empty() && std::isupper(static_cast<unsigned char>(w[0]));
}

bool has_inner_upper(const std::string& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (std::isupper(static_cast<unsigned char>(w[i]))) return true;
  return false;
}

bool is_punct_token(const std::string& w) {
  return !w.empty() && !std::isalnum(static_cast<unsigned char>(w[0])) &&
         w != "'s";
}

std::vector<std::string> split_tokens(const std::string& sentence) {
  std::vector<std::string> out;
  std::size_t i = 0;
  const std::size_t n = sentence.size();
  while (i < n) {
    unsigned char c = sentence[i];
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isalnum(c)) {
      std::size_t j = i;
      while (j < n) {
        unsigned char d = sentence[j];
        if (std::isalnum(d) || d == '-' || d == '_') {
          ++j;
          continue;
        }
        // keep word-internal apostrophes out: 's is split below
        break;
      }
      out.push_back(sentence.substr(i, j - i));
      i = j;
      if (i + 1 < n && sentence[i] == '\'' &&
          (sentence[i + 1] == 's' || sentence[i + 1] == 'S') &&
          (i + 2 >= n || !std::isalnum(static_cast<unsigned char>(
                             sentence[i + 2])))) {
        out.push_back("'s");
        i += 2;
      }
      continue;
    }
    out.push_back(std::string(1, sentence[i]));
    ++i;
  }
  return out;
}

struct Chunk {
  std::vector<int> indices;
  int head = -1;
};

}  // namespace

int ParsedSentence::root_index() const {
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (tokens[i].dep == "ROOT") return static_cast<int>(i);
  return tokens.empty() ? -1 : 0;
}

std::vector<int> ParsedSentence::children_of(int index) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (tokens[i].head == index && static_cast<int>(i) != index)
      out.push_back(static_cast<int>(i));
  return out;
}

int ParsedSentence::child_with_dep(int index, const std::string& dep) const {
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (tokens[i].head == index && static_cast<int>(i) != index &&
        tokens[i].dep == dep)
      return static_cast<int>(i);
  return -1;
}

std::vector<Token> tag_tokens(const std::string& sentence) {
  const std::vector<std::string> words = split_tokens(sentence);
  const std::size_t n = words.size();
  std::vector<Token> toks(n);
  std::vector<std::string> lower(n);
  for (std::size_t i = 0; i < n; ++i) {
    toks[i].text = words[i];
    lower[i] = to_lower(words[i]);
  }

  bool have_main_verb = false;
  bool in_verb_group = false;
  bool be_aux_open = false;

  auto prev_word_pos = [&](std::size_t i) -> std::string {
    for (std::size_t j = i; j-- > 0;) {
      if (toks[j].pos == "PUNCT") continue;
      return toks[j].pos;
    }
    return "";
  };
  auto last_noun_before = [&](std::size_t i) -> int {
    for (std::size_t j = i; j-- > 0;)
      if (toks[j].pos == "NOUN" || toks[j].pos == "PROPN")
        return static_cast<int>(j);
    return -1;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const std::string& w = lower[i];
    Token& t = toks[i];

    if (is_punct_token(words[i])) {
      t.pos = "PUNCT";
      t.lemma = words[i];
      continue;
    }
    if (is_all_digits(w)) {
      t.pos = "NUM";
      t.lemma = w;
      continue;
    }
    if (w == "not" || w == "'s") {
      t.pos = "PART";
      t.lemma = w == "'s" ? "'s" : "not";
      continue;
    }
    if (w == "at" && i + 1 < n &&
        (to_lower(words[i + 1]) == "least" || to_lower(words[i + 1]) == "most")) {
      t.pos = "ADV";
      t.lemma = w;
      continue;
    }
    if (w == "there" && i + 1 < n && be_forms().count(to_lower(words[i + 1]))) {
      t.pos = "PRON";
      t.lemma = "there";
      continue;
    }
    if (number_words().count(w)) {
      t.pos = "NUM";
      t.lemma = w;
      continue;
    }
    if (determiners().count(w)) {
      t.pos = "DET";
      t.lemma = w;
      continue;
    }
    if (coord_conjunctions().count(w)) {
      t.pos = "CCONJ";
      t.lemma = w;
      continue;
    }
    if (modals().count(w)) {
      t.pos = "AUX";
      t.lemma = w;
      in_verb_group = true;
      continue;
    }
    if (be_forms().count(w)) {
      t.pos = "AUX";
      t.lemma = "be";
      in_verb_group = true;
      be_aux_open = true;
      continue;
    }
    if (do_forms().count(w) && i + 1 < n && could_be_verb(to_lower(words[i + 1]))) {
      t.pos = "AUX";
      t.lemma = "do";
      in_verb_group = true;
      continue;
    }
    if (have_forms().count(w)) {
      const bool aux_use =
          !have_main_verb && i + 1 < n &&
          (to_lower(words[i + 1]) == "been" || is_participle(to_lower(words[i + 1])));
      if (aux_use) {
        t.pos = "AUX";
        t.lemma = "have";
        in_verb_group = true;
      } else if (!have_main_verb) {
        t.pos = "VERB";
        t.lemma = "have";
        have_main_verb = true;
        in_verb_group = false;
        be_aux_open = false;
      } else {
        t.pos = "NOUN";
        t.lemma = w;
      }
      continue;
    }
    if (pronouns().count(w)) {
      t.pos = "PRON";
      t.lemma = w;
      continue;
    }
    if (prepositions().count(w)) {
      t.pos = "ADP";
      t.lemma = w;
      continue;
    }
    if (adverbs().count(w)) {
      t.pos = "ADV";
      t.lemma = w;
      continue;
    }

    const std::string prev = prev_word_pos(i);
    const bool np_context =
        prev == "DET" || prev == "ADJ" || prev == "NUM" || prev == "ADP" ||
        prev == "PART";

    if (adjectives().count(w)) {
      bool next_nounish = false;
      if (i + 1 < n) {
        const std::string nx = to_lower(words[i + 1]);
        next_nounish = !is_punct_token(words[i + 1]) &&
                       !prepositions().count(nx) && !be_forms().count(nx) &&
                       !modals().count(nx) && !coord_conjunctions().count(nx);
      }
      if (next_nounish || prev == "AUX") {
        t.pos = "ADJ";
        t.lemma = w;
        continue;
      }
    }

    if (!have_main_verb && could_be_verb(w) && !np_context) {
      bool accept = in_verb_group || last_noun_before(i) >= 0 ||
                    (i > 0 && toks[i - 1].pos == "PRON");
      if (accept && !in_verb_group && is_base_verb_form(w)) {
        // subject-verb agreement: a bare base form needs a plural subject
        int subj = last_noun_before(i);
        if (subj >= 0 && !is_plural_noun(to_lower(toks[subj].text)))
          accept = false;
      }
      if (accept && !in_verb_group && !is_base_verb_form(w) &&
          w.size() > 1 && w.back() == 's' && i + 1 < n) {
        // "book stores sell ..." : prefer the later finite verb
        const std::string nx = to_lower(words[i + 1]);
        if (is_base_verb_form(nx) || be_forms().count(nx) || modals().count(nx))
          accept = false;
      }
      if (accept) {
        if (in_verb_group && be_aux_open && !is_participle(w) &&
            !is_base_verb_form(w) && w.substr(w.size() > 3 ? w.size() - 3 : 0) != "ing") {
          // "is" followed by a plain nominal: copula, fall through to noun
        } else {
          t.pos = "VERB";
          t.lemma = lemma_verb(w);
          have_main_verb = true;
          in_verb_group = false;
          be_aux_open = false;
          continue;
        }
      }
    }

    if (has_inner_upper(words[i]) || (is_capitalized(words[i]) && i > 0)) {
      t.pos = "PROPN";
      t.lemma = lemma_noun(w);
      continue;
    }
    t.pos = "NOUN";
    t.lemma = lemma_noun(w);
  }
  return toks;
}

namespace {

std::vector<Chunk> build_chunks(const std::vector<Token>& toks) {
  std::vector<Chunk> chunks;
  const int n = static_cast<int>(toks.size());
  int i = 0;
  while (i < n) {
    const std::string& p = toks[i].pos;
    if (p == "DET" || p == "ADJ" || p == "NUM" || p == "NOUN" ||
        p == "PROPN" || (p == "PART" && toks[i].text == "'s")) {
      int j = i;
      int last_noun = -1;
      while (j < n) {
        const std::string& q = toks[j].pos;
        // a fresh determiner after a noun starts the next phrase
        if (q == "DET" && last_noun >= 0) break;
        if (q == "DET" || q == "ADJ" || q == "NUM" ||
            (q == "PART" && toks[j].text == "'s")) {
          ++j;
          continue;
        }
        if (q == "NOUN" || q == "PROPN") {
          last_noun = j;
          ++j;
          continue;
        }
        break;
      }
      if (last_noun >= 0) {
        Chunk c;
        for (int k = i; k <= last_noun; ++k) c.indices.push_back(k);
        c.head = last_noun;
        chunks.push_back(c);
        i = last_noun + 1;
        continue;
      }
      i = j;  // determiner or number run with no noun head
      continue;
    }
    ++i;
  }
  return chunks;
}

}  // namespace

ParsedSentence BuiltinParser::parse(const std::string& sentence) const {
  ParsedSentence out;
  out.source_text = sentence;
  out.tokens = tag_tokens(sentence);
  std::vector<Token>& toks = out.tokens;
  const int n = static_cast<int>(toks.size());
  if (n == 0) return out;

  // main verb / copular root
  int main = -1;
  for (int i = 0; i < n; ++i)
    if (toks[i].pos == "VERB") {
      main = i;
      break;
    }
  bool passive = false;
  if (main >= 0 && is_participle(to_lower(toks[main].text))) {
    for (int j = main - 1; j >= 0 && toks[j].pos == "AUX"; --j)
      if (toks[j].lemma == "be") passive = true;
  }
  if (main < 0) {
    for (int i = 0; i < n; ++i)
      if (toks[i].pos == "AUX" && toks[i].lemma == "be") {
        main = i;  // copula as root
        break;
      }
  }

  const std::vector<Chunk> chunks = build_chunks(toks);
  std::vector<int> chunk_of(n, -1);
  for (std::size_t c = 0; c < chunks.size(); ++c)
    for (int idx : chunks[c].indices) chunk_of[idx] = static_cast<int>(c);

  if (main < 0) {
    main = chunks.empty() ? 0 : chunks[0].head;
  }
  toks[main].dep = "ROOT";
  toks[main].head = main;

  // intra-chunk structure
  for (const Chunk& c : chunks) {
    for (std::size_t k = 0; k < c.indices.size(); ++k) {
      int idx = c.indices[k];
      if (idx == c.head) continue;
      Token& t = toks[idx];
      int next_noun = c.head;
      for (std::size_t m = k + 1; m < c.indices.size(); ++m) {
        const Token& cand = toks[c.indices[m]];
        if (cand.pos == "NOUN" || cand.pos == "PROPN") {
          next_noun = c.indices[m];
          break;
        }
      }
      if (t.pos == "DET") {
        t.dep = "det";
        t.head = next_noun;
      } else if (t.pos == "ADJ") {
        t.dep = "amod";
        t.head = next_noun;
      } else if (t.pos == "NUM") {
        t.dep = "nummod";
        t.head = next_noun;
      } else if (t.pos == "PART") {
        t.dep = "case";
        t.head = k > 0 ? c.indices[k - 1] : next_noun;
      } else {
        // nominal modifier: possessor when followed by 's, compound otherwise
        bool poss = k + 1 < c.indices.size() &&
                    toks[c.indices[k + 1]].pos == "PART";
        t.dep = poss ? "poss" : "compound";
        t.head = poss ? c.head : c.head;
      }
    }
  }

  // linear attachment pass
  int pending_prep = -1;
  int last_content = -1;  // most recent nominal head or verb
  int conj_root_subj = -1;
  int conj_root_obj = -1;
  int pending_cc = -1;
  bool subject_done = false;
  std::vector<int> orphan_nums;

  auto attach_prep_object = [&](int head_idx) {
    toks[head_idx].head = pending_prep;
    toks[head_idx].dep = "pobj";
    pending_prep = -1;
  };

  for (int i = 0; i < n; ++i) {
    Token& t = toks[i];
    if (i == main) {
      last_content = i;
      continue;
    }
    if (chunk_of[i] >= 0) {
      const Chunk& c = chunks[chunk_of[i]];
      if (i != c.head) continue;
      // resolve any stranded numeral quantifiers onto this head
      for (int num_idx : orphan_nums) {
        toks[num_idx].dep = "nummod";
        toks[num_idx].head = c.head;
      }
      orphan_nums.clear();
      if (pending_prep >= 0) {
        attach_prep_object(c.head);
        if (pending_cc >= 0) {
          toks[pending_cc].dep = "cc";
          toks[pending_cc].head = c.head;
          pending_cc = -1;
        }
        conj_root_obj = c.head;
      } else if (pending_cc >= 0) {
        int root_idx = subject_done && i > main && conj_root_obj >= 0
                           ? conj_root_obj
                           : (conj_root_subj >= 0 ? conj_root_subj : main);
        if (i > main && conj_root_obj >= 0) root_idx = conj_root_obj;
        t.dep = "conj";
        t.head = root_idx;
        toks[pending_cc].dep = "cc";
        toks[pending_cc].head = root_idx;
        pending_cc = -1;
      } else if (i < main || (main == c.head)) {
        if (!subject_done && main != c.head) {
          t.dep = passive ? "nsubjpass" : "nsubj";
          t.head = main;
          subject_done = true;
          conj_root_subj = c.head;
        } else if (main != c.head) {
          t.dep = "dep";
          t.head = main;
        }
      } else {
        const bool copular = toks[main].pos == "AUX";
        t.dep = copular ? "attr" : "dobj";
        t.head = main;
        conj_root_obj = c.head;
      }
      last_content = c.head;
      continue;
    }
    if (t.pos == "PUNCT") {
      t.dep = "punct";
      t.head = main;
      continue;
    }
    if (t.pos == "ADP") {
      t.dep = (to_lower(t.text) == "by" && passive) ? "agent" : "prep";
      t.head = last_content >= 0 ? last_content : main;
      pending_prep = i;
      continue;
    }
    if (t.pos == "AUX") {
      t.dep = passive && t.lemma == "be" ? "auxpass" : "aux";
      t.head = main;
      continue;
    }
    if (t.pos == "CCONJ") {
      pending_cc = i;
      t.dep = "cc";
      t.head = main;
      continue;
    }
    if (t.pos == "PRON") {
      if (t.lemma == "there" && toks[main].lemma == "be") {
        t.dep = "expl";
        t.head = main;
      } else if (!subject_done && i < main) {
        t.dep = passive ? "nsubjpass" : "nsubj";
        t.head = main;
        subject_done = true;
      } else if (pending_prep >= 0) {
        attach_prep_object(i);
      } else if (i > main) {
        t.dep = toks[main].pos == "AUX" ? "attr" : "dobj";
        t.head = main;
      } else {
        t.dep = "dep";
        t.head = main;
      }
      last_content = i;
      continue;
    }
    if (t.pos == "NUM") {
      orphan_nums.push_back(i);
      t.dep = "nummod";
      t.head = main;
      continue;
    }
    if (t.pos == "ADV" || t.pos == "PART") {
      t.dep = t.lemma == "not" ? "neg" : "advmod";
      // quantifier adverbs lean on the numeral they modify
      int target = main;
      for (int j = i + 1; j < n && j <= i + 2; ++j)
        if (toks[j].pos == "NUM") {
          target = j;
          break;
        }
      t.head = target;
      continue;
    }
    if (t.pos == "VERB") {
      t.dep = "conj";
      t.head = main;
      last_content = i;
      continue;
    }
    if (t.dep.empty()) {
      t.dep = "dep";
      t.head = main;
    }
  }
  return out;
}

std::vector<NounPhrase> noun_phrases(const ParsedSentence& parsed) {
  std::vector<NounPhrase> out;
  for (const Chunk& c : build_chunks(parsed.tokens)) {
    NounPhrase np;
    np.token_indices = c.indices;
    np.head_index = c.head;
    out.push_back(np);
  }
  return out;
}

std::vector<std::string> phrase_words(const ParsedSentence& parsed,
                                      const NounPhrase& np) {
  std::vector<std::string> out;
  for (int idx : np.token_indices) {
    const Token& t = parsed.tokens[idx];
    if (t.pos == "DET" || t.pos == "PART" || t.pos == "NUM") continue;
    out.push_back(t.text);
  }
  return out;
}

std::string parsed_to_json_line(const ParsedSentence& s) {
  nlohmann::ordered_json j;
  j["text"] = s.source_text;
  j["tokens"] = nlohmann::ordered_json::array();
  for (const Token& t : s.tokens) {
    nlohmann::ordered_json tj;
    tj["text"] = t.text;
    tj["lemma"] = t.lemma;
    tj["pos"] = t.pos;
    tj["dep"] = t.dep;
    tj["head"] = t.head;
    j["tokens"].push_back(tj);
  }
  return j.dump();
}

ParsedSentence parsed_from_json_line(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line);
  ParsedSentence s;
  s.source_text = j.at("text").get<std::string>();
  for (const auto& tj : j.at("tokens")) {
    Token t;
    t.text = tj.at("text").get<std::string>();
    t.lemma = tj.at("lemma").get<std::string>();
    t.pos = tj.at("pos").get<std::string>();
    t.dep = tj.at("dep").get<std::string>();
    t.head = tj.at("head").get<int>();
    s.tokens.push_back(t);
  }
  return s;
}

void save_fixtures(const std::vector<ParsedSentence>& sentences,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write fixture file: " + path);
  for (const ParsedSentence& s : sentences) out << parsed_to_json_line(s) << "\n";
}

struct FixtureParser::Impl {
  std::unordered_map<std::string, ParsedSentence> by_text;
};

FixtureParser::FixtureParser(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture file: " + path);
  auto impl = std::make_shared<Impl>();
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ParsedSentence s = parsed_from_json_line(line);
    impl->by_text[s.source_text] = std::move(s);
  }
  impl_ = impl;
}

ParsedSentence FixtureParser::parse(const std::string& sentence) const {
  auto it = impl_->by_text.find(sentence);
  if (it == impl_->by_text.end())
    throw std::runtime_error("sentence not in fixture file: " + sentence);
  return it->second;
}

}  // namespace nl2uml
