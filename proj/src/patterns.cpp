#include "nl2uml/patterns.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "nl2uml/lemma.hpp"
#include "nlohmann/json.hpp"

namespace nl2uml {
namespace {

const std::vector<std::pair<PatternId, std::string>>& id_names() {
  static const std::vector<std::pair<PatternId, std::string>> v = {
      {PatternId::CP1_COPULA, "CP1_COPULA"},
      {PatternId::CP2_THERE_IS, "CP2_THERE_IS"},
      {PatternId::CP3_COMPOUND_NOUN, "CP3_COMPOUND_NOUN"},
      {PatternId::CP4_COMPOUND_EXPLICIT, "CP4_COMPOUND_EXPLICIT"},
      {PatternId::CP5_TO_HAVE, "CP5_TO_HAVE"},
      {PatternId::CP6_CLASS_NAMED, "CP6_CLASS_NAMED"},
      {PatternId::CP7_OF_PACKAGE, "CP7_OF_PACKAGE"},
      {PatternId::CP8_AND_CLAUSES, "CP8_AND_CLAUSES"},
      {PatternId::RP1_TO_HAVE, "RP1_TO_HAVE"},
      {PatternId::RP2_PASSIVE, "RP2_PASSIVE"},
      {PatternId::RP3_COMPOSED, "RP3_COMPOSED"},
      {PatternId::RP4_ACTIVE, "RP4_ACTIVE"},
      {PatternId::RP5_NOUN_WITH, "RP5_NOUN_WITH"},
      {PatternId::RP6_COPULA, "RP6_COPULA"},
  };
  return v;
}

const std::unordered_set<std::string>& hedge_words() {
  static const std::unordered_set<std::string> s = {
      "other",   "specific",  "multiple", "several",       "many",
      "few",     "various",   "different", "single",        "additional",
      "own",     "possible",  "corresponding", "certain",   "any",
      "some",    "least",     "most",     "exactly",        "only"};
  return s;
}

const std::unordered_map<std::string, std::string>& canonical_types() {
  static const std::unordered_map<std::string, std::string> m = {
      {"string", "String"},   {"double", "Double"}, {"integer", "Integer"},
      {"boolean", "Boolean"}, {"date", "Date"},     {"float", "Float"}};
  return m;
}

const std::unordered_map<std::string, int>& cardinal_words() {
  static const std::unordered_map<std::string, int> m = {
      {"one", 1},  {"two", 2},  {"three", 3}, {"four", 4},
      {"five", 5}, {"six", 6},  {"seven", 7}, {"eight", 8},
      {"nine", 9}, {"ten", 10}, {"eleven", 11}, {"twelve", 12}};
  return m;
}

struct Ctx {
  const ParsedSentence& s;
  std::vector<NounPhrase> chunks;
  int main = -1;
  bool copular = false;
  bool passive = false;

  explicit Ctx(const ParsedSentence& parsed) : s(parsed) {
    chunks = noun_phrases(parsed);
    main = parsed.root_index();
    if (main >= 0 && main < static_cast<int>(parsed.tokens.size()))
      copular = parsed.tokens[main].pos == "AUX" &&
                parsed.tokens[main].lemma == "be";
    for (const Token& t : parsed.tokens)
      if (t.dep == "nsubjpass" || t.dep == "auxpass") passive = true;
  }

  const Token& tok(int i) const { return s.tokens[i]; }
  int ntok() const { return static_cast<int>(s.tokens.size()); }

  int chunk_of_token(int idx) const {
    for (std::size_t c = 0; c < chunks.size(); ++c)
      for (int i : chunks[c].token_indices)
        if (i == idx) return static_cast<int>(c);
    return -1;
  }
  int chunk_with_head_dep(const std::string& dep) const {
    for (std::size_t c = 0; c < chunks.size(); ++c)
      if (tok(chunks[c].head_index).dep == dep) return static_cast<int>(c);
    return -1;
  }
  int chunk_headed_by(int token_idx) const {
    for (std::size_t c = 0; c < chunks.size(); ++c)
      if (chunks[c].head_index == token_idx) return static_cast<int>(c);
    return -1;
  }
  // Chunks in object position after the main verb: dobj/attr plus conj.
  std::vector<int> object_chunks() const {
    std::vector<int> out;
    for (std::size_t c = 0; c < chunks.size(); ++c) {
      const std::string& d = tok(chunks[c].head_index).dep;
      if ((d == "dobj" || d == "attr" || d == "conj") &&
          chunks[c].head_index > main)
        out.push_back(static_cast<int>(c));
    }
    return out;
  }
  int pobj_chunk_of_prep(int prep_idx) const {
    for (std::size_t c = 0; c < chunks.size(); ++c) {
      const Token& h = tok(chunks[c].head_index);
      if (h.dep == "pobj" && h.head == prep_idx) return static_cast<int>(c);
    }
    for (int i = 0; i < ntok(); ++i)
      if (tok(i).dep == "pobj" && tok(i).head == prep_idx)
        return chunk_of_token(i);
    return -1;
  }
  bool is_type_chunk(int c) const {
    const Token& h = tok(chunks[c].head_index);
    if (h.dep != "pobj") return false;
    for (int i : chunks[c].token_indices) {
      const Token& t = tok(i);
      if (t.pos == "DET") continue;
      return t.lemma == "type";
    }
    return false;
  }
};

std::vector<std::string> naming_words(const Ctx& ctx,
                                      const std::vector<int>& span) {
  std::vector<std::string> out;
  for (int idx : span) {
    const Token& t = ctx.tok(idx);
    if (t.pos == "DET" || t.pos == "PART" || t.pos == "NUM" ||
        t.pos == "ADV" || t.pos == "PUNCT")
      continue;
    if (hedge_words().count(to_lower(t.text))) continue;
    out.push_back(t.text);
  }
  return out;
}

int span_head(const Ctx& ctx, const std::vector<int>& span) {
  int head = -1;
  for (int idx : span)
    if (ctx.tok(idx).is_noun()) head = idx;
  return head;
}

PatternMatch base_match(PatternId id, int priority, int subject_token) {
  PatternMatch m;
  m.pattern = id;
  m.priority = priority;
  m.subject_token = subject_token;
  return m;
}

// Finds a chunk naming a package and returns its identifier, or "".
std::string find_package(const Ctx& ctx, int exclude_chunk) {
  for (std::size_t c = 0; c < ctx.chunks.size(); ++c) {
    if (static_cast<int>(c) == exclude_chunk) continue;
    bool has_kw = false;
    for (int i : ctx.chunks[c].token_indices)
      if (ctx.tok(i).lemma == "package") has_kw = true;
    if (!has_kw) continue;
    std::vector<std::string> words;
    for (int i : ctx.chunks[c].token_indices) {
      const Token& t = ctx.tok(i);
      if (t.pos == "DET" || t.lemma == "package") continue;
      if (t.is_noun() || t.pos == "ADJ") words.push_back(t.text);
    }
    if (!words.empty())
      return normalize_identifier(words, IdentifierKind::ClassName);
  }
  return "";
}

// --- class binders ---------------------------------------------------------

std::vector<PatternMatch> bind_class_copula(const Ctx& ctx,
                                            const PatternRule& rule) {
  if (!ctx.copular) return {};
  const std::string want = rule.params.count("attr_head_lemma")
                               ? rule.params.at("attr_head_lemma")
                               : "class";
  int attr_c = ctx.chunk_with_head_dep("attr");
  if (attr_c < 0) return {};
  if (ctx.tok(ctx.chunks[attr_c].head_index).lemma != want) return {};
  int subj_c = ctx.chunk_with_head_dep("nsubj");
  if (subj_c < 0) return {};
  if (rule.params.count("require_lemma")) {
    bool found = false;
    for (int i = 0; i < ctx.ntok(); ++i)
      if (ctx.tok(i).lemma == rule.params.at("require_lemma")) found = true;
    if (!found) return {};
  }
  PatternMatch m = base_match(rule.id, rule.priority,
                              ctx.chunks[subj_c].head_index);
  m.subject_span = ctx.chunks[subj_c].token_indices;
  m.package_name = find_package(ctx, subj_c);
  return {m};
}

std::vector<PatternMatch> bind_class_there(const Ctx& ctx,
                                           const PatternRule& rule) {
  bool expl = false;
  for (const Token& t : ctx.s.tokens)
    if (t.dep == "expl") expl = true;
  if (!expl || !ctx.copular) return {};
  int attr_c = ctx.chunk_with_head_dep("attr");
  if (attr_c < 0) return {};
  PatternMatch m = base_match(rule.id, rule.priority,
                              ctx.chunks[attr_c].head_index);
  m.subject_span = ctx.chunks[attr_c].token_indices;
  return {m};
}

std::vector<PatternMatch> bind_class_compound(const Ctx& ctx,
                                              const PatternRule& rule) {
  for (const Token& t : ctx.s.tokens)
    if (t.pos == "VERB") return {};
  if (ctx.chunks.empty()) return {};
  if (ctx.copular) return {};
  int root_c = ctx.chunk_of_token(ctx.main);
  if (root_c < 0) root_c = 0;
  PatternMatch m = base_match(rule.id, rule.priority,
                              ctx.chunks[root_c].head_index);
  m.subject_span = ctx.chunks[root_c].token_indices;
  return {m};
}

std::vector<PatternMatch> bind_class_explicit(const Ctx& ctx,
                                              const PatternRule& rule) {
  const std::string kw = rule.params.count("chunk_contains_lemma")
                             ? rule.params.at("chunk_contains_lemma")
                             : "class";
  for (const NounPhrase& np : ctx.chunks) {
    int kw_pos = -1;
    for (std::size_t k = 0; k < np.token_indices.size(); ++k)
      if (ctx.tok(np.token_indices[k]).lemma == kw)
        kw_pos = static_cast<int>(k);
    if (kw_pos <= 0) continue;
    std::vector<int> before(np.token_indices.begin(),
                            np.token_indices.begin() + kw_pos);
    int head = span_head(ctx, before);
    if (head < 0) continue;
    PatternMatch m = base_match(rule.id, rule.priority, head);
    m.subject_span = before;
    return {m};
  }
  return {};
}

std::vector<PatternMatch> bind_class_quoted(const Ctx& ctx,
                                            const PatternRule& rule) {
  std::vector<std::string> triggers = {"named", "called"};
  if (rule.params.count("trigger_tokens")) {
    triggers.clear();
    std::string raw = rule.params.at("trigger_tokens");
    std::size_t start = 0;
    while (start <= raw.size()) {
      std::size_t comma = raw.find(',', start);
      if (comma == std::string::npos) comma = raw.size();
      if (comma > start) triggers.push_back(raw.substr(start, comma - start));
      start = comma + 1;
    }
  }
  for (int i = 0; i < ctx.ntok(); ++i) {
    const std::string lw = to_lower(ctx.tok(i).text);
    if (std::find(triggers.begin(), triggers.end(), lw) == triggers.end())
      continue;
    if (i + 2 >= ctx.ntok()) continue;
    const Token& q1 = ctx.tok(i + 1);
    const Token& word = ctx.tok(i + 2);
    if (q1.pos != "PUNCT" || (q1.text != "\"" && q1.text != "'")) continue;
    if (!word.is_noun() && word.pos != "ADJ") continue;
    PatternMatch m = base_match(rule.id, rule.priority, i + 2);
    m.literal_name = word.text;
    m.subject_span = {i + 2};
    return {m};
  }
  return {};
}

// Shared by the plain and the coordinated "to have" class patterns.
std::vector<PatternMatch> bind_class_have(const Ctx& ctx,
                                          const PatternRule& rule) {
  if (ctx.main < 0 || ctx.tok(ctx.main).pos != "VERB") return {};
  if (ctx.tok(ctx.main).lemma != "have") return {};
  int subj_c = ctx.chunk_with_head_dep("nsubj");
  if (subj_c < 0) return {};
  std::vector<BoundAttribute> attrs;
  for (int c : ctx.object_chunks()) {
    if (ctx.is_type_chunk(c)) continue;
    BoundAttribute a;
    a.word_tokens = ctx.chunks[c].token_indices;
    attrs.push_back(a);
  }
  if (attrs.empty()) return {};
  // bind "of type T" chunks to the attribute the preposition hangs off
  for (std::size_t c = 0; c < ctx.chunks.size(); ++c) {
    if (!ctx.is_type_chunk(c)) continue;
    int prep = ctx.tok(ctx.chunks[c].head_index).head;
    if (prep < 0 || prep >= ctx.ntok()) continue;
    int owner_tok = ctx.tok(prep).head;
    std::string type_word;
    for (int i : ctx.chunks[c].token_indices) {
      const Token& t = ctx.tok(i);
      if (t.pos == "DET" || t.lemma == "type") continue;
      type_word = t.text;
    }
    if (type_word.empty()) continue;
    auto it = canonical_types().find(to_lower(type_word));
    for (BoundAttribute& a : attrs) {
      int head = span_head(ctx, a.word_tokens);
      if (head == owner_tok) {
        if (it != canonical_types().end()) {
          a.type_name = it->second;
        } else {
          a.type_name = normalize_identifier(type_word,
                                             IdentifierKind::ClassName);
        }
      }
    }
  }
  if (rule.params.count("require_coordination")) {
    bool has_and = false;
    for (const Token& t : ctx.s.tokens)
      if (t.pos == "CCONJ" && to_lower(t.text) == "and") has_and = true;
    if (!has_and || attrs.size() < 2) return {};
  }
  PatternMatch m = base_match(rule.id, rule.priority,
                              ctx.chunks[subj_c].head_index);
  m.subject_span = ctx.chunks[subj_c].token_indices;
  m.attributes = attrs;
  m.verb_token = ctx.main;
  return {m};
}

// --- relationship binders --------------------------------------------------

int resolve_pseudo_head(const Ctx& ctx, int chunk, const PatternRule& rule) {
  static const std::unordered_set<std::string> defaults = {"number", "amount",
                                                           "lot"};
  const Token& h = ctx.tok(ctx.chunks[chunk].head_index);
  bool pseudo = defaults.count(h.lemma) > 0;
  if (!pseudo) return chunk;
  for (int i = 0; i < ctx.ntok(); ++i) {
    const Token& t = ctx.tok(i);
    if (t.pos == "ADP" && to_lower(t.text) == "of" &&
        t.head == ctx.chunks[chunk].head_index) {
      int real = ctx.pobj_chunk_of_prep(i);
      if (real >= 0) return real;
    }
  }
  return chunk;
}

std::vector<PatternMatch> bind_rel_have(const Ctx& ctx,
                                        const PatternRule& rule) {
  if (ctx.main < 0 || ctx.tok(ctx.main).pos != "VERB") return {};
  if (ctx.tok(ctx.main).lemma != "have") return {};
  int subj_c = ctx.chunk_with_head_dep("nsubj");
  int obj_c = ctx.chunk_with_head_dep("dobj");
  if (subj_c < 0 || obj_c < 0) return {};
  obj_c = resolve_pseudo_head(ctx, obj_c, rule);
  PatternMatch m = base_match(rule.id, rule.priority,
                              ctx.chunks[subj_c].head_index);
  m.subject_span = ctx.chunks[subj_c].token_indices;
  m.object_span = ctx.chunks[obj_c].token_indices;
  m.verb_token = ctx.main;
  m.mult_begin = ctx.main + 1;
  m.mult_end = ctx.chunks[obj_c].head_index;
  return {m};
}

std::vector<PatternMatch> bind_rel_passive(const Ctx& ctx,
                                           const PatternRule& rule) {
  if (!ctx.passive || ctx.main < 0 || ctx.tok(ctx.main).pos != "VERB")
    return {};
  int subj_c = ctx.chunk_with_head_dep("nsubjpass");
  if (subj_c < 0) return {};
  int prep = -1;
  bool via_agent = false;
  for (int i = 0; i < ctx.ntok(); ++i) {
    const Token& t = ctx.tok(i);
    if (t.pos != "ADP" || t.head != ctx.main) continue;
    if (t.dep == "agent") {
      prep = i;
      via_agent = true;
      break;
    }
    if (prep < 0) prep = i;
  }
  if (prep < 0) return {};
  int obj_c = ctx.pobj_chunk_of_prep(prep);
  if (obj_c < 0) return {};
  PatternMatch m = base_match(rule.id, rule.priority,
                              ctx.chunks[subj_c].head_index);
  m.subject_span = ctx.chunks[subj_c].token_indices;
  m.object_span = ctx.chunks[obj_c].token_indices;
  m.verb_token = ctx.main;
  if (!via_agent) m.prep_token = prep;
  m.mult_begin = prep + 1;
  m.mult_end = ctx.chunks[obj_c].head_index;
  return {m};
}

std::vector<PatternMatch> bind_rel_composed(const Ctx& ctx,
                                            const PatternRule& rule) {
  if (ctx.main < 0 || ctx.tok(ctx.main).pos != "VERB") return {};
  const std::string trigger = rule.params.count("participle")
                                  ? rule.params.at("participle")
                                  : "composed";
  if (to_lower(ctx.tok(ctx.main).text) != trigger) return {};
  int subj_c = ctx.chunk_with_head_dep("nsubjpass");
  if (subj_c < 0) subj_c = ctx.chunk_with_head_dep("nsubj");
  if (subj_c < 0) return {};
  int prep = -1;
  for (int i = 0; i < ctx.ntok(); ++i)
    if (ctx.tok(i).pos == "ADP" && to_lower(ctx.tok(i).text) == "of" &&
        ctx.tok(i).head == ctx.main)
      prep = i;
  if (prep < 0) return {};
  int obj_c = ctx.pobj_chunk_of_prep(prep);
  if (obj_c < 0) return {};
  PatternMatch m = base_match(rule.id, rule.priority,
                              ctx.chunks[subj_c].head_index);
  m.subject_span = ctx.chunks[subj_c].token_indices;
  m.object_span = ctx.chunks[obj_c].token_indices;
  m.verb_token = ctx.main;
  m.literal_name = rule.params.count("name") ? rule.params.at("name")
                                             : "composedOf";
  m.mult_begin = prep + 1;
  m.mult_end = ctx.chunks[obj_c].head_index;
  return {m};
}

std::vector<PatternMatch> bind_rel_active(const Ctx& ctx,
                                          const PatternRule& rule) {
  if (ctx.main < 0 || ctx.tok(ctx.main).pos != "VERB" || ctx.passive)
    return {};
  const std::string& lemma = ctx.tok(ctx.main).lemma;
  if (lemma == "have" || lemma == "be") return {};
  int subj_c = ctx.chunk_with_head_dep("nsubj");
  if (subj_c < 0) return {};
  int obj_c = ctx.chunk_with_head_dep("dobj");
  int prep = -1;
  if (obj_c < 0) {
    for (int i = 0; i < ctx.ntok(); ++i) {
      const Token& t = ctx.tok(i);
      if (t.pos == "ADP" && t.head == ctx.main) {
        int c = ctx.pobj_chunk_of_prep(i);
        if (c >= 0) {
          prep = i;
          obj_c = c;
          break;
        }
      }
    }
  } else {
    obj_c = resolve_pseudo_head(ctx, obj_c, rule);
  }
  if (obj_c < 0) return {};
  PatternMatch m = base_match(rule.id, rule.priority,
                              ctx.chunks[subj_c].head_index);
  m.subject_span = ctx.chunks[subj_c].token_indices;
  m.object_span = ctx.chunks[obj_c].token_indices;
  m.verb_token = ctx.main;
  m.prep_token = prep;
  m.mult_begin = (prep >= 0 ? prep : ctx.main) + 1;
  m.mult_end = ctx.chunks[obj_c].head_index;
  return {m};
}

std::vector<PatternMatch> bind_rel_with(const Ctx& ctx,
                                        const PatternRule& rule) {
  const std::string prep_word =
      rule.params.count("prep") ? rule.params.at("prep") : "with";
  std::vector<PatternMatch> out;
  for (int i = 0; i < ctx.ntok(); ++i) {
    const Token& t = ctx.tok(i);
    if (t.pos != "ADP" || to_lower(t.text) != prep_word) continue;
    if (t.head < 0 || !ctx.tok(t.head).is_noun()) continue;
    int subj_c = ctx.chunk_headed_by(t.head);
    int obj_c = ctx.pobj_chunk_of_prep(i);
    if (subj_c < 0 || obj_c < 0) continue;
    PatternMatch m = base_match(rule.id, rule.priority,
                                ctx.chunks[subj_c].head_index);
    m.subject_span = ctx.chunks[subj_c].token_indices;
    m.object_span = ctx.chunks[obj_c].token_indices;
    m.prep_token = i;
    m.mult_begin = i + 1;
    m.mult_end = ctx.chunks[obj_c].head_index;
    out.push_back(m);
  }
  return out;
}

std::vector<PatternMatch> bind_rel_role(const Ctx& ctx,
                                        const PatternRule& rule) {
  if (!ctx.copular) return {};
  int subj_c = ctx.chunk_with_head_dep("nsubj");
  int role_c = ctx.chunk_with_head_dep("attr");
  if (subj_c < 0 || role_c < 0) return {};
  int role_head = ctx.chunks[role_c].head_index;
  int prep = -1;
  for (int i = 0; i < ctx.ntok(); ++i)
    if (ctx.tok(i).pos == "ADP" && to_lower(ctx.tok(i).text) == "of" &&
        ctx.tok(i).head == role_head)
      prep = i;
  if (prep < 0) return {};
  int obj_c = ctx.pobj_chunk_of_prep(prep);
  if (obj_c < 0) return {};
  PatternMatch m = base_match(rule.id, rule.priority,
                              ctx.chunks[subj_c].head_index);
  m.subject_span = ctx.chunks[subj_c].token_indices;
  m.object_span = ctx.chunks[obj_c].token_indices;
  m.role_token = role_head;
  m.mult_begin = prep + 1;
  m.mult_end = ctx.chunks[obj_c].head_index;
  return {m};
}

using Binder = std::vector<PatternMatch> (*)(const Ctx&, const PatternRule&);

const std::unordered_map<std::string, Binder>& binders() {
  static const std::unordered_map<std::string, Binder> m = {
      {"class_copula", bind_class_copula},
      {"class_there", bind_class_there},
      {"class_compound", bind_class_compound},
      {"class_explicit", bind_class_explicit},
      {"class_quoted", bind_class_quoted},
      {"class_have", bind_class_have},
      {"rel_have", bind_rel_have},
      {"rel_passive", bind_rel_passive},
      {"rel_composed", bind_rel_composed},
      {"rel_active", bind_rel_active},
      {"rel_with", bind_rel_with},
      {"rel_role", bind_rel_role},
  };
  return m;
}

}  // namespace

std::string pattern_id_name(PatternId id) {
  for (const auto& [pid, name] : id_names())
    if (pid == id) return name;
  return "UNKNOWN";
}

std::optional<PatternId> pattern_id_from_name(const std::string& name) {
  for (const auto& [pid, n] : id_names())
    if (n == name) return pid;
  return std::nullopt;
}

bool is_class_pattern(PatternId id) {
  return pattern_id_name(id).rfind("CP", 0) == 0;
}

std::string label_name(SentenceLabel label) {
  return label == SentenceLabel::Class ? "class" : "relationship";
}

std::optional<SentenceLabel> label_from_name(const std::string& name) {
  std::string lw = to_lower(name);
  if (lw == "class") return SentenceLabel::Class;
  if (lw == "relationship") return SentenceLabel::Relationship;
  return std::nullopt;
}

std::map<std::string, std::vector<int>> PatternMatch::spans() const {
  std::map<std::string, std::vector<int>> out;
  if (!subject_span.empty()) out["subject"] = subject_span;
  if (!object_span.empty()) out["object"] = object_span;
  for (std::size_t i = 0; i < attributes.size(); ++i)
    out["attribute" + std::to_string(i)] = attributes[i].word_tokens;
  if (verb_token >= 0) out["verb"] = {verb_token};
  if (prep_token >= 0) out["prep"] = {prep_token};
  if (role_token >= 0) out["role"] = {role_token};
  if (mult_begin >= 0 && mult_end > mult_begin) {
    std::vector<int> span;
    for (int i = mult_begin; i < mult_end; ++i) span.push_back(i);
    out["multiplicity"] = span;
  }
  return out;
}

PatternConfig PatternConfig::builtin() {
  PatternConfig cfg;
  auto add = [&cfg](PatternId id, const std::string& binder, int priority,
                    std::map<std::string, std::string> params = {}) {
    PatternRule r;
    r.id = id;
    r.binder = binder;
    r.priority = priority;
    r.params = std::move(params);
    cfg.rules.push_back(std::move(r));
  };
  add(PatternId::CP6_CLASS_NAMED, "class_quoted", 80,
      {{"trigger_tokens", "named,called"}});
  add(PatternId::CP4_COMPOUND_EXPLICIT, "class_explicit", 70,
      {{"chunk_contains_lemma", "class"}});
  add(PatternId::CP7_OF_PACKAGE, "class_copula", 60,
      {{"attr_head_lemma", "part"}, {"require_lemma", "package"}});
  add(PatternId::CP1_COPULA, "class_copula", 50,
      {{"attr_head_lemma", "class"}});
  add(PatternId::CP2_THERE_IS, "class_there", 40);
  add(PatternId::CP8_AND_CLAUSES, "class_have", 30,
      {{"require_coordination", "true"}});
  add(PatternId::CP5_TO_HAVE, "class_have", 20);
  add(PatternId::CP3_COMPOUND_NOUN, "class_compound", 10);
  add(PatternId::RP3_COMPOSED, "rel_composed", 60,
      {{"participle", "composed"}, {"name", "composedOf"}});
  add(PatternId::RP1_TO_HAVE, "rel_have", 50);
  add(PatternId::RP5_NOUN_WITH, "rel_with", 40, {{"prep", "with"}});
  add(PatternId::RP6_COPULA, "rel_role", 30);
  add(PatternId::RP2_PASSIVE, "rel_passive", 20);
  add(PatternId::RP4_ACTIVE, "rel_active", 10);
  return cfg;
}

PatternConfig PatternConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pattern config: " + path);
  nlohmann::json j;
  in >> j;
  PatternConfig cfg;
  for (const auto& rj : j.at("patterns")) {
    PatternRule r;
    auto id = pattern_id_from_name(rj.at("id").get<std::string>());
    if (!id)
      throw std::runtime_error("unknown pattern id in config: " +
                               rj.at("id").get<std::string>());
    r.id = *id;
    r.binder = rj.at("binder").get<std::string>();
    if (!binders().count(r.binder))
      throw std::runtime_error("unknown binder in config: " + r.binder);
    r.priority = rj.at("priority").get<int>();
    r.enabled = rj.value("enabled", true);
    if (rj.contains("params"))
      for (const auto& [k, v] : rj.at("params").items())
        r.params[k] = v.get<std::string>();
    cfg.rules.push_back(std::move(r));
  }
  return cfg;
}

void PatternConfig::save(const std::string& path) const {
  nlohmann::ordered_json j;
  j["patterns"] = nlohmann::ordered_json::array();
  for (const PatternRule& r : rules) {
    nlohmann::ordered_json rj;
    rj["id"] = pattern_id_name(r.id);
    rj["binder"] = r.binder;
    rj["priority"] = r.priority;
    rj["enabled"] = r.enabled;
    if (!r.params.empty()) {
      nlohmann::ordered_json pj;
      for (const auto& [k, v] : r.params) pj[k] = v;
      rj["params"] = pj;
    }
    j["patterns"].push_back(rj);
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write pattern config: " + path);
  out << j.dump(2) << "\n";
}

std::optional<Multiplicity> extract_multiplicity(const ParsedSentence& parsed,
                                                 int begin, int end,
                                                 int head_token) {
  const int n = static_cast<int>(parsed.tokens.size());
  begin = std::max(begin, 0);
  end = std::min(end, n);
  std::vector<std::string> words;
  for (int i = begin; i < end; ++i)
    words.push_back(to_lower(parsed.tokens[i].text));

  auto has_seq = [&words](const std::vector<std::string>& seq) {
    if (seq.size() > words.size()) return false;
    for (std::size_t i = 0; i + seq.size() <= words.size(); ++i) {
      bool ok = true;
      for (std::size_t k = 0; k < seq.size(); ++k)
        if (words[i + k] != seq[k]) ok = false;
      if (ok) return true;
    }
    return false;
  };
  auto cardinal_at = [&words](std::size_t i) -> int {
    auto it = cardinal_words().find(words[i]);
    if (it != cardinal_words().end()) return it->second;
    if (!words[i].empty() &&
        std::all_of(words[i].begin(), words[i].end(),
                    [](unsigned char c) { return std::isdigit(c); }))
      return std::stoi(words[i]);
    return -1;
  };

  if (has_seq({"one", "and", "only", "one"}) || has_seq({"only", "one"}) ||
      has_seq({"exactly", "one"}))
    return Multiplicity{1, 1};
  for (std::size_t i = 0; i + 2 < words.size() + 1 && i + 1 < words.size(); ++i) {
    if (words[i] == "least" && i > 0 && words[i - 1] == "at") {
      int nvl = cardinal_at(i + 1);
      if (nvl >= 0) return Multiplicity{nvl, Multiplicity::kUnbounded};
    }
    if (words[i] == "most" && i > 0 && words[i - 1] == "at") {
      int nvl = cardinal_at(i + 1);
      if (nvl >= 0) return Multiplicity{0, nvl};
    }
  }
  if (has_seq({"any", "number", "of"}))
    return Multiplicity{0, Multiplicity::kUnbounded};
  for (const std::string& w : words)
    if (w == "multiple" || w == "many" || w == "several")
      return Multiplicity{0, Multiplicity::kUnbounded};
  for (std::size_t i = 0; i < words.size(); ++i) {
    int nvl = cardinal_at(i);
    if (nvl >= 0) return Multiplicity{nvl, nvl};
  }
  if (head_token >= 0 && head_token < n) {
    const Token& h = parsed.tokens[head_token];
    if (h.is_noun() && is_plural_noun(to_lower(h.text)))
      return Multiplicity{0, Multiplicity::kUnbounded};
  }
  return std::nullopt;
}

PatternEngine::PatternEngine() : config_(PatternConfig::builtin()) {}
PatternEngine::PatternEngine(PatternConfig config)
    : config_(std::move(config)) {}

std::vector<PatternMatch> PatternEngine::match_patterns(
    const ParsedSentence& parsed, SentenceLabel label) const {
  std::vector<PatternMatch> out;
  if (parsed.tokens.empty()) return out;
  Ctx ctx(parsed);
  const bool want_class = label == SentenceLabel::Class;
  for (const PatternRule& rule : config_.rules) {
    if (!rule.enabled) continue;
    if (is_class_pattern(rule.id) != want_class) continue;
    auto it = binders().find(rule.binder);
    if (it == binders().end()) continue;
    for (PatternMatch& m : it->second(ctx, rule)) out.push_back(std::move(m));
  }
  return out;
}

PatternMatch PatternEngine::select_pattern(
    const std::vector<PatternMatch>& matches) const {
  if (matches.empty())
    throw std::invalid_argument("select_pattern: no matches to choose from");
  std::vector<PatternMatch> sorted = matches;
  std::sort(sorted.begin(), sorted.end(),
            [](const PatternMatch& a, const PatternMatch& b) {
              if (a.priority != b.priority) return a.priority > b.priority;
              if (a.subject_token != b.subject_token)
                return a.subject_token < b.subject_token;
              return static_cast<int>(a.pattern) < static_cast<int>(b.pattern);
            });
  return sorted.front();
}

Fragment PatternEngine::generate_class_fragment(const ParsedSentence& parsed,
                                                const PatternMatch& match) const {
  Ctx ctx(parsed);
  UmlClass cls;
  if (!match.literal_name.empty()) {
    cls.name = match.literal_name;
  } else {
    std::vector<std::string> words = naming_words(ctx, match.subject_span);
    if (words.empty())
      throw std::runtime_error("unresolvable class subject in sentence: " +
                               parsed.source_text);
    cls.name = normalize_identifier(words, IdentifierKind::ClassName);
  }
  for (const BoundAttribute& a : match.attributes) {
    std::vector<std::string> words = naming_words(ctx, a.word_tokens);
    if (words.empty()) continue;
    UmlAttribute attr;
    attr.name = normalize_identifier(words, IdentifierKind::AttributeName);
    if (!a.type_name.empty()) attr.type_name = a.type_name;
    bool dup = false;
    for (const UmlAttribute& existing : cls.attributes)
      if (same_identifier(existing.name, attr.name,
                          IdentifierKind::AttributeName))
        dup = true;
    if (!dup) cls.attributes.push_back(attr);
  }
  if (!match.package_name.empty()) cls.package = match.package_name;
  return make_class_fragment(std::move(cls));
}

Fragment PatternEngine::generate_relationship_fragment(
    const ParsedSentence& parsed, const PatternMatch& match) const {
  Ctx ctx(parsed);
  int subj_head = span_head(ctx, match.subject_span);
  int obj_head = span_head(ctx, match.object_span);
  if (subj_head < 0 || obj_head < 0)
    throw std::runtime_error("missing class noun in sentence: " +
                             parsed.source_text);
  UmlClass source;
  source.name = normalize_identifier(parsed.tokens[subj_head].text,
                                     IdentifierKind::ClassName);
  UmlClass target;
  target.name = normalize_identifier(parsed.tokens[obj_head].text,
                                     IdentifierKind::ClassName);

  UmlRelationship rel;
  rel.source = source.name;
  rel.target = target.name;
  if (!match.literal_name.empty()) {
    rel.name = match.literal_name;
  } else {
    std::vector<std::string> words;
    switch (match.pattern) {
      case PatternId::RP1_TO_HAVE:
      case PatternId::RP5_NOUN_WITH:
        words.push_back(parsed.tokens[obj_head].text);
        break;
      case PatternId::RP2_PASSIVE:
        words.push_back(to_lower(parsed.tokens[match.verb_token].text));
        if (match.prep_token >= 0)
          words.push_back(to_lower(parsed.tokens[match.prep_token].text));
        break;
      case PatternId::RP4_ACTIVE:
        words.push_back(parsed.tokens[match.verb_token].lemma);
        if (match.prep_token >= 0)
          words.push_back(to_lower(parsed.tokens[match.prep_token].text));
        break;
      case PatternId::RP6_COPULA:
        words.push_back(parsed.tokens[match.role_token].text);
        break;
      default:
        words.push_back(parsed.tokens[obj_head].text);
        break;
    }
    rel.name = normalize_identifier(words, IdentifierKind::RelationshipName);
  }
  rel.multiplicity =
      extract_multiplicity(parsed, match.mult_begin, match.mult_end, obj_head);
  return make_relationship_fragment(std::move(source), std::move(target),
                                    std::move(rel));
}

Generation PatternEngine::generate_fragment(const ParsedSentence& parsed,
                                            SentenceLabel label) const {
  Generation g;
  if (parsed.tokens.empty()) {
    g.diagnostic = "empty sentence, skipped";
    return g;
  }
  auto try_family = [this, &parsed](SentenceLabel fam,
                                    Generation& out) -> bool {
    std::vector<PatternMatch> matches = match_patterns(parsed, fam);
    if (matches.empty()) return false;
    PatternMatch m = select_pattern(matches);
    try {
      out.fragment = fam == SentenceLabel::Class
                         ? generate_class_fragment(parsed, m)
                         : generate_relationship_fragment(parsed, m);
      out.pattern = m.pattern;
      return true;
    } catch (const std::exception&) {
      return false;
    }
  };

  if (try_family(label, g)) return g;
  if (label == SentenceLabel::Relationship) {
    if (try_family(SentenceLabel::Class, g)) {
      g.fallback = true;
      g.diagnostic =
          "no relationship pattern matched; class pattern fallback: " +
          parsed.source_text;
      return g;
    }
  }
  // bare class from the first noun phrase
  Ctx ctx(parsed);
  for (const NounPhrase& np : ctx.chunks) {
    std::vector<std::string> words = naming_words(ctx, np.token_indices);
    if (words.empty()) continue;
    UmlClass cls;
    cls.name = normalize_identifier(words, IdentifierKind::ClassName);
    g.fragment = make_class_fragment(std::move(cls));
    g.fallback = true;
    g.diagnostic = "no pattern matched; bare class from first noun phrase: " +
                   parsed.source_text;
    return g;
  }
  g.diagnostic = "no extractable noun, skipped: " + parsed.source_text;
  return g;
}

Generation PatternEngine::generate_fragment(const std::string& sentence,
                                            SentenceLabel label,
                                            const ParserBackend& parser) const {
  if (sentence.empty()) {
    Generation g;
    g.diagnostic = "empty sentence, skipped";
    return g;
  }
  return generate_fragment(parser.parse(sentence), label);
}

}  // namespace nl2uml
