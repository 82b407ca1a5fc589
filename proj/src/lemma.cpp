#include "nl2uml/lemma.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace nl2uml {

namespace {

const std::unordered_map<std::string, std::string>& irregular_plurals() {
  static const std::unordered_map<std::string, std::string> m = {
      {"children", "child"},   {"people", "person"},   {"men", "man"},
      {"women", "woman"},      {"feet", "foot"},       {"teeth", "tooth"},
      {"geese", "goose"},      {"mice", "mouse"},      {"analyses", "analysis"},
      {"criteria", "criterion"}, {"indices", "index"}, {"matrices", "matrix"},
      {"vertices", "vertex"},  {"axes", "axis"},       {"statuses", "status"},
      {"buses", "bus"},        {"viruses", "virus"},   {"quizzes", "quiz"},
      {"leaves", "leaf"},      {"shelves", "shelf"},   {"lives", "life"},
      {"wolves", "wolf"},      {"knives", "knife"},    {"halves", "half"},
      {"shoes", "shoe"},       {"canoes", "canoe"},    {"heroes", "hero"},
      {"tomatoes", "tomato"},  {"echoes", "echo"},     {"staves", "staff"},
      {"aliases", "alias"},    {"atlases", "atlas"},   {"syllabi", "syllabus"},
      {"curricula", "curriculum"},
  };
  return m;
}

// Mass nouns and s-final singulars that must never be stripped.
const std::unordered_set<std::string>& invariant_nouns() {
  static const std::unordered_set<std::string> s = {
      "news",     "series",   "species",  "information", "equipment",
      "software", "money",    "staff",    "lens",        "data",
      "media",    "physics",  "mathematics", "analysis", "basis",
      "status",   "campus",   "bonus",    "alias",       "atlas",
      "bias",     "canvas",   "gas",      "corpus",      "axis",
      "chassis",  "crisis",   "thesis",   "diagnosis",   "hypothesis",
      "access",   "address",  "process",  "class",       "business",
      "progress", "express",
  };
  return s;
}

const std::unordered_map<std::string, std::string>& irregular_verbs() {
  static const std::unordered_map<std::string, std::string> m = {
      {"is", "be"},        {"are", "be"},       {"am", "be"},
      {"was", "be"},       {"were", "be"},      {"been", "be"},
      {"being", "be"},     {"has", "have"},     {"had", "have"},
      {"having", "have"},  {"does", "do"},      {"did", "do"},
      {"done", "do"},      {"goes", "go"},      {"went", "go"},
      {"gone", "go"},      {"made", "make"},    {"taught", "teach"},
      {"wrote", "write"},  {"written", "write"}, {"sent", "send"},
      {"held", "hold"},    {"kept", "keep"},    {"built", "build"},
      {"bought", "buy"},   {"sold", "sell"},    {"paid", "pay"},
      {"said", "say"},     {"found", "find"},   {"gave", "give"},
      {"given", "give"},   {"took", "take"},    {"taken", "take"},
      {"got", "get"},      {"ran", "run"},      {"came", "come"},
      {"saw", "see"},      {"seen", "see"},     {"knew", "know"},
      {"known", "know"},   {"drew", "draw"},    {"drawn", "draw"},
      {"met", "meet"},     {"left", "leave"},   {"lost", "lose"},
      {"driven", "drive"}, {"drove", "drive"},  {"flew", "fly"},
      {"flown", "fly"},    {"led", "lead"},     {"read", "read"},
      {"put", "put"},      {"set", "set"},      {"let", "let"},
  };
  return m;
}

// Verbs whose base form ends in "e"; the generic -ed/-es stripping rules
// cannot recover the trailing "e" on their own.
const std::unordered_map<std::string, std::string>& e_final_verbs() {
  static const std::unordered_map<std::string, std::string> m = {
      {"composed", "compose"},     {"named", "name"},
      {"stored", "store"},         {"created", "create"},
      {"managed", "manage"},       {"scheduled", "schedule"},
      {"supervised", "supervise"}, {"received", "receive"},
      {"issued", "issue"},         {"placed", "place"},
      {"located", "locate"},       {"divided", "divide"},
      {"included", "include"},     {"used", "use"},
      {"described", "describe"},   {"required", "require"},
      {"defined", "define"},       {"measured", "measure"},
      {"associated", "associate"}, {"related", "relate"},
      {"served", "serve"},         {"prepared", "prepare"},
      {"insured", "insure"},       {"reserved", "reserve"},
      {"graded", "grade"},         {"examined", "examine"},
      {"discharged", "discharge"}, {"prescribed", "prescribe"},
      {"operated", "operate"},     {"organized", "organize"},
      {"updated", "update"},       {"approved", "approve"},
      {"owed", "owe"},             {"shared", "share"},
      {"hired", "hire"},           {"fired", "fire"},
      {"invited", "invite"},       {"noted", "note"},
      {"rated", "rate"},           {"cited", "cite"},
      {"handled", "handle"},       {"assembled", "assemble"},
      {"compiled", "compile"},     {"generated", "generate"},
      {"validated", "validate"},   {"allocated", "allocate"},
      {"announced", "announce"},   {"produced", "produce"},
      {"reduced", "reduce"},       {"introduced", "introduce"},
      {"traced", "trace"},         {"priced", "price"},
      {"merged", "merge"},         {"charged", "charge"},
      {"judged", "judge"},         {"arranged", "arrange"},
      {"changed", "change"},       {"exchanged", "exchange"},
      {"packaged", "package"},     {"staged", "stage"},
      {"raised", "raise"},         {"closed", "close"},
      {"caused", "cause"},         {"housed", "house"},
      {"supposed", "suppose"},     {"proposed", "propose"},
      {"exposed", "expose"},       {"archived", "archive"},
      {"moved", "move"},           {"proved", "prove"},
      {"solved", "solve"},         {"involved", "involve"},
      {"resolved", "resolve"},     {"saved", "save"},
      {"removed", "remove"},       {"improved", "improve"},
      {"observed", "observe"},     {"preserved", "preserve"},
      {"deserved", "deserve"},     {"loved", "love"},
      {"lived", "live"},           {"arrived", "arrive"},
      {"derived", "derive"},       {"retired", "retire"},
      {"acquired", "acquire"},     {"admired", "admire"},
      {"captured", "capture"},     {"featured", "feature"},
      {"secured", "secure"},       {"configured", "configure"},
      {"structured", "structure"}, {"cured", "cure"},
      {"declared", "declare"},     {"compared", "compare"},
      {"repaired", "repair"},      {"wired", "wire"},
      {"typed", "type"},           {"hoped", "hope"},
      {"shaped", "shape"},         {"escaped", "escape"},
      {"dated", "date"},           {"gated", "gate"},
      {"voted", "vote"},           {"promoted", "promote"},
      {"devoted", "devote"},       {"invoked", "invoke"},
      {"liked", "like"},           {"biked", "bike"},
      {"smiled", "smile"},         {"filed", "file"},
      {"piled", "pile"},           {"styled", "style"},
      {"timed", "time"},           {"framed", "frame"},
      {"blamed", "blame"},         {"renamed", "rename"},
      {"assumed", "assume"},       {"consumed", "consume"},
      {"resumed", "resume"},       {"fined", "fine"},
      {"combined", "combine"},     {"declined", "decline"},
      {"designed", "design"},      {"joined", "join"},
      {"signed", "sign"},          {"assigned", "assign"},
      {"loaned", "loan"},          {"phoned", "phone"},
      {"cloned", "clone"},         {"zoned", "zone"},
      {"tuned", "tune"},           {"outlined", "outline"},
      {"determined", "determine"}, {"examined", "examine"},
      {"imagined", "imagine"},     {"machined", "machine"},
      {"refined", "refine"},       {"wined", "wine"},
      {"scored", "score"},         {"explored", "explore"},
      {"restored", "restore"},     {"ignored", "ignore"},
      {"colored", "color"},        {"monitored", "monitor"},
      {"favored", "favor"},        {"honored", "honor"},
      {"labored", "labor"},        {"tailored", "tailor"},
      {"authored", "author"},      {"sponsored", "sponsor"},
      {"anchored", "anchor"},      {"catered", "cater"},
      {"entered", "enter"},        {"registered", "register"},
      {"delivered", "deliver"},    {"covered", "cover"},
      {"discovered", "discover"},  {"recovered", "recover"},
      {"offered", "offer"},        {"ordered", "order"},
      {"bordered", "border"},      {"rendered", "render"},
      {"considered", "consider"},  {"numbered", "number"},
      {"remembered", "remember"},  {"gathered", "gather"},
      {"weathered", "weather"},    {"answered", "answer"},
      {"powered", "power"},        {"lowered", "lower"},
      {"showered", "shower"},      {"triggered", "trigger"},
      {"filtered", "filter"},      {"mastered", "master"},
      {"fostered", "foster"},      {"clustered", "cluster"},
      {"featured", "feature"},     {"treasured", "treasure"},
  };
  return m;
}

bool ends_with(const std::string& s, const char* suffix) {
  std::string suf(suffix);
  return s.size() >= suf.size() &&
         s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

}  // namespace

std::string to_lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string lemma_noun(const std::string& word) {
  if (word.size() < 3) return word;
  auto irr = irregular_plurals().find(word);
  if (irr != irregular_plurals().end()) return irr->second;
  if (invariant_nouns().count(word)) return word;
  if (word.back() != 's') return word;
  // -ies -> -y ("studies" -> "study"), but "ties" -> "tie".
  if (ends_with(word, "ies")) {
    if (word.size() > 4) return word.substr(0, word.size() - 3) + "y";
    return word.substr(0, word.size() - 1);
  }
  // Sibilant plurals: -xes -ches -shes -sses -zes -> strip "es".
  if (ends_with(word, "xes") || ends_with(word, "ches") ||
      ends_with(word, "shes") || ends_with(word, "sses") ||
      ends_with(word, "zes")) {
    return word.substr(0, word.size() - 2);
  }
  if (ends_with(word, "ss") || ends_with(word, "us") || ends_with(word, "is")) {
    return word;
  }
  return word.substr(0, word.size() - 1);
}

std::string lemma_verb(const std::string& word) {
  if (word.size() < 3) return word;
  auto irr = irregular_verbs().find(word);
  if (irr != irregular_verbs().end()) return irr->second;
  auto ev = e_final_verbs().find(word);
  if (ev != e_final_verbs().end()) return ev->second;
  if (ends_with(word, "ies") && word.size() > 4) {
    return word.substr(0, word.size() - 3) + "y";
  }
  if (ends_with(word, "xes") || ends_with(word, "ches") ||
      ends_with(word, "shes") || ends_with(word, "sses") ||
      ends_with(word, "zes") || ends_with(word, "oes")) {
    return word.substr(0, word.size() - 2);
  }
  if (word.back() == 's' && !ends_with(word, "ss") && !ends_with(word, "us") &&
      !ends_with(word, "is")) {
    return word.substr(0, word.size() - 1);
  }
  if (ends_with(word, "ied") && word.size() > 4) {
    return word.substr(0, word.size() - 3) + "y";
  }
  if (ends_with(word, "ed") && word.size() > 4) {
    std::string stem = word.substr(0, word.size() - 2);
    size_t n = stem.size();
    if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
        stem[n - 1] != 'l' && stem[n - 1] != 's') {
      return stem.substr(0, n - 1);  // "committed" -> "commit"
    }
    return stem;
  }
  if (ends_with(word, "ing") && word.size() > 5) {
    std::string stem = word.substr(0, word.size() - 3);
    size_t n = stem.size();
    if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
        stem[n - 1] != 'l' && stem[n - 1] != 's') {
      return stem.substr(0, n - 1);
    }
    return stem;
  }
  return word;
}

std::string pluralize_noun(const std::string& word) {
  if (word.empty()) return word;
  for (const auto& [plural, singular] : irregular_plurals()) {
    if (singular == word) return plural;
  }
  if (invariant_nouns().count(word)) return word;
  if (ends_with(word, "y") && word.size() > 1 && !is_vowel(word[word.size() - 2])) {
    return word.substr(0, word.size() - 1) + "ies";
  }
  if (ends_with(word, "s") || ends_with(word, "x") || ends_with(word, "z") ||
      ends_with(word, "ch") || ends_with(word, "sh")) {
    return word + "es";
  }
  return word + "s";
}

bool is_plural_noun(const std::string& word) {
  std::string lower = to_lower(word);
  if (irregular_plurals().count(lower)) return true;
  return lemma_noun(lower) != lower;
}

}  // namespace nl2uml
