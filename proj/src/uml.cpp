#include "nl2uml/uml.hpp"

#include <cctype>
#include <sstream>
#include <unordered_set>

#include "nl2uml/lemma.hpp"

namespace nl2uml {

namespace {

std::vector<std::string> split_words(const std::string& phrase) {
  std::vector<std::string> words;
  std::string cur;
  for (char c : phrase) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) words.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) words.push_back(cur);
  return words;
}

std::string strip_non_alnum(const std::string& token) {
  std::string out;
  for (char c : token) {
    if (std::isalnum(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

bool has_alpha(const std::string& s) {
  for (char c : s) {
    if (std::isalpha(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

}  // namespace

const UmlAttribute* UmlClass::find_attribute(const std::string& attr_name) const {
  for (const auto& a : attributes) {
    if (same_identifier(a.name, attr_name, IdentifierKind::AttributeName)) return &a;
  }
  return nullptr;
}

std::string Multiplicity::str() const {
  std::string up = unbounded() ? "*" : std::to_string(upper);
  return std::to_string(lower) + ".." + up;
}

const UmlClass* UmlDiagram::find_class(const std::string& class_name) const {
  for (const auto& c : classes) {
    if (same_identifier(c.name, class_name, IdentifierKind::ClassName)) return &c;
  }
  return nullptr;
}

UmlClass* UmlDiagram::find_class(const std::string& class_name) {
  for (auto& c : classes) {
    if (same_identifier(c.name, class_name, IdentifierKind::ClassName)) return &c;
  }
  return nullptr;
}

Fragment make_class_fragment(UmlClass cls) {
  Fragment f;
  f.kind = FragmentKind::Class;
  f.payload.classes.push_back(std::move(cls));
  validate_fragment(f);
  return f;
}

Fragment make_relationship_fragment(UmlClass source, UmlClass target,
                                    UmlRelationship rel) {
  Fragment f;
  f.kind = FragmentKind::Relationship;
  f.payload.classes.push_back(std::move(source));
  if (!same_identifier(f.payload.classes[0].name, target.name,
                       IdentifierKind::ClassName)) {
    f.payload.classes.push_back(std::move(target));
  }
  f.payload.relationships.push_back(std::move(rel));
  validate_fragment(f);
  return f;
}

std::string normalize_identifier(const std::vector<std::string>& phrase,
                                 IdentifierKind kind) {
  std::vector<std::pair<std::string, std::string>> kept;  // (original, lemma)
  for (const auto& raw : phrase) {
    std::string token = strip_non_alnum(raw);
    if (token.empty() || !has_alpha(token)) continue;
    std::string lower = to_lower(token);
    bool mixed_case = false;
    for (std::size_t i = 1; i < token.size(); ++i)
      if (std::isupper(static_cast<unsigned char>(token[i]))) mixed_case = true;
    // Tokens with interior capitals are treated as proper names and left
    // alone; otherwise keep the original casing when lemmatization is a
    // no-op, so re-normalization is stable.
    std::string lemma = mixed_case ? lower : lemma_noun(lower);
    kept.emplace_back(mixed_case || lemma == lower ? token : lemma, lemma);
  }
  if (kept.empty()) {
    throw std::invalid_argument("cannot normalize identifier: no alphabetic token in phrase");
  }
  std::string out;
  for (size_t i = 0; i < kept.size(); ++i) {
    std::string word = kept[i].first;
    if (i == 0) {
      if (kind == IdentifierKind::ClassName) {
        word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
      } else {
        word[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(word[0])));
      }
    } else {
      word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
    }
    out += word;
  }
  return out;
}

std::string normalize_identifier(const std::string& phrase, IdentifierKind kind) {
  return normalize_identifier(split_words(phrase), kind);
}

bool same_identifier(const std::string& a, const std::string& b,
                     IdentifierKind kind) {
  if (a.empty() || b.empty()) return a == b;
  return to_lower(normalize_identifier(a, kind)) ==
         to_lower(normalize_identifier(b, kind));
}

bool relationship_equals(const UmlRelationship& r1, const UmlRelationship& r2) {
  return same_identifier(r1.source, r2.source, IdentifierKind::ClassName) &&
         same_identifier(r1.target, r2.target, IdentifierKind::ClassName) &&
         same_identifier(r1.name, r2.name, IdentifierKind::RelationshipName);
}

std::optional<std::string> diagram_invariant_violation(const UmlDiagram& d) {
  std::unordered_set<std::string> class_names;
  for (const auto& c : d.classes) {
    if (c.name.empty()) return "class with empty name";
    if (c.name.find(' ') != std::string::npos) {
      return "class name contains whitespace: '" + c.name + "'";
    }
    std::string key = to_lower(normalize_identifier(c.name, IdentifierKind::ClassName));
    if (!class_names.insert(key).second) {
      return "duplicate class name: '" + c.name + "'";
    }
    std::unordered_set<std::string> attr_names;
    for (const auto& a : c.attributes) {
      if (a.name.empty()) return "attribute with empty name in class '" + c.name + "'";
      if (a.name.find(' ') != std::string::npos) {
        return "attribute name contains whitespace: '" + a.name + "'";
      }
      if (a.type_name && a.type_name->empty()) {
        return "empty attribute type in class '" + c.name + "'";
      }
      std::string akey = to_lower(normalize_identifier(a.name, IdentifierKind::AttributeName));
      if (!attr_names.insert(akey).second) {
        return "duplicate attribute '" + a.name + "' in class '" + c.name + "'";
      }
    }
  }
  for (size_t i = 0; i < d.relationships.size(); ++i) {
    const auto& r = d.relationships[i];
    if (r.source.empty() || r.target.empty()) return "relationship with empty endpoint";
    if (!d.find_class(r.source)) {
      return "relationship source '" + r.source + "' is not a class of the diagram";
    }
    if (!d.find_class(r.target)) {
      return "relationship target '" + r.target + "' is not a class of the diagram";
    }
    if (r.multiplicity && !r.multiplicity->unbounded() &&
        (r.multiplicity->lower > r.multiplicity->upper || r.multiplicity->upper <= 0)) {
      return "invalid multiplicity " + r.multiplicity->str();
    }
    if (r.multiplicity && r.multiplicity->lower < 0) {
      return "negative multiplicity lower bound";
    }
    for (size_t j = i + 1; j < d.relationships.size(); ++j) {
      if (relationship_equals(r, d.relationships[j])) {
        return "duplicate relationship '" + r.source + " -> " + r.target +
               " : " + r.name + "'";
      }
    }
  }
  return std::nullopt;
}

void validate_fragment(const Fragment& f) {
  if (f.kind == FragmentKind::Class) {
    if (f.payload.classes.size() != 1 || !f.payload.relationships.empty()) {
      throw std::invalid_argument("class fragment must hold exactly one class and no relationship");
    }
  } else {
    if (f.payload.classes.empty() || f.payload.classes.size() > 2 ||
        f.payload.relationships.size() != 1) {
      throw std::invalid_argument(
          "relationship fragment must hold one or two classes and exactly one relationship");
    }
  }
  if (auto why = diagram_invariant_violation(f.payload)) {
    throw std::invalid_argument("invalid fragment payload: " + *why);
  }
}

// --- PlantUML ---------------------------------------------------------

std::string emit_plantuml(const UmlDiagram& diagram) {
  std::ostringstream out;
  out << "@startuml\n";
  if (diagram.package) out << "package " << *diagram.package << " {\n";
  for (const auto& c : diagram.classes) {
    if (c.package) out << "package " << *c.package << " {\n";
    out << "class " << c.name << " {\n";
    for (const auto& a : c.attributes) {
      out << "  " << a.name;
      if (a.type_name) out << " : " << *a.type_name;
      out << "\n";
    }
    out << "}\n";
    if (c.package) out << "}\n";
  }
  for (const auto& r : diagram.relationships) {
    out << r.source << " \"\" --> ";
    if (r.multiplicity) out << '"' << r.multiplicity->str() << "\" ";
    out << r.target << " : " << r.name << "\n";
  }
  if (diagram.package) out << "}\n";
  out << "@enduml\n";
  return out.str();
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Multiplicity parse_multiplicity_str(const std::string& s) {
  size_t dots = s.find("..");
  if (dots == std::string::npos) {
    throw std::invalid_argument("bad multiplicity '" + s + "'");
  }
  Multiplicity m;
  m.lower = std::stoi(s.substr(0, dots));
  std::string up = s.substr(dots + 2);
  m.upper = (up == "*") ? Multiplicity::kUnbounded : std::stoi(up);
  return m;
}

}  // namespace

UmlDiagram parse_plantuml(const std::string& text) {
  UmlDiagram d;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> package_stack;
  UmlClass* open_class = nullptr;
  bool seen_start = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '\'') continue;
    if (t == "@startuml") { seen_start = true; continue; }
    if (t == "@enduml") break;
    if (!seen_start) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": text before @startuml");
    }
    if (t.rfind("package ", 0) == 0 && t.back() == '{') {
      package_stack.push_back(trim(t.substr(8, t.size() - 9)));
      continue;
    }
    if (t == "}") {
      if (open_class) {
        open_class = nullptr;
      } else if (!package_stack.empty()) {
        package_stack.pop_back();
      } else {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": unbalanced '}'");
      }
      continue;
    }
    if (t.rfind("class ", 0) == 0) {
      std::string rest = trim(t.substr(6));
      if (!rest.empty() && rest.back() == '{') rest = trim(rest.substr(0, rest.size() - 1));
      UmlClass c;
      c.name = rest;
      if (!package_stack.empty()) c.package = package_stack.back();
      d.classes.push_back(std::move(c));
      open_class = &d.classes.back();
      if (t.back() != '{') open_class = nullptr;  // "class X" without a body
      continue;
    }
    if (open_class) {
      UmlAttribute a;
      size_t colon = t.find(" : ");
      if (colon == std::string::npos) {
        a.name = t;
      } else {
        a.name = trim(t.substr(0, colon));
        a.type_name = trim(t.substr(colon + 3));
      }
      open_class->attributes.push_back(std::move(a));
      continue;
    }
    size_t arrow = t.find("-->");
    if (arrow != std::string::npos) {
      std::string lhs = trim(t.substr(0, arrow));
      std::string rhs = trim(t.substr(arrow + 3));
      UmlRelationship r;
      size_t q = lhs.find('"');
      r.source = trim(q == std::string::npos ? lhs : lhs.substr(0, q));
      if (!rhs.empty() && rhs[0] == '"') {
        size_t close = rhs.find('"', 1);
        if (close == std::string::npos) {
          throw std::invalid_argument("line " + std::to_string(lineno) + ": unterminated multiplicity");
        }
        r.multiplicity = parse_multiplicity_str(rhs.substr(1, close - 1));
        rhs = trim(rhs.substr(close + 1));
      }
      size_t colon = rhs.find(':');
      if (colon == std::string::npos) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": relationship without a name");
      }
      r.target = trim(rhs.substr(0, colon));
      r.name = trim(rhs.substr(colon + 1));
      d.relationships.push_back(std::move(r));
      continue;
    }
    throw std::invalid_argument("line " + std::to_string(lineno) + ": unrecognized PlantUML line '" + t + "'");
  }
  // A single package wrapping every class is the diagram package.
  return d;
}

// --- JSON --------------------------------------------------------------

nlohmann::ordered_json diagram_to_json(const UmlDiagram& diagram) {
  nlohmann::ordered_json j;
  if (diagram.package) j["package"] = *diagram.package;
  j["classes"] = nlohmann::ordered_json::array();
  for (const auto& c : diagram.classes) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    if (c.package) jc["package"] = *c.package;
    jc["attributes"] = nlohmann::ordered_json::array();
    for (const auto& a : c.attributes) {
      nlohmann::ordered_json ja;
      ja["name"] = a.name;
      if (a.type_name) ja["type"] = *a.type_name;
      jc["attributes"].push_back(std::move(ja));
    }
    j["classes"].push_back(std::move(jc));
  }
  j["relationships"] = nlohmann::ordered_json::array();
  for (const auto& r : diagram.relationships) {
    nlohmann::ordered_json jr;
    jr["source"] = r.source;
    jr["target"] = r.target;
    jr["name"] = r.name;
    if (r.multiplicity) {
      jr["multiplicity"]["lower"] = r.multiplicity->lower;
      if (r.multiplicity->unbounded()) {
        jr["multiplicity"]["upper"] = "*";
      } else {
        jr["multiplicity"]["upper"] = r.multiplicity->upper;
      }
    }
    j["relationships"].push_back(std::move(jr));
  }
  return j;
}

UmlDiagram diagram_from_json(const nlohmann::json& j) {
  UmlDiagram d;
  if (j.contains("package")) d.package = j.at("package").get<std::string>();
  for (const auto& jc : j.value("classes", nlohmann::json::array())) {
    UmlClass c;
    c.name = jc.at("name").get<std::string>();
    if (jc.contains("package")) c.package = jc.at("package").get<std::string>();
    for (const auto& ja : jc.value("attributes", nlohmann::json::array())) {
      UmlAttribute a;
      a.name = ja.at("name").get<std::string>();
      if (ja.contains("type")) a.type_name = ja.at("type").get<std::string>();
      c.attributes.push_back(std::move(a));
    }
    d.classes.push_back(std::move(c));
  }
  for (const auto& jr : j.value("relationships", nlohmann::json::array())) {
    UmlRelationship r;
    r.source = jr.at("source").get<std::string>();
    r.target = jr.at("target").get<std::string>();
    r.name = jr.at("name").get<std::string>();
    if (jr.contains("multiplicity")) {
      Multiplicity m;
      m.lower = jr.at("multiplicity").at("lower").get<int>();
      const auto& up = jr.at("multiplicity").at("upper");
      m.upper = up.is_string() ? Multiplicity::kUnbounded : up.get<int>();
      r.multiplicity = m;
    }
    d.relationships.push_back(std::move(r));
  }
  return d;
}

nlohmann::ordered_json fragment_to_json(const Fragment& f) {
  nlohmann::ordered_json j;
  j["kind"] = f.kind == FragmentKind::Class ? "class" : "relationship";
  j["payload"] = diagram_to_json(f.payload);
  return j;
}

Fragment fragment_from_json(const nlohmann::json& j) {
  Fragment f;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "class") {
    f.kind = FragmentKind::Class;
  } else if (kind == "relationship") {
    f.kind = FragmentKind::Relationship;
  } else {
    throw std::invalid_argument("unknown fragment kind '" + kind + "'");
  }
  f.payload = diagram_from_json(j.at("payload"));
  validate_fragment(f);
  return f;
}

std::string diagram_to_canonical_json(const UmlDiagram& diagram) {
  return diagram_to_json(diagram).dump(2) + "\n";
}

}  // namespace nl2uml
