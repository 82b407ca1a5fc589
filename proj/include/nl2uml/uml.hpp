#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace nl2uml {

// --- Class diagram data model -----------------------------------------
//
// Pure value types. Diagrams are directed multigraphs of named classes;
// associations are unidirectional and carry an optional multiplicity on
// the target end. Name lookups throughout the system are case-insensitive
// on normalized identifiers.

struct UmlAttribute {
  std::string name;                      // lowerCamelCase identifier
  std::optional<std::string> type_name;  // e.g. "String", "Double"

  bool operator==(const UmlAttribute&) const = default;
};

struct UmlClass {
  std::string name;  // UpperCamelCase identifier
  std::vector<UmlAttribute> attributes;
  std::optional<std::string> package;

  const UmlAttribute* find_attribute(const std::string& attr_name) const;

  bool operator==(const UmlClass&) const = default;
};

struct Multiplicity {
  static constexpr int kUnbounded = -1;

  int lower = 0;
  int upper = kUnbounded;

  bool unbounded() const { return upper == kUnbounded; }
  std::string str() const;  // "0..*", "1..1", ...

  bool operator==(const Multiplicity&) const = default;
};

struct UmlRelationship {
  std::string source;  // class name
  std::string target;  // class name
  std::string name;
  std::optional<Multiplicity> multiplicity;  // target end

  bool operator==(const UmlRelationship&) const = default;
};

struct UmlDiagram {
  std::vector<UmlClass> classes;
  std::vector<UmlRelationship> relationships;
  std::optional<std::string> package;

  bool empty() const { return classes.empty() && relationships.empty(); }
  const UmlClass* find_class(const std::string& class_name) const;
  UmlClass* find_class(const std::string& class_name);

  bool operator==(const UmlDiagram&) const = default;
};

enum class FragmentKind { Class, Relationship };

// A micro-diagram: one class, or two classes (one if self-referential)
// joined by exactly one association.
struct Fragment {
  FragmentKind kind = FragmentKind::Class;
  UmlDiagram payload;

  bool operator==(const Fragment&) const = default;
};

Fragment make_class_fragment(UmlClass cls);
Fragment make_relationship_fragment(UmlClass source, UmlClass target,
                                    UmlRelationship rel);

// --- Identifier normalization ------------------------------------------

enum class IdentifierKind { ClassName, AttributeName, RelationshipName };

// Lemmatizes each word to singular and joins the sequence in camelCase.
// ClassName capitalizes the first letter, the other kinds lowercase it.
// Throws std::invalid_argument when the phrase has no alphabetic token.
std::string normalize_identifier(const std::vector<std::string>& phrase,
                                 IdentifierKind kind);
std::string normalize_identifier(const std::string& phrase, IdentifierKind kind);

// Case-insensitive comparison of two names after normalization.
bool same_identifier(const std::string& a, const std::string& b,
                     IdentifierKind kind);

// Equality used during composition: endpoints and relationship name match
// after normalization; multiplicities are never consulted.
bool relationship_equals(const UmlRelationship& r1, const UmlRelationship& r2);

// --- Validation ----------------------------------------------------------

// Checks the UmlDiagram invariants: unique class names (case-insensitive),
// unique attribute names per class, valid relationship endpoints, no two
// relationships equal under relationship_equals, multiplicity bounds.
// Returns an explanation for the first violation, or nullopt when valid.
std::optional<std::string> diagram_invariant_violation(const UmlDiagram& d);

void validate_fragment(const Fragment& f);  // throws std::invalid_argument

// --- PlantUML ------------------------------------------------------------

// Deterministic PlantUML-syntax text, "@startuml".."@enduml" framed.
// Classes appear in insertion order, attributes as "name : Type".
std::string emit_plantuml(const UmlDiagram& diagram);

// Parses the subset of PlantUML produced by emit_plantuml.
UmlDiagram parse_plantuml(const std::string& text);

// --- JSON ------------------------------------------------------------------

// Stable schema: classes[], attributes[], relationships[],
// multiplicity{lower,upper}; "upper": "*" encodes the unbounded sentinel.
nlohmann::ordered_json diagram_to_json(const UmlDiagram& diagram);
UmlDiagram diagram_from_json(const nlohmann::json& j);

nlohmann::ordered_json fragment_to_json(const Fragment& f);
Fragment fragment_from_json(const nlohmann::json& j);

// Canonical serialized form used by golden tests: 2-space indentation,
// fixed key order, trailing newline.
std::string diagram_to_canonical_json(const UmlDiagram& diagram);

}  // namespace nl2uml
