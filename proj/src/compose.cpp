#include "nl2uml/compose.hpp"

#include <algorithm>
#include <optional>

namespace nl2uml {
namespace {

bool attr_name_eq(const std::string& a, const std::string& b) {
  return same_identifier(a, b, IdentifierKind::AttributeName);
}

bool class_name_eq(const std::string& a, const std::string& b) {
  return same_identifier(a, b, IdentifierKind::ClassName);
}

UmlClass* find_class(UmlDiagram& d, const std::string& name) {
  for (UmlClass& c : d.classes)
    if (class_name_eq(c.name, name)) return &c;
  return nullptr;
}

bool has_equal_relationship(const UmlDiagram& d, const UmlRelationship& r) {
  for (const UmlRelationship& existing : d.relationships)
    if (relationship_equals(existing, r)) return true;
  return false;
}

void log_event(CompositionState& state, FragmentKind kind,
               const std::string& action, const std::string& detail) {
  MergeEvent e;
  e.step = static_cast<int>(state.log.size());
  e.kind = kind;
  e.action = action;
  e.detail = detail;
  state.log.push_back(std::move(e));
}

// Inserts f's class or folds its attributes into the existing one;
// returns the model class name (the existing casing wins).
std::string insert_or_merge_class(UmlDiagram& model, const UmlClass& incoming) {
  if (UmlClass* existing = find_class(model, incoming.name)) {
    *existing = merge_attributes(std::move(*existing), incoming.attributes);
    if (!existing->package && incoming.package)
      existing->package = incoming.package;
    return existing->name;
  }
  model.classes.push_back(incoming);
  return incoming.name;
}

void insert_relationship_unless_equal(CompositionState& state,
                                      FragmentKind kind,
                                      UmlRelationship rel) {
  if (has_equal_relationship(state.model, rel)) {
    log_event(state, kind, "absorbed",
              "relationship " + rel.source + "->" + rel.target + " '" +
                  rel.name + "' already present");
    return;
  }
  state.model.relationships.push_back(std::move(rel));
}

struct RemovedAttribute {
  std::string owner;
  UmlAttribute attribute;
};

// Removes from every model class the attribute whose name matches `name`.
std::vector<RemovedAttribute> remove_attribute_everywhere(
    UmlDiagram& model, const std::string& name) {
  std::vector<RemovedAttribute> removed;
  for (UmlClass& c : model.classes) {
    for (std::size_t i = 0; i < c.attributes.size(); ++i) {
      if (attr_name_eq(c.attributes[i].name, name)) {
        removed.push_back({c.name, c.attributes[i]});
        c.attributes.erase(c.attributes.begin() + static_cast<long>(i));
        break;
      }
    }
  }
  return removed;
}

void merge_class_fragment(CompositionState& state, const Fragment& f,
                          const ComposeOptions& options) {
  UmlClass incoming = f.payload.classes.front();

  // Mirrored conflict directions (extension only): an incoming attribute
  // may collide with an existing class (class-attribute) or an existing
  // relationship (relationship-attribute).
  std::vector<std::pair<std::string, std::string>> mirrored_rels;
  if (options.commutative_extension) {
    std::vector<UmlAttribute> kept;
    for (UmlAttribute& a : incoming.attributes) {
      if (const UmlClass* hit = find_class(state.model, a.name)) {
        mirrored_rels.emplace_back(a.name, hit->name);
        log_event(state, f.kind, "conflict_AC",
                  "class-attribute: attribute '" + a.name +
                      "' collides with class '" + hit->name + "'");
        continue;
      }
      bool absorbed = false;
      for (const UmlRelationship& r : state.model.relationships) {
        if (same_identifier(r.name, a.name,
                            IdentifierKind::RelationshipName) &&
            class_name_eq(r.source, incoming.name)) {
          absorbed = true;
          log_event(state, f.kind, "conflict_AR",
                    "relationship-attribute: attribute '" + a.name +
                        "' absorbed by relationship '" + r.name + "'");
          break;
        }
      }
      if (!absorbed) kept.push_back(std::move(a));
    }
    incoming.attributes = std::move(kept);
  }

  // Attribute-Class conflict: some model class holds an attribute named
  // like the incoming class. Resolution per owner: drop the attribute,
  // insert the class, link owner -> class named after the attribute, 0..*.
  std::vector<RemovedAttribute> removed =
      remove_attribute_everywhere(state.model, incoming.name);
  std::string inserted;
  if (!removed.empty()) {
    inserted = insert_or_merge_class(state.model, incoming);
    for (const RemovedAttribute& r : removed) {
      UmlRelationship rel;
      rel.source = r.owner;
      rel.target = inserted;
      rel.name = r.attribute.name;
      rel.multiplicity = Multiplicity{0, Multiplicity::kUnbounded};
      insert_relationship_unless_equal(state, f.kind, std::move(rel));
      log_event(state, f.kind, "conflict_AC",
                "attribute '" + r.attribute.name + "' of '" + r.owner +
                    "' became a relationship to '" + inserted + "'");
    }
  } else if (UmlClass* existing = find_class(state.model, incoming.name)) {
    *existing = merge_attributes(std::move(*existing), incoming.attributes);
    if (!existing->package && incoming.package)
      existing->package = incoming.package;
    inserted = existing->name;
    log_event(state, f.kind, "merged", "class " + existing->name);
  } else {
    state.model.classes.push_back(incoming);
    inserted = incoming.name;
    log_event(state, f.kind, "inserted", "class " + incoming.name);
  }

  for (const auto& [attr_name, target] : mirrored_rels) {
    UmlRelationship rel;
    rel.source = inserted;
    rel.target = target;
    rel.name = attr_name;
    rel.multiplicity = Multiplicity{0, Multiplicity::kUnbounded};
    insert_relationship_unless_equal(state, f.kind, std::move(rel));
  }
}

void merge_relationship_fragment(CompositionState& state, const Fragment& f) {
  const UmlRelationship& rel_in = f.payload.relationships.front();
  const UmlClass* left_in = nullptr;
  const UmlClass* right_in = nullptr;
  for (const UmlClass& c : f.payload.classes) {
    if (class_name_eq(c.name, rel_in.source)) left_in = &c;
    if (class_name_eq(c.name, rel_in.target)) right_in = &c;
  }

  // Attribute-Relationship conflict: the model's class A (named like the
  // fragment source C) holds an attribute named like the relationship.
  bool conflict = false;
  if (UmlClass* a_class = find_class(state.model, rel_in.source)) {
    for (std::size_t i = 0; i < a_class->attributes.size(); ++i) {
      if (!attr_name_eq(a_class->attributes[i].name, rel_in.name)) continue;
      conflict = true;
      UmlAttribute removed = a_class->attributes[i];
      a_class->attributes.erase(a_class->attributes.begin() +
                                static_cast<long>(i));
      // fragment attributes lead, surviving model attributes follow
      std::vector<UmlAttribute> remaining = a_class->attributes;
      a_class->attributes =
          left_in ? left_in->attributes : std::vector<UmlAttribute>{};
      *a_class = merge_attributes(std::move(*a_class), remaining);
      log_event(state, f.kind, "conflict_AR",
                "attribute '" + removed.name + "' of '" + a_class->name +
                    "' replaced by the incoming relationship");
      break;
    }
  }

  if (!find_class(state.model, rel_in.source) && left_in)
    state.model.classes.push_back(*left_in);
  if (!find_class(state.model, rel_in.target) && right_in)
    state.model.classes.push_back(*right_in);

  UmlRelationship rel = rel_in;
  if (const UmlClass* src = find_class(state.model, rel.source))
    rel.source = src->name;
  if (const UmlClass* dst = find_class(state.model, rel.target))
    rel.target = dst->name;
  if (has_equal_relationship(state.model, rel)) {
    log_event(state, f.kind, "absorbed",
              "relationship " + rel.source + "->" + rel.target + " '" +
                  rel.name + "' already present");
    return;
  }
  state.model.relationships.push_back(rel);
  log_event(state, f.kind, conflict ? "conflict_AR" : "inserted",
            "relationship " + rel.source + "->" + rel.target + " '" +
                rel.name + "'");
}

}  // namespace

nlohmann::ordered_json merge_event_to_json(const MergeEvent& e) {
  nlohmann::ordered_json j;
  j["step"] = e.step;
  j["fragment_kind"] = e.kind == FragmentKind::Class ? "class" : "relationship";
  j["action"] = e.action;
  j["detail"] = e.detail;
  return j;
}

UmlClass merge_attributes(UmlClass recipient,
                          const std::vector<UmlAttribute>& incoming) {
  for (const UmlAttribute& a : incoming) {
    UmlAttribute* match = nullptr;
    for (UmlAttribute& c : recipient.attributes)
      if (attr_name_eq(c.name, a.name)) match = &c;
    if (match) {
      if (a.type_name && !match->type_name) *match = a;
    } else {
      recipient.attributes.push_back(a);
    }
  }
  return recipient;
}

CompositionState merge_fragment(CompositionState state, const Fragment& f,
                                const ComposeOptions& options) {
  if (f.kind == FragmentKind::Class) {
    merge_class_fragment(state, f, options);
  } else {
    merge_relationship_fragment(state, f);
  }
  return state;
}

UmlDiagram compose(const std::vector<Fragment>& fragments,
                   std::vector<MergeEvent>* log,
                   const ComposeOptions& options) {
  CompositionState state;
  for (const Fragment& f : fragments)
    state = merge_fragment(std::move(state), f, options);
  if (log) *log = std::move(state.log);
  return state.model;
}

UmlDiagram compose(const std::vector<Fragment>& fragments,
                   const ComposeOptions& options) {
  return compose(fragments, nullptr, options);
}

}  // namespace nl2uml
