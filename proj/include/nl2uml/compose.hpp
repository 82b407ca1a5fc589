#pragma once

#include <string>
#include <vector>

#include "nl2uml/uml.hpp"
#include "nlohmann/json.hpp"

namespace nl2uml {

// One structured record per merge step, for debugging and verbose output.
struct MergeEvent {
  int step = 0;
  FragmentKind kind = FragmentKind::Class;
  std::string action;  // inserted|merged|conflict_AC|conflict_AR|absorbed
  std::string detail;
};

nlohmann::ordered_json merge_event_to_json(const MergeEvent& e);

struct ComposeOptions {
  // Also resolve the mirrored (class-attribute / relationship-attribute)
  // conflict directions. Off by default: the baseline algorithm is
  // deliberately one-directional.
  bool commutative_extension = false;
};

struct CompositionState {
  UmlDiagram model;
  std::vector<MergeEvent> log;
};

// Applies Algorithm 2 semantics: same-named incoming attribute replaces an
// untyped existing one when it carries a type, is dropped otherwise, and is
// appended when no name matches.
UmlClass merge_attributes(UmlClass recipient,
                          const std::vector<UmlAttribute>& incoming);

CompositionState merge_fragment(CompositionState state, const Fragment& f,
                                const ComposeOptions& options = {});

UmlDiagram compose(const std::vector<Fragment>& fragments,
                   const ComposeOptions& options = {});
UmlDiagram compose(const std::vector<Fragment>& fragments,
                   std::vector<MergeEvent>* log,
                   const ComposeOptions& options = {});

}  // namespace nl2uml
