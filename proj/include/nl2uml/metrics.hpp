#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nl2uml/uml.hpp"

namespace nl2uml {

// --- Diagram comparison ----------------------------------------------------
//
// Three comparison levels between a predicted diagram and a reference
// diagram:
//   EXACT    class present iff name and full attribute set (names and types)
//            match; relationship present iff both endpoint classes are
//            present, the endpoints/name match and the multiplicities match.
//   RELAXED  class present iff the name matches; relationships as EXACT but
//            multiplicities are ignored.
//   GENERAL  classes as RELAXED; relationships judged collectively through
//            graph connectivity (Laplacian spectra) and a size score.

enum class MatchLevel { Exact, Relaxed, General };

std::string match_level_name(MatchLevel level);

struct MatchReport {
  MatchLevel level = MatchLevel::Exact;
  double class_precision = 0.0;
  double class_recall = 0.0;
  double class_f1 = 0.0;
  // Engaged for EXACT and RELAXED only.
  std::optional<double> rel_precision;
  std::optional<double> rel_recall;
  std::optional<double> rel_f1;
  // Engaged for GENERAL only.
  std::optional<double> connectivity;
  std::optional<double> size_score;
};

// Harmonic mean; 0 when both inputs are 0.
double f1_score(double precision, double recall);

struct MetricsOptions {
  // Smallest k eigenvalues keeping at least this share of the spectrum sum.
  double energy_threshold = 0.9;
  // Compare spectra by the square root of the summed squared differences
  // instead of the plain sum.
  bool root_distance = false;
};

// --- Graph view --------------------------------------------------------

// Classes become nodes 0..n-1 in diagram order; every relationship becomes
// one undirected edge (parallel edges collapse, orientation and all names
// are dropped). Self-relationships are kept as self-loops: they count as
// edges and add one to the Laplacian diagonal.
struct UndirectedGraph {
  int node_count = 0;
  std::set<std::pair<int, int>> edges;  // normalized (min,max) pairs

  int edge_count() const { return static_cast<int>(edges.size()); }
};

UndirectedGraph to_undirected_graph(const UmlDiagram& diagram);

// Laplacian eigenvalues sorted descending, clamped at 0.
std::vector<double> laplacian_spectrum(const UndirectedGraph& g);

// Smallest k such that the top-k values keep at least `threshold` of the
// total sum (1 for an all-zero spectrum). Values must be sorted descending.
int energy_rank(const std::vector<double>& spectrum, double threshold);

// f(x) = 2(1 - sigmoid(x)) over the squared distance between the top-k
// Laplacian eigenvalues, k per the energy criterion of both graphs.
// Range (0,1]; 1 means identically connected. Throws std::invalid_argument
// on a zero-node graph.
double connectivity_similarity(const UndirectedGraph& g1,
                               const UndirectedGraph& g2,
                               const MetricsOptions& options = {});

// g(x) = 1 - x/sqrt(2) where x is the distance between the unit-normalized
// [node count, edge count] vectors. 1 means proportionally similar sizes.
// A zero-node, zero-edge graph yields 0 with a warning on stderr.
double size_difference_score(const UndirectedGraph& g1,
                             const UndirectedGraph& g2);

// --- Matching levels ---------------------------------------------------

MatchReport exact_match(const UmlDiagram& predicted, const UmlDiagram& truth);
MatchReport relaxed_match(const UmlDiagram& predicted, const UmlDiagram& truth);
MatchReport general_match(const UmlDiagram& predicted, const UmlDiagram& truth,
                          const MetricsOptions& options = {});

struct DiagramComparison {
  MatchReport exact;
  MatchReport relaxed;
  MatchReport general;
};

DiagramComparison compare_diagrams(const UmlDiagram& predicted,
                                   const UmlDiagram& truth,
                                   const MetricsOptions& options = {});

// Field-wise arithmetic mean; the input must be non-empty.
DiagramComparison mean_comparison(const std::vector<DiagramComparison>& all);

nlohmann::ordered_json comparison_to_json(const DiagramComparison& c);

// Aligned-column text table, one row per matching level.
std::string format_comparison_table(const DiagramComparison& c);

}  // namespace nl2uml
