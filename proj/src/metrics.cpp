#include "nl2uml/metrics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nl2uml {

namespace {

std::string lower_copy(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Attribute sets match when every attribute of one class exists in the other
// with the same name (case-insensitive) and the same optional type.
bool attribute_sets_equal(const UmlClass& a, const UmlClass& b) {
  if (a.attributes.size() != b.attributes.size()) return false;
  for (const auto& attr : a.attributes) {
    const UmlAttribute* other = b.find_attribute(attr.name);
    if (other == nullptr || other->type_name != attr.type_name) return false;
  }
  return true;
}

struct Rates {
  double precision = 0.0;
  double recall = 0.0;
};

// Empty-side conventions: nothing on either side compares as perfect; an
// empty prediction has precision 0; an empty reference has recall 1.
Rates rates(int matched, int predicted_total, int truth_total) {
  if (predicted_total == 0 && truth_total == 0) return {1.0, 1.0};
  Rates r;
  r.precision = predicted_total == 0
                    ? 0.0
                    : static_cast<double>(matched) / predicted_total;
  r.recall = truth_total == 0 ? 1.0
                              : static_cast<double>(matched) / truth_total;
  return r;
}

MatchReport level_match(const UmlDiagram& predicted, const UmlDiagram& truth,
                        MatchLevel level) {
  const bool exact = level == MatchLevel::Exact;

  auto class_present = [&](const UmlClass& truth_class) {
    const UmlClass* p = predicted.find_class(truth_class.name);
    if (p == nullptr) return false;
    return !exact || attribute_sets_equal(truth_class, *p);
  };

  int class_matched = 0;
  for (const auto& tc : truth.classes)
    if (class_present(tc)) ++class_matched;

  MatchReport report;
  report.level = level;
  const Rates cls = rates(class_matched, static_cast<int>(predicted.classes.size()),
                          static_cast<int>(truth.classes.size()));
  report.class_precision = cls.precision;
  report.class_recall = cls.recall;
  report.class_f1 = f1_score(cls.precision, cls.recall);

  auto endpoint_present = [&](const std::string& name) {
    const UmlClass* tc = truth.find_class(name);
    return tc != nullptr && class_present(*tc);
  };

  std::vector<bool> consumed(predicted.relationships.size(), false);
  int rel_matched = 0;
  for (const auto& tr : truth.relationships) {
    if (!endpoint_present(tr.source) || !endpoint_present(tr.target)) continue;
    for (std::size_t i = 0; i < predicted.relationships.size(); ++i) {
      if (consumed[i]) continue;
      const UmlRelationship& pr = predicted.relationships[i];
      if (!relationship_equals(pr, tr)) continue;
      if (exact && pr.multiplicity != tr.multiplicity) continue;
      consumed[i] = true;
      ++rel_matched;
      break;
    }
  }
  const Rates rel =
      rates(rel_matched, static_cast<int>(predicted.relationships.size()),
            static_cast<int>(truth.relationships.size()));
  report.rel_precision = rel.precision;
  report.rel_recall = rel.recall;
  report.rel_f1 = f1_score(rel.precision, rel.recall);
  return report;
}

// Spectra sorted descending; an empty spectrum stands for a zero-node graph
// and is compared zero-padded against the other side's energy rank.
double spectra_similarity(const std::vector<double>& s1,
                          const std::vector<double>& s2,
                          const MetricsOptions& options) {
  const int k1 = energy_rank(s1, options.energy_threshold);
  const int k2 = energy_rank(s2, options.energy_threshold);
  const int k = (k1 == 0 || k2 == 0) ? std::max(k1, k2) : std::min(k1, k2);
  double x = 0.0;
  for (int i = 0; i < k; ++i) {
    const double a = i < static_cast<int>(s1.size()) ? s1[i] : 0.0;
    const double b = i < static_cast<int>(s2.size()) ? s2[i] : 0.0;
    x += (a - b) * (a - b);
  }
  if (options.root_distance) x = std::sqrt(x);
  return 2.0 * (1.0 - 1.0 / (1.0 + std::exp(-x)));
}

nlohmann::ordered_json report_to_json(const MatchReport& r) {
  nlohmann::ordered_json j;
  j["level"] = match_level_name(r.level);
  j["class_precision"] = r.class_precision;
  j["class_recall"] = r.class_recall;
  j["class_f1"] = r.class_f1;
  if (r.rel_precision) j["rel_precision"] = *r.rel_precision;
  if (r.rel_recall) j["rel_recall"] = *r.rel_recall;
  if (r.rel_f1) j["rel_f1"] = *r.rel_f1;
  if (r.connectivity) j["connectivity"] = *r.connectivity;
  if (r.size_score) j["size_score"] = *r.size_score;
  return j;
}

}  // namespace

std::string match_level_name(MatchLevel level) {
  switch (level) {
    case MatchLevel::Exact: return "exact";
    case MatchLevel::Relaxed: return "relaxed";
    case MatchLevel::General: return "general";
  }
  throw std::invalid_argument("unknown match level");
}

double f1_score(double precision, double recall) {
  const double sum = precision + recall;
  if (sum <= 0.0) return 0.0;
  return 2.0 * precision * recall / sum;
}

UndirectedGraph to_undirected_graph(const UmlDiagram& diagram) {
  UndirectedGraph g;
  g.node_count = static_cast<int>(diagram.classes.size());
  std::map<std::string, int> index;
  for (int i = 0; i < g.node_count; ++i)
    index[lower_copy(diagram.classes[i].name)] = i;
  for (const auto& rel : diagram.relationships) {
    const auto a = index.find(lower_copy(rel.source));
    const auto b = index.find(lower_copy(rel.target));
    if (a == index.end() || b == index.end())
      throw std::invalid_argument("relationship endpoint missing from diagram: " +
                                  rel.source + " -> " + rel.target);
    g.edges.insert({std::min(a->second, b->second),
                    std::max(a->second, b->second)});
  }
  return g;
}

std::vector<double> laplacian_spectrum(const UndirectedGraph& g) {
  const int n = g.node_count;
  if (n == 0) return {};
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [a, b] : g.edges) {
    if (a < 0 || b >= n)
      throw std::invalid_argument("edge endpoint outside node range");
    if (a == b) {
      lap(a, a) += 1.0;  // self-loop: degree only, no off-diagonal term
    } else {
      lap(a, a) += 1.0;
      lap(b, b) += 1.0;
      lap(a, b) -= 1.0;
      lap(b, a) -= 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("Laplacian eigendecomposition failed");
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i)
    values[i] = std::max(0.0, solver.eigenvalues()[n - 1 - i]);
  return values;
}

int energy_rank(const std::vector<double>& spectrum, double threshold) {
  if (spectrum.empty()) return 0;
  const double total =
      std::accumulate(spectrum.begin(), spectrum.end(), 0.0);
  if (total <= 0.0) return 1;
  double partial = 0.0;
  for (std::size_t k = 1; k <= spectrum.size(); ++k) {
    partial += spectrum[k - 1];
    if (partial + 1e-12 >= threshold * total) return static_cast<int>(k);
  }
  return static_cast<int>(spectrum.size());
}

double connectivity_similarity(const UndirectedGraph& g1,
                               const UndirectedGraph& g2,
                               const MetricsOptions& options) {
  if (g1.node_count == 0 || g2.node_count == 0)
    throw std::invalid_argument(
        "connectivity similarity requires graphs with at least one node");
  return spectra_similarity(laplacian_spectrum(g1), laplacian_spectrum(g2),
                            options);
}

double size_difference_score(const UndirectedGraph& g1,
                             const UndirectedGraph& g2) {
  const bool empty1 = g1.node_count == 0 && g1.edge_count() == 0;
  const bool empty2 = g2.node_count == 0 && g2.edge_count() == 0;
  if (empty1 && empty2) return 1.0;
  if (empty1 || empty2) {
    std::cerr << "nl2uml: warning: size score against an empty graph is 0\n";
    return 0.0;
  }
  auto unit = [](const UndirectedGraph& g) {
    const double n = g.node_count;
    const double e = g.edge_count();
    const double len = std::sqrt(n * n + e * e);
    return std::pair<double, double>{n / len, e / len};
  };
  const auto [a1, a2] = unit(g1);
  const auto [b1, b2] = unit(g2);
  const double x = std::hypot(a1 - b1, a2 - b2);
  return 1.0 - x / std::sqrt(2.0);
}

MatchReport exact_match(const UmlDiagram& predicted, const UmlDiagram& truth) {
  return level_match(predicted, truth, MatchLevel::Exact);
}

MatchReport relaxed_match(const UmlDiagram& predicted, const UmlDiagram& truth) {
  return level_match(predicted, truth, MatchLevel::Relaxed);
}

MatchReport general_match(const UmlDiagram& predicted, const UmlDiagram& truth,
                          const MetricsOptions& options) {
  MatchReport report = level_match(predicted, truth, MatchLevel::Relaxed);
  report.level = MatchLevel::General;
  report.rel_precision.reset();
  report.rel_recall.reset();
  report.rel_f1.reset();

  const UndirectedGraph g1 = to_undirected_graph(predicted);
  const UndirectedGraph g2 = to_undirected_graph(truth);
  if (g1.node_count == 0 && g2.node_count == 0) {
    report.connectivity = 1.0;
    report.size_score = 1.0;
  } else {
    report.connectivity = spectra_similarity(laplacian_spectrum(g1),
                                             laplacian_spectrum(g2), options);
    report.size_score = size_difference_score(g1, g2);
  }
  return report;
}

DiagramComparison compare_diagrams(const UmlDiagram& predicted,
                                   const UmlDiagram& truth,
                                   const MetricsOptions& options) {
  DiagramComparison c;
  c.exact = exact_match(predicted, truth);
  c.relaxed = relaxed_match(predicted, truth);
  c.general = general_match(predicted, truth, options);
  return c;
}

DiagramComparison mean_comparison(const std::vector<DiagramComparison>& all) {
  if (all.empty())
    throw std::invalid_argument("mean_comparison requires at least one entry");
  auto mean_report = [&](MatchLevel level,
                         auto select) {
    MatchReport out;
    out.level = level;
    double cp = 0.0, cr = 0.0, cf = 0.0;
    double rp = 0.0, rr = 0.0, rf = 0.0;
    double conn = 0.0, size = 0.0;
    bool has_rel = false, has_graph = false;
    for (const auto& c : all) {
      const MatchReport& r = select(c);
      cp += r.class_precision;
      cr += r.class_recall;
      cf += r.class_f1;
      if (r.rel_precision) {
        has_rel = true;
        rp += *r.rel_precision;
        rr += *r.rel_recall;
        rf += *r.rel_f1;
      }
      if (r.connectivity) {
        has_graph = true;
        conn += *r.connectivity;
        size += *r.size_score;
      }
    }
    const double n = static_cast<double>(all.size());
    out.class_precision = cp / n;
    out.class_recall = cr / n;
    out.class_f1 = cf / n;
    if (has_rel) {
      out.rel_precision = rp / n;
      out.rel_recall = rr / n;
      out.rel_f1 = rf / n;
    }
    if (has_graph) {
      out.connectivity = conn / n;
      out.size_score = size / n;
    }
    return out;
  };
  DiagramComparison mean;
  mean.exact = mean_report(MatchLevel::Exact,
                           [](const DiagramComparison& c) -> const MatchReport& {
                             return c.exact;
                           });
  mean.relaxed = mean_report(MatchLevel::Relaxed,
                             [](const DiagramComparison& c) -> const MatchReport& {
                               return c.relaxed;
                             });
  mean.general = mean_report(MatchLevel::General,
                             [](const DiagramComparison& c) -> const MatchReport& {
                               return c.general;
                             });
  return mean;
}

nlohmann::ordered_json comparison_to_json(const DiagramComparison& c) {
  nlohmann::ordered_json j;
  j["exact"] = report_to_json(c.exact);
  j["relaxed"] = report_to_json(c.relaxed);
  j["general"] = report_to_json(c.general);
  return j;
}

std::string format_comparison_table(const DiagramComparison& c) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  auto cell = [&](const std::optional<double>& v, int width) {
    out << std::setw(width);
    if (v)
      out << *v;
    else
      out << "-";
  };
  out << std::left << std::setw(9) << "Level" << std::right
      << std::setw(8) << "ClassP" << std::setw(8) << "ClassR"
      << std::setw(9) << "ClassF1" << std::setw(8) << "RelP"
      << std::setw(8) << "RelR" << std::setw(8) << "RelF1"
      << std::setw(14) << "Connectivity" << std::setw(7) << "Size" << '\n';
  for (const MatchReport* r : {&c.exact, &c.relaxed, &c.general}) {
    out << std::left << std::setw(9) << match_level_name(r->level)
        << std::right;
    out << std::setw(8) << r->class_precision << std::setw(8)
        << r->class_recall << std::setw(9) << r->class_f1;
    cell(r->rel_precision, 8);
    cell(r->rel_recall, 8);
    cell(r->rel_f1, 8);
    cell(r->connectivity, 14);
    cell(r->size_score, 7);
    out << '\n';
  }
  return out.str();
}

}  // namespace nl2uml
