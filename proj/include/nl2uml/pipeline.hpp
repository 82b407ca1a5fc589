#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nl2uml/classify.hpp"
#include "nl2uml/compose.hpp"
#include "nl2uml/dataset.hpp"
#include "nl2uml/metrics.hpp"
#include "nl2uml/parse.hpp"
#include "nl2uml/patterns.hpp"
#include "nl2uml/preprocess.hpp"

namespace nl2uml {

// --- End-to-end generation --------------------------------------------------
//
// preprocess -> sentence split -> label each sentence -> bind a grammar
// pattern -> compose the fragments.

struct SentenceTrace {
  std::string sentence;
  SentenceLabel label = SentenceLabel::Class;
  std::optional<PatternId> pattern;
  bool fallback = false;
  std::string diagnostic;  // non-empty when skipped or downgraded
};

struct GenerateResult {
  UmlDiagram diagram;
  std::vector<SentenceTrace> sentences;
  std::vector<MergeEvent> merge_log;
  int skipped = 0;  // sentences yielding no fragment
};

GenerateResult generate_diagram(const std::string& text,
                                const SentenceClassifier& classifier,
                                const PatternEngine& engine,
                                const ParserBackend& parser,
                                const PronounResolver& resolver,
                                const ComposeOptions& compose_options = {});

// --- Dataset-wide evaluation ----------------------------------------------

struct GroupEvaluation {
  std::string model_id;
  bool failed = false;
  std::string error;            // set when failed
  DiagramComparison comparison;  // valid when !failed
};

struct EvaluationReport {
  std::vector<GroupEvaluation> groups;
  DiagramComparison mean;  // over the non-failed groups
  int evaluated_groups = 0;
  int failed_groups = 0;
};

// Generates a diagram per model group and compares it with the group truth
// at all three levels. Per-group failures are recorded and skipped; the
// means cover the remaining groups.
EvaluationReport evaluate_dataset(const std::vector<LabeledFragment>& data,
                                  const SentenceClassifier& classifier,
                                  const PatternEngine& engine,
                                  const ParserBackend& parser,
                                  const PronounResolver& resolver,
                                  const MetricsOptions& metrics_options = {},
                                  const ComposeOptions& compose_options = {});

nlohmann::ordered_json evaluation_to_json(const EvaluationReport& report);
std::string format_evaluation_table(const EvaluationReport& report);

}  // namespace nl2uml
