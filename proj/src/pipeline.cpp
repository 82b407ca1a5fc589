#include "nl2uml/pipeline.hpp"

#include <sstream>

namespace nl2uml {

GenerateResult generate_diagram(const std::string& text,
                                const SentenceClassifier& classifier,
                                const PatternEngine& engine,
                                const ParserBackend& parser,
                                const PronounResolver& resolver,
                                const ComposeOptions& compose_options) {
  GenerateResult result;
  std::vector<Fragment> fragments;
  for (const std::string& sentence : preprocess_text(text, resolver)) {
    SentenceTrace trace;
    trace.sentence = sentence;
    trace.label = classifier.predict(sentence);
    const Generation gen = engine.generate_fragment(sentence, trace.label, parser);
    trace.pattern = gen.pattern;
    trace.fallback = gen.fallback;
    trace.diagnostic = gen.diagnostic;
    if (gen.fragment) {
      fragments.push_back(*gen.fragment);
    } else {
      ++result.skipped;
    }
    result.sentences.push_back(std::move(trace));
  }
  result.diagram = compose(fragments, &result.merge_log, compose_options);
  return result;
}

EvaluationReport evaluate_dataset(const std::vector<LabeledFragment>& data,
                                  const SentenceClassifier& classifier,
                                  const PatternEngine& engine,
                                  const ParserBackend& parser,
                                  const PronounResolver& resolver,
                                  const MetricsOptions& metrics_options,
                                  const ComposeOptions& compose_options) {
  EvaluationReport report;
  std::vector<DiagramComparison> comparisons;
  for (const ModelGroup& group : group_by_model(data)) {
    GroupEvaluation entry;
    entry.model_id = group.model_id;
    try {
      const GenerateResult generated =
          generate_diagram(group.specification, classifier, engine, parser,
                           resolver, compose_options);
      entry.comparison =
          compare_diagrams(generated.diagram, group.truth, metrics_options);
      comparisons.push_back(entry.comparison);
      ++report.evaluated_groups;
    } catch (const std::exception& e) {
      entry.failed = true;
      entry.error = e.what();
      ++report.failed_groups;
    }
    report.groups.push_back(std::move(entry));
  }
  if (!comparisons.empty()) report.mean = mean_comparison(comparisons);
  return report;
}

nlohmann::ordered_json evaluation_to_json(const EvaluationReport& report) {
  nlohmann::ordered_json j;
  j["evaluated_groups"] = report.evaluated_groups;
  j["failed_groups"] = report.failed_groups;
  j["mean"] = comparison_to_json(report.mean);
  nlohmann::ordered_json groups = nlohmann::ordered_json::array();
  for (const auto& g : report.groups) {
    nlohmann::ordered_json entry;
    entry["model_id"] = g.model_id;
    if (g.failed) {
      entry["error"] = g.error;
    } else {
      entry["comparison"] = comparison_to_json(g.comparison);
    }
    groups.push_back(std::move(entry));
  }
  j["groups"] = std::move(groups);
  return j;
}

std::string format_evaluation_table(const EvaluationReport& report) {
  std::ostringstream out;
  out << "groups evaluated: " << report.evaluated_groups
      << "  failed: " << report.failed_groups << "\n\n";
  out << format_comparison_table(report.mean);
  return out.str();
}

}  // namespace nl2uml
