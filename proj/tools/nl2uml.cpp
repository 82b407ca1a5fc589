#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nl2uml/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitMissingModel = 2;

struct CommonOptions {
  std::string model_path = "model.json";
  std::string patterns_path;
  std::string fixtures_path;
  std::string resolver_name = "rule-based";
  std::string output_path;
  bool commutative_extension = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& output_path, const std::string& text) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + output_path);
  out << text;
}

nl2uml::PatternEngine make_engine(const CommonOptions& options) {
  if (options.patterns_path.empty()) return nl2uml::PatternEngine();
  return nl2uml::PatternEngine(nl2uml::PatternConfig::load(options.patterns_path));
}

std::unique_ptr<nl2uml::ParserBackend> make_parser(const CommonOptions& options) {
  if (options.fixtures_path.empty())
    return std::make_unique<nl2uml::BuiltinParser>();
  return std::make_unique<nl2uml::FixtureParser>(options.fixtures_path);
}

nl2uml::SentenceClassifier load_model_or_exit(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) {
    std::cerr << "error: model file not found: " << path
              << "\nhint: train one first, e.g. `nl2uml train <dataset.jsonl> "
                 "--model "
              << path << "`\n";
    std::exit(kExitMissingModel);
  }
  probe.close();
  return nl2uml::SentenceClassifier::load(path);
}

int run_train(const std::string& dataset_path, const CommonOptions& common,
              const std::string& vectorizer_name,
              const std::string& algorithm_name, unsigned seed,
              bool all_algorithms, bool both_vectorizers) {
  const auto data = nl2uml::load_dataset(dataset_path);
  const auto stats = nl2uml::dataset_stats(data);
  std::cerr << "dataset: " << stats.fragments << " fragments across "
            << stats.models << " models (" << stats.class_fragments
            << " class / " << stats.relationship_fragments
            << " relationship)\n";
  const auto sentences = nl2uml::labeled_sentences(data);

  const auto algorithms =
      all_algorithms
          ? nl2uml::all_classifier_algorithms()
          : std::vector<nl2uml::ClassifierAlgorithm>{
                nl2uml::classifier_algorithm_from_name(algorithm_name)};
  const auto methods =
      both_vectorizers
          ? std::vector<nl2uml::VectorMethod>{nl2uml::VectorMethod::Tfidf,
                                              nl2uml::VectorMethod::Count}
          : std::vector<nl2uml::VectorMethod>{
                nl2uml::vector_method_from_name(vectorizer_name)};

  if (algorithms.size() > 1 || methods.size() > 1) {
    std::printf("%-16s", "algorithm");
    for (const auto method : methods)
      std::printf("  %8s", nl2uml::vector_method_name(method).c_str());
    std::printf("\n");
    for (const auto algorithm : algorithms) {
      std::printf("%-16s",
                  nl2uml::classifier_algorithm_name(algorithm).c_str());
      for (const auto method : methods) {
        const auto result =
            nl2uml::SentenceClassifier::train(sentences, method, algorithm, seed);
        std::printf("  %8.3f", result.held_out_accuracy);
      }
      std::printf("\n");
    }
  }

  const auto final_method = nl2uml::vector_method_from_name(vectorizer_name);
  const auto final_algorithm =
      nl2uml::classifier_algorithm_from_name(algorithm_name);
  const auto result = nl2uml::SentenceClassifier::train(
      sentences, final_method, final_algorithm, seed);
  result.model.save(common.model_path);
  std::printf("trained %s + %s: held-out accuracy %.3f\n",
              nl2uml::classifier_algorithm_name(final_algorithm).c_str(),
              nl2uml::vector_method_name(final_method).c_str(),
              result.held_out_accuracy);
  std::printf("model written to %s\n", common.model_path.c_str());
  return kExitOk;
}

int run_generate(const std::string& input_path, const CommonOptions& common,
                 const std::string& format) {
  const auto model = load_model_or_exit(common.model_path);
  const std::string text = read_file(input_path);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw std::runtime_error("input file holds no text: " + input_path);

  const auto engine = make_engine(common);
  const auto parser = make_parser(common);
  bool warned = false;
  const auto resolver = nl2uml::make_resolver(common.resolver_name, &warned);
  if (warned)
    std::cerr << "warning: unknown resolver '" << common.resolver_name
              << "', substituting pronouns disabled\n";

  nl2uml::ComposeOptions compose_options;
  compose_options.commutative_extension = common.commutative_extension;
  const auto result = nl2uml::generate_diagram(text, model, engine, *parser,
                                               *resolver, compose_options);
  for (const auto& trace : result.sentences) {
    if (!trace.diagnostic.empty())
      std::cerr << "note: " << trace.diagnostic << " [" << trace.sentence
                << "]\n";
  }
  if (format == "json")
    write_output(common.output_path,
                 nl2uml::diagram_to_canonical_json(result.diagram));
  else
    write_output(common.output_path, nl2uml::emit_plantuml(result.diagram));
  return kExitOk;
}

int run_evaluate(const std::string& dataset_path, const CommonOptions& common,
                 const std::string& report_format, double energy_threshold) {
  const auto model = load_model_or_exit(common.model_path);
  const auto data = nl2uml::load_dataset(dataset_path);
  const auto engine = make_engine(common);
  const auto parser = make_parser(common);
  bool warned = false;
  const auto resolver = nl2uml::make_resolver(common.resolver_name, &warned);

  nl2uml::MetricsOptions metrics_options;
  metrics_options.energy_threshold = energy_threshold;
  nl2uml::ComposeOptions compose_options;
  compose_options.commutative_extension = common.commutative_extension;

  const auto report = nl2uml::evaluate_dataset(
      data, model, engine, *parser, *resolver, metrics_options, compose_options);
  for (const auto& group : report.groups)
    if (group.failed)
      std::cerr << "group failed: " << group.model_id << ": " << group.error
                << "\n";

  if (report_format == "json")
    write_output(common.output_path,
                 nl2uml::evaluation_to_json(report).dump(2) + "\n");
  else
    write_output(common.output_path, nl2uml::format_evaluation_table(report));

  const int total = report.evaluated_groups + report.failed_groups;
  if (total > 0 &&
      static_cast<double>(report.failed_groups) > 0.10 * total)
    return kExitError;
  return kExitOk;
}

int run_classify(const std::string& input_path, const CommonOptions& common) {
  const auto model = load_model_or_exit(common.model_path);
  const std::string text = read_file(input_path);
  bool warned = false;
  const auto resolver = nl2uml::make_resolver(common.resolver_name, &warned);
  std::ostringstream out;
  for (const std::string& sentence : nl2uml::preprocess_text(text, *resolver))
    out << nl2uml::label_name(model.predict(sentence)) << "\t" << sentence
        << "\n";
  write_output(common.output_path, out.str());
  return kExitOk;
}

int run_compose(const std::string& input_path, const CommonOptions& common,
                const std::string& format, bool print_log) {
  std::ifstream in(input_path);
  if (!in) throw std::runtime_error("cannot read fragments file: " + input_path);
  std::vector<nl2uml::Fragment> fragments;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fragments.push_back(
          nl2uml::fragment_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error(input_path + ":" + std::to_string(line_number) +
                               ": " + e.what());
    }
  }
  if (fragments.empty())
    throw std::runtime_error("no fragments in " + input_path);

  nl2uml::ComposeOptions options;
  options.commutative_extension = common.commutative_extension;
  std::vector<nl2uml::MergeEvent> log;
  const auto diagram = nl2uml::compose(fragments, &log, options);
  if (print_log)
    for (const auto& event : log)
      std::cerr << nl2uml::merge_event_to_json(event).dump() << "\n";
  if (format == "json")
    write_output(common.output_path, nl2uml::diagram_to_canonical_json(diagram));
  else
    write_output(common.output_path, nl2uml::emit_plantuml(diagram));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"English software specifications to UML class diagrams"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string vectorizer_name = "tfidf";
  std::string algorithm_name = "bernoulli_nb";
  std::string format = "puml";
  std::string report_format = "table";
  unsigned seed = 0;
  double energy_threshold = 0.9;
  bool all_algorithms = false;
  bool both_vectorizers = false;
  bool print_log = false;
  std::string dataset_path, input_path;

  auto add_common = [&](CLI::App* cmd, bool with_model = true) {
    if (with_model)
      cmd->add_option("--model", common.model_path, "Classifier model file");
    cmd->add_option("--patterns", common.patterns_path,
                    "Grammar pattern configuration file");
    cmd->add_option("--fixtures", common.fixtures_path,
                    "Pre-parsed sentence fixtures (replaces the built-in parser)");
    cmd->add_option("--resolver", common.resolver_name,
                    "Pronoun resolver: rule-based or identity");
    cmd->add_option("--output", common.output_path,
                    "Output path (default: stdout)");
    cmd->add_flag("--commutative-extension", common.commutative_extension,
                  "Also resolve mirrored composition conflicts");
  };

  CLI::App* train = app.add_subcommand("train", "Train the sentence classifier");
  train->add_option("dataset", dataset_path, "Labeled fragment JSONL file")
      ->required();
  add_common(train);
  train->add_option("--vectorizer", vectorizer_name, "count or tfidf");
  train->add_option("--algorithm", algorithm_name,
                    "bernoulli_nb, multinomial_nb, knn, linear_svc, svc, ada, "
                    "random_forest or logistic");
  train->add_option("--seed", seed, "Split seed");
  train->add_flag("--all-algorithms", all_algorithms,
                  "Report accuracy for every algorithm");
  train->add_flag("--both-vectorizers", both_vectorizers,
                  "Report accuracy for both vectorizers");

  CLI::App* generate =
      app.add_subcommand("generate", "Generate a diagram from a specification");
  generate->add_option("input", input_path, "Specification text file")
      ->required();
  add_common(generate);
  generate->add_option("--format", format, "puml or json");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Compare generated diagrams with the dataset");
  evaluate->add_option("dataset", dataset_path, "Labeled fragment JSONL file")
      ->required();
  add_common(evaluate);
  evaluate->add_option("--report", report_format, "table or json");
  evaluate->add_option("--energy-threshold", energy_threshold,
                       "Spectrum energy threshold in (0,1]");

  CLI::App* classify =
      app.add_subcommand("classify", "Print the label of each sentence");
  classify->add_option("input", input_path, "Text file")->required();
  add_common(classify);

  CLI::App* compose_cmd =
      app.add_subcommand("compose", "Merge pre-serialized fragments");
  compose_cmd->add_option("input", input_path, "Fragment JSONL file")
      ->required();
  add_common(compose_cmd, false);
  compose_cmd->add_option("--format", format, "puml or json");
  compose_cmd->add_flag("--log", print_log, "Print merge events to stderr");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed())
      return run_train(dataset_path, common, vectorizer_name, algorithm_name,
                       seed, all_algorithms, both_vectorizers);
    if (generate->parsed()) return run_generate(input_path, common, format);
    if (evaluate->parsed())
      return run_evaluate(dataset_path, common, report_format, energy_threshold);
    if (classify->parsed()) return run_classify(input_path, common);
    if (compose_cmd->parsed())
      return run_compose(input_path, common, format, print_log);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
