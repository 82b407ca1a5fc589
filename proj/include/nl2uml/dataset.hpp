#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nl2uml/classify.hpp"
#include "nl2uml/uml.hpp"

namespace nl2uml {

// --- Labeled fragment corpus --------------------------------------------
//
// Canonical on-disk form: one JSON-lines file, one record per line:
//   {"model_id": ..., "fragment_id": ..., "kind": "class"|"relationship",
//    "english": ..., "uml": <fragment>}

struct LabeledFragment {
  std::string model_id;
  std::string fragment_id;
  FragmentKind kind = FragmentKind::Class;
  std::string english;
  Fragment uml;
};

struct ModelGroup {
  std::string model_id;
  std::string specification;  // english texts joined with single spaces
  UmlDiagram truth;           // fragments composed in dataset order
};

struct DatasetStats {
  int fragments = 0;
  int models = 0;
  int class_fragments = 0;
  int relationship_fragments = 0;
};

nlohmann::ordered_json fragment_record_to_json(const LabeledFragment& f);
LabeledFragment fragment_record_from_json(const nlohmann::json& j);

// Reads and validates every record (kind matches the fragment, english
// non-empty, valid fragment payload). Throws std::runtime_error naming the
// offending line, or on an empty file.
std::vector<LabeledFragment> load_dataset(const std::string& path);

void save_dataset(const std::string& path,
                  const std::vector<LabeledFragment>& data);

// Merges every *.jsonl file under dir (sorted by filename) into one
// canonical record list. Throws when the directory yields no records.
std::vector<LabeledFragment> import_dataset_directory(const std::string& dir);

DatasetStats dataset_stats(const std::vector<LabeledFragment>& data);

// One group per distinct model_id, in first-appearance order.
std::vector<ModelGroup> group_by_model(const std::vector<LabeledFragment>& data);

// Deterministic stratified-by-kind split; the train side receives
// round(train_fraction * n) records distributed by largest remainder.
// Throws std::invalid_argument unless 0 < train_fraction < 1.
void split_dataset(const std::vector<LabeledFragment>& data,
                   double train_fraction, unsigned seed,
                   std::vector<LabeledFragment>* train,
                   std::vector<LabeledFragment>* test);

// Classifier view: english text paired with the fragment kind.
std::vector<LabeledSentence> labeled_sentences(
    const std::vector<LabeledFragment>& data);

}  // namespace nl2uml
