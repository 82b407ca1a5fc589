#include "nl2uml/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nl2uml/compose.hpp"

namespace nl2uml {

namespace {

std::string kind_name(FragmentKind kind) {
  return kind == FragmentKind::Class ? "class" : "relationship";
}

FragmentKind kind_from_name(const std::string& name) {
  if (name == "class") return FragmentKind::Class;
  if (name == "relationship") return FragmentKind::Relationship;
  throw std::runtime_error("unknown fragment kind: " + name);
}

void validate_record(const LabeledFragment& f) {
  if (f.model_id.empty()) throw std::runtime_error("empty model_id");
  if (f.fragment_id.empty()) throw std::runtime_error("empty fragment_id");
  if (f.english.empty()) throw std::runtime_error("empty english text");
  if (f.kind != f.uml.kind)
    throw std::runtime_error("kind label does not match the fragment kind");
  validate_fragment(f.uml);
}

}  // namespace

nlohmann::ordered_json fragment_record_to_json(const LabeledFragment& f) {
  nlohmann::ordered_json j;
  j["model_id"] = f.model_id;
  j["fragment_id"] = f.fragment_id;
  j["kind"] = kind_name(f.kind);
  j["english"] = f.english;
  j["uml"] = fragment_to_json(f.uml);
  return j;
}

LabeledFragment fragment_record_from_json(const nlohmann::json& j) {
  LabeledFragment f;
  f.model_id = j.at("model_id").get<std::string>();
  f.fragment_id = j.at("fragment_id").get<std::string>();
  f.kind = kind_from_name(j.at("kind").get<std::string>());
  f.english = j.at("english").get<std::string>();
  f.uml = fragment_from_json(j.at("uml"));
  validate_record(f);
  return f;
}

std::vector<LabeledFragment> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  std::vector<LabeledFragment> data;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      data.push_back(fragment_record_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_number) +
                               ": " + e.what());
    }
  }
  if (data.empty())
    throw std::runtime_error("dataset file holds no records: " + path);
  return data;
}

void save_dataset(const std::string& path,
                  const std::vector<LabeledFragment>& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path);
  for (const auto& f : data) out << fragment_record_to_json(f).dump() << '\n';
}

std::vector<LabeledFragment> import_dataset_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw std::runtime_error("not a directory: " + dir);
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".jsonl")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  std::vector<LabeledFragment> data;
  for (const auto& file : files) {
    const auto part = load_dataset(file);
    data.insert(data.end(), part.begin(), part.end());
  }
  if (data.empty())
    throw std::runtime_error("directory holds no dataset records: " + dir);
  return data;
}

DatasetStats dataset_stats(const std::vector<LabeledFragment>& data) {
  DatasetStats stats;
  std::set<std::string> models;
  for (const auto& f : data) {
    ++stats.fragments;
    models.insert(f.model_id);
    if (f.kind == FragmentKind::Class)
      ++stats.class_fragments;
    else
      ++stats.relationship_fragments;
  }
  stats.models = static_cast<int>(models.size());
  return stats;
}

std::vector<ModelGroup> group_by_model(
    const std::vector<LabeledFragment>& data) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const LabeledFragment*>> members;
  for (const auto& f : data) {
    auto [it, inserted] = members.try_emplace(f.model_id);
    if (inserted) order.push_back(f.model_id);
    it->second.push_back(&f);
  }
  std::vector<ModelGroup> groups;
  for (const auto& model_id : order) {
    ModelGroup group;
    group.model_id = model_id;
    std::vector<Fragment> fragments;
    for (const LabeledFragment* f : members[model_id]) {
      if (!group.specification.empty()) group.specification += ' ';
      group.specification += f->english;
      fragments.push_back(f->uml);
    }
    group.truth = compose(fragments);
    groups.push_back(std::move(group));
  }
  return groups;
}

void split_dataset(const std::vector<LabeledFragment>& data,
                   double train_fraction, unsigned seed,
                   std::vector<LabeledFragment>* train,
                   std::vector<LabeledFragment>* test) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("train fraction must lie strictly in (0,1)");
  std::vector<std::vector<int>> per_kind(2);
  for (std::size_t i = 0; i < data.size(); ++i)
    per_kind[data[i].kind == FragmentKind::Relationship ? 1 : 0].push_back(
        static_cast<int>(i));

  const int total_train = static_cast<int>(
      std::floor(train_fraction * static_cast<double>(data.size()) + 0.5));
  std::vector<int> take(2, 0);
  std::vector<std::pair<double, int>> remainders;
  int assigned = 0;
  for (int c = 0; c < 2; ++c) {
    const double exact =
        train_fraction * static_cast<double>(per_kind[c].size());
    take[c] = static_cast<int>(std::floor(exact));
    assigned += take[c];
    remainders.push_back({exact - std::floor(exact), c});
  }
  std::sort(remainders.begin(), remainders.end(), [](auto a, auto b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (int i = 0; assigned < total_train && i < 2; ++i, ++assigned)
    ++take[remainders[i].second];

  std::vector<bool> in_train(data.size(), false);
  std::mt19937 rng(seed);
  for (int c = 0; c < 2; ++c) {
    std::shuffle(per_kind[c].begin(), per_kind[c].end(), rng);
    for (int i = 0; i < take[c] && i < static_cast<int>(per_kind[c].size());
         ++i)
      in_train[per_kind[c][i]] = true;
  }
  train->clear();
  test->clear();
  for (std::size_t i = 0; i < data.size(); ++i)
    (in_train[i] ? train : test)->push_back(data[i]);
}

std::vector<LabeledSentence> labeled_sentences(
    const std::vector<LabeledFragment>& data) {
  std::vector<LabeledSentence> out;
  out.reserve(data.size());
  for (const auto& f : data)
    out.push_back({f.english, f.kind == FragmentKind::Relationship
                                  ? SentenceLabel::Relationship
                                  : SentenceLabel::Class});
  return out;
}

}  // namespace nl2uml
