#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "nl2uml/patterns.hpp"

namespace nl2uml {

// --- Sentence vectorization ----------------------------------------------

enum class VectorMethod { Count, Tfidf };

std::string vector_method_name(VectorMethod method);
VectorMethod vector_method_from_name(const std::string& name);

// Lowercases and splits on non-alphanumeric characters; keeps every
// non-empty token.
std::vector<std::string> tokenize_for_vector(const std::string& text);

class Vectorizer {
 public:
  // Learns the vocabulary (sorted token order) from the corpus; TFIDF
  // additionally learns smoothed inverse document frequencies
  // ln((1+n)/(1+df)) + 1. Throws std::invalid_argument on an empty corpus.
  static Vectorizer fit(const std::vector<std::string>& corpus,
                        VectorMethod method);

  VectorMethod method() const { return method_; }
  const std::map<std::string, int>& vocabulary() const { return vocabulary_; }
  int vocabulary_size() const { return static_cast<int>(vocabulary_.size()); }

  // COUNT: raw token counts. TFIDF: counts * idf, then L2-normalized.
  // Unknown tokens are dropped.
  Eigen::RowVectorXd transform(const std::string& text) const;
  Eigen::MatrixXd transform_all(const std::vector<std::string>& corpus) const;

  nlohmann::ordered_json to_json() const;
  static Vectorizer from_json(const nlohmann::json& j);

 private:
  VectorMethod method_ = VectorMethod::Tfidf;
  std::map<std::string, int> vocabulary_;
  std::vector<double> idf_;  // empty for Count
};

// --- Classifiers -----------------------------------------------------------

enum class ClassifierAlgorithm {
  BernoulliNb,
  MultinomialNb,
  Knn,
  LinearSvc,
  Svc,
  Ada,
  RandomForest,
  Logistic,
};

std::string classifier_algorithm_name(ClassifierAlgorithm a);
ClassifierAlgorithm classifier_algorithm_from_name(const std::string& name);
std::vector<ClassifierAlgorithm> all_classifier_algorithms();

struct LabeledSentence {
  std::string text;
  SentenceLabel label = SentenceLabel::Class;
};

namespace detail {

// Learned state per algorithm. Labels are encoded 0 = class,
// 1 = relationship; margins use y = -1 for class, +1 for relationship.

struct BernoulliParams {
  Eigen::Vector2d log_prior;
  Eigen::MatrixXd log_prob;      // 2 x V, log P(token present | label)
  Eigen::MatrixXd log_not_prob;  // 2 x V
};

struct MultinomialParams {
  Eigen::Vector2d log_prior;
  Eigen::MatrixXd log_prob;  // 2 x V
};

struct KnnParams {
  int k = 5;
  Eigen::MatrixXd train;  // one row per memorized sentence
  std::vector<int> labels;
};

struct LinearParams {  // shared by the linear SVM and logistic regression
  Eigen::VectorXd weights;
  double bias = 0.0;
};

struct SvcParams {
  Eigen::MatrixXd support;     // support vectors, one per row
  Eigen::VectorXd dual_coef;   // alpha_i * y_i
  double bias = 0.0;
  double gamma = 1.0;
};

struct Stump {
  int feature = 0;
  double threshold = 0.0;
  int polarity = 1;  // prediction sign for values above the threshold
  double alpha = 0.0;
};

struct AdaParams {
  std::vector<Stump> stumps;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int label = 0;
};

struct ForestParams {
  std::vector<std::vector<TreeNode>> trees;
};

using ClassifierParams =
    std::variant<BernoulliParams, MultinomialParams, KnnParams, LinearParams,
                 SvcParams, AdaParams, ForestParams>;

}  // namespace detail

class SentenceClassifier {
 public:
  struct Result;

  // Stratified seeded 80/20 split; the vectorizer is fitted on the training
  // portion only. Deterministic for fixed inputs. Throws
  // std::invalid_argument on fewer than 10 sentences or single-label data
  // (the message names the missing label).
  static Result train(const std::vector<LabeledSentence>& data,
                      VectorMethod method, ClassifierAlgorithm algorithm,
                      unsigned split_seed);

  SentenceLabel predict(const std::string& sentence) const;

  ClassifierAlgorithm algorithm() const { return algorithm_; }
  const Vectorizer& vectorizer() const { return vectorizer_; }

  // Single-file JSON container: format version, vectorizer, parameters and
  // an integrity checksum. load throws std::runtime_error on a missing
  // file, version mismatch, or checksum failure.
  void save(const std::string& path) const;
  static SentenceClassifier load(const std::string& path);

 private:
  friend struct ClassifierAccess;

  ClassifierAlgorithm algorithm_ = ClassifierAlgorithm::BernoulliNb;
  Vectorizer vectorizer_;
  detail::ClassifierParams params_;
};

struct SentenceClassifier::Result {
  SentenceClassifier model;
  double held_out_accuracy = 0.0;
};

// FNV-1a 64-bit hash, hex-encoded; used as the model file checksum.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace nl2uml
