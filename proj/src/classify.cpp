#include "nl2uml/classify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nl2uml {

using detail::AdaParams;
using detail::BernoulliParams;
using detail::ClassifierParams;
using detail::ForestParams;
using detail::KnnParams;
using detail::LinearParams;
using detail::MultinomialParams;
using detail::Stump;
using detail::SvcParams;
using detail::TreeNode;

namespace {

constexpr int kFormatVersion = 1;

// Class maps to -1/0, relationship to +1/1 in margins/label indices.
double label_sign(int label) { return label == 1 ? 1.0 : -1.0; }

int sign_to_label(double value) { return value > 0.0 ? 1 : 0; }

}  // namespace

std::string vector_method_name(VectorMethod method) {
  return method == VectorMethod::Count ? "count" : "tfidf";
}

VectorMethod vector_method_from_name(const std::string& name) {
  if (name == "count") return VectorMethod::Count;
  if (name == "tfidf") return VectorMethod::Tfidf;
  throw std::invalid_argument("unknown vectorizer method: " + name);
}

std::string classifier_algorithm_name(ClassifierAlgorithm a) {
  switch (a) {
    case ClassifierAlgorithm::BernoulliNb: return "bernoulli_nb";
    case ClassifierAlgorithm::MultinomialNb: return "multinomial_nb";
    case ClassifierAlgorithm::Knn: return "knn";
    case ClassifierAlgorithm::LinearSvc: return "linear_svc";
    case ClassifierAlgorithm::Svc: return "svc";
    case ClassifierAlgorithm::Ada: return "ada";
    case ClassifierAlgorithm::RandomForest: return "random_forest";
    case ClassifierAlgorithm::Logistic: return "logistic";
  }
  throw std::invalid_argument("unknown classifier algorithm");
}

ClassifierAlgorithm classifier_algorithm_from_name(const std::string& name) {
  for (ClassifierAlgorithm a : all_classifier_algorithms())
    if (classifier_algorithm_name(a) == name) return a;
  throw std::invalid_argument("unknown classifier algorithm: " + name);
}

std::vector<ClassifierAlgorithm> all_classifier_algorithms() {
  return {ClassifierAlgorithm::BernoulliNb, ClassifierAlgorithm::MultinomialNb,
          ClassifierAlgorithm::Knn,         ClassifierAlgorithm::LinearSvc,
          ClassifierAlgorithm::Svc,         ClassifierAlgorithm::Ada,
          ClassifierAlgorithm::RandomForest, ClassifierAlgorithm::Logistic};
}

std::vector<std::string> tokenize_for_vector(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      current.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

// --- Vectorizer --------------------------------------------------------

Vectorizer Vectorizer::fit(const std::vector<std::string>& corpus,
                           VectorMethod method) {
  if (corpus.empty())
    throw std::invalid_argument("cannot fit a vectorizer on an empty corpus");
  Vectorizer v;
  v.method_ = method;
  std::map<std::string, int> document_frequency;
  for (const auto& text : corpus) {
    std::map<std::string, bool> seen;
    for (const auto& token : tokenize_for_vector(text)) {
      v.vocabulary_.emplace(token, 0);
      if (!seen[token]) {
        seen[token] = true;
        ++document_frequency[token];
      }
    }
  }
  int index = 0;
  for (auto& [token, column] : v.vocabulary_) column = index++;
  if (method == VectorMethod::Tfidf) {
    const double n = static_cast<double>(corpus.size());
    v.idf_.resize(v.vocabulary_.size());
    for (const auto& [token, column] : v.vocabulary_) {
      const double df = static_cast<double>(document_frequency[token]);
      v.idf_[column] = std::log((1.0 + n) / (1.0 + df)) + 1.0;
    }
  }
  return v;
}

Eigen::RowVectorXd Vectorizer::transform(const std::string& text) const {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(vocabulary_size());
  for (const auto& token : tokenize_for_vector(text)) {
    const auto it = vocabulary_.find(token);
    if (it != vocabulary_.end()) row[it->second] += 1.0;
  }
  if (method_ == VectorMethod::Tfidf) {
    for (int i = 0; i < row.size(); ++i) row[i] *= idf_[i];
    const double norm = row.norm();
    if (norm > 0.0) row /= norm;
  }
  return row;
}

Eigen::MatrixXd Vectorizer::transform_all(
    const std::vector<std::string>& corpus) const {
  Eigen::MatrixXd out(corpus.size(), vocabulary_size());
  for (std::size_t i = 0; i < corpus.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = transform(corpus[i]);
  return out;
}

nlohmann::ordered_json Vectorizer::to_json() const {
  nlohmann::ordered_json j;
  j["method"] = vector_method_name(method_);
  nlohmann::ordered_json vocab = nlohmann::ordered_json::object();
  for (const auto& [token, column] : vocabulary_) vocab[token] = column;
  j["vocabulary"] = std::move(vocab);
  if (method_ == VectorMethod::Tfidf) j["idf"] = idf_;
  return j;
}

Vectorizer Vectorizer::from_json(const nlohmann::json& j) {
  Vectorizer v;
  v.method_ = vector_method_from_name(j.at("method").get<std::string>());
  for (const auto& [token, column] : j.at("vocabulary").items())
    v.vocabulary_[token] = column.get<int>();
  if (v.method_ == VectorMethod::Tfidf)
    v.idf_ = j.at("idf").get<std::vector<double>>();
  return v;
}

// --- Shared helpers ------------------------------------------------------

namespace {

// Largest-remainder stratified selection of round(fraction*n) training rows.
void stratified_split(const std::vector<int>& labels, double fraction,
                      unsigned seed, std::vector<int>* train_idx,
                      std::vector<int>* test_idx) {
  std::vector<std::vector<int>> per_label(2);
  for (std::size_t i = 0; i < labels.size(); ++i)
    per_label[labels[i]].push_back(static_cast<int>(i));

  const int total_train = static_cast<int>(
      std::floor(fraction * static_cast<double>(labels.size()) + 0.5));
  std::vector<int> take(2, 0);
  std::vector<std::pair<double, int>> remainders;
  int assigned = 0;
  for (int c = 0; c < 2; ++c) {
    const double exact = fraction * static_cast<double>(per_label[c].size());
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

  std::mt19937 rng(seed);
  for (int c = 0; c < 2; ++c) {
    std::shuffle(per_label[c].begin(), per_label[c].end(), rng);
    for (std::size_t i = 0; i < per_label[c].size(); ++i) {
      if (static_cast<int>(i) < take[c])
        train_idx->push_back(per_label[c][i]);
      else
        test_idx->push_back(per_label[c][i]);
    }
  }
  std::sort(train_idx->begin(), train_idx->end());
  std::sort(test_idx->begin(), test_idx->end());
}

// --- Naive Bayes -----------------------------------------------------------

BernoulliParams train_bernoulli(const Eigen::MatrixXd& x,
                                const std::vector<int>& y) {
  const int v = static_cast<int>(x.cols());
  BernoulliParams p;
  p.log_prob.resize(2, v);
  p.log_not_prob.resize(2, v);
  Eigen::Vector2d class_count = Eigen::Vector2d::Zero();
  Eigen::MatrixXd present = Eigen::MatrixXd::Zero(2, v);
  for (int i = 0; i < x.rows(); ++i) {
    class_count[y[i]] += 1.0;
    for (int t = 0; t < v; ++t)
      if (x(i, t) > 0.0) present(y[i], t) += 1.0;
  }
  for (int c = 0; c < 2; ++c) {
    p.log_prior[c] = std::log(class_count[c] / static_cast<double>(x.rows()));
    for (int t = 0; t < v; ++t) {
      const double prob = (present(c, t) + 1.0) / (class_count[c] + 2.0);
      p.log_prob(c, t) = std::log(prob);
      p.log_not_prob(c, t) = std::log(1.0 - prob);
    }
  }
  return p;
}

int predict_bernoulli(const BernoulliParams& p, const Eigen::RowVectorXd& x) {
  Eigen::Vector2d score = p.log_prior;
  for (int c = 0; c < 2; ++c)
    for (int t = 0; t < x.size(); ++t)
      score[c] += x[t] > 0.0 ? p.log_prob(c, t) : p.log_not_prob(c, t);
  return score[1] > score[0] ? 1 : 0;
}

MultinomialParams train_multinomial(const Eigen::MatrixXd& x,
                                    const std::vector<int>& y) {
  const int v = static_cast<int>(x.cols());
  MultinomialParams p;
  p.log_prob.resize(2, v);
  Eigen::Vector2d class_count = Eigen::Vector2d::Zero();
  Eigen::MatrixXd token_count = Eigen::MatrixXd::Zero(2, v);
  for (int i = 0; i < x.rows(); ++i) {
    class_count[y[i]] += 1.0;
    token_count.row(y[i]) += x.row(i);
  }
  for (int c = 0; c < 2; ++c) {
    p.log_prior[c] = std::log(class_count[c] / static_cast<double>(x.rows()));
    const double total = token_count.row(c).sum() + static_cast<double>(v);
    for (int t = 0; t < v; ++t)
      p.log_prob(c, t) = std::log((token_count(c, t) + 1.0) / total);
  }
  return p;
}

int predict_multinomial(const MultinomialParams& p,
                        const Eigen::RowVectorXd& x) {
  Eigen::Vector2d score = p.log_prior;
  for (int c = 0; c < 2; ++c) score[c] += x.dot(p.log_prob.row(c));
  return score[1] > score[0] ? 1 : 0;
}

// --- k nearest neighbors ---------------------------------------------------

int predict_knn(const KnnParams& p, const Eigen::RowVectorXd& x) {
  std::vector<std::pair<double, int>> dist;
  dist.reserve(p.train.rows());
  for (int i = 0; i < p.train.rows(); ++i)
    dist.push_back({(p.train.row(i) - x).squaredNorm(), i});
  const int k = std::min<int>(p.k, static_cast<int>(dist.size()));
  std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
  int votes = 0;
  for (int i = 0; i < k; ++i) votes += p.labels[dist[i].second];
  return 2 * votes > k ? 1 : 0;
}

// --- Linear SVM (dual coordinate descent, squared hinge) ------------------

LinearParams train_linear_svc(const Eigen::MatrixXd& x,
                              const std::vector<int>& y, unsigned seed) {
  const double c_param = 1.0;
  const double diag = 1.0 / (2.0 * c_param);
  const int n = static_cast<int>(x.rows());
  const int v = static_cast<int>(x.cols());
  Eigen::VectorXd w = Eigen::VectorXd::Zero(v + 1);
  std::vector<double> alpha(n, 0.0);
  std::vector<double> qii(n);
  for (int i = 0; i < n; ++i) qii[i] = x.row(i).squaredNorm() + 1.0 + diag;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937 rng(seed);
  for (int epoch = 0; epoch < 1000; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double max_violation = 0.0;
    for (int i : order) {
      const double yi = label_sign(y[i]);
      const double margin = w.head(v).dot(x.row(i)) + w[v];
      const double g = yi * margin - 1.0 + diag * alpha[i];
      const double pg = alpha[i] <= 0.0 ? std::min(g, 0.0) : g;
      max_violation = std::max(max_violation, std::abs(pg));
      if (std::abs(pg) < 1e-12) continue;
      const double updated = std::max(alpha[i] - g / qii[i], 0.0);
      const double delta = (updated - alpha[i]) * yi;
      alpha[i] = updated;
      w.head(v) += delta * x.row(i).transpose();
      w[v] += delta;
    }
    if (max_violation < 1e-4) break;
  }
  LinearParams p;
  p.weights = w.head(v);
  p.bias = w[v];
  return p;
}

// --- Logistic regression (Newton iterations, unpenalized intercept) -------

LinearParams train_logistic(const Eigen::MatrixXd& x,
                            const std::vector<int>& y) {
  const double c_param = 1.0;
  const int n = static_cast<int>(x.rows());
  const int v = static_cast<int>(x.cols());
  Eigen::MatrixXd xt(n, v + 1);
  xt.leftCols(v) = x;
  xt.col(v).setOnes();
  Eigen::VectorXd target(n);
  for (int i = 0; i < n; ++i) target[i] = static_cast<double>(y[i]);

  Eigen::VectorXd w = Eigen::VectorXd::Zero(v + 1);
  for (int iter = 0; iter < 50; ++iter) {
    const Eigen::VectorXd f = xt * w;
    Eigen::VectorXd prob(n);
    for (int i = 0; i < n; ++i) prob[i] = 1.0 / (1.0 + std::exp(-f[i]));
    Eigen::VectorXd grad = c_param * (xt.transpose() * (prob - target));
    grad.head(v) += w.head(v);
    if (grad.lpNorm<Eigen::Infinity>() < 1e-8) break;
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i)
      r[i] = std::max(prob[i] * (1.0 - prob[i]), 1e-10);
    Eigen::MatrixXd hess =
        c_param * (xt.transpose() * r.asDiagonal() * xt);
    for (int d = 0; d < v; ++d) hess(d, d) += 1.0;
    hess(v, v) += 1e-10;
    w -= hess.ldlt().solve(grad);
  }
  LinearParams p;
  p.weights = w.head(v);
  p.bias = w[v];
  return p;
}

int predict_linear(const LinearParams& p, const Eigen::RowVectorXd& x) {
  return sign_to_label(p.weights.dot(x) + p.bias);
}

// --- RBF-kernel SVM (sequential minimal optimization) ----------------------

SvcParams train_svc(const Eigen::MatrixXd& x, const std::vector<int>& y) {
  const double c_param = 1.0;
  const double tol = 1e-3;
  const int n = static_cast<int>(x.rows());
  const double mean = x.mean();
  const double variance = (x.array() - mean).square().mean();
  const double gamma =
      variance > 0.0 ? 1.0 / (static_cast<double>(x.cols()) * variance) : 1.0;

  Eigen::MatrixXd kernel(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double k = std::exp(-gamma * (x.row(i) - x.row(j)).squaredNorm());
      kernel(i, j) = k;
      kernel(j, i) = k;
    }

  Eigen::VectorXd ys(n);
  for (int i = 0; i < n; ++i) ys[i] = label_sign(y[i]);
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);  // decision values minus bias
  double bias = 0.0;

  int passes = 0;
  int guard = 0;
  while (passes < 5 && guard++ < 10000) {
    int changed = 0;
    for (int i = 0; i < n; ++i) {
      const double ei = f[i] + bias - ys[i];
      if (!((ys[i] * ei < -tol && alpha[i] < c_param) ||
            (ys[i] * ei > tol && alpha[i] > 0.0)))
        continue;
      int j = -1;
      double best_gap = -1.0;
      for (int cand = 0; cand < n; ++cand) {
        if (cand == i) continue;
        const double gap = std::abs(ei - (f[cand] + bias - ys[cand]));
        if (gap > best_gap) {
          best_gap = gap;
          j = cand;
        }
      }
      if (j < 0) continue;
      const double ej = f[j] + bias - ys[j];
      double low, high;
      if (ys[i] != ys[j]) {
        low = std::max(0.0, alpha[j] - alpha[i]);
        high = std::min(c_param, c_param + alpha[j] - alpha[i]);
      } else {
        low = std::max(0.0, alpha[i] + alpha[j] - c_param);
        high = std::min(c_param, alpha[i] + alpha[j]);
      }
      if (low >= high) continue;
      const double eta = 2.0 * kernel(i, j) - kernel(i, i) - kernel(j, j);
      if (eta >= 0.0) continue;
      double aj = alpha[j] - ys[j] * (ei - ej) / eta;
      aj = std::clamp(aj, low, high);
      if (std::abs(aj - alpha[j]) < 1e-5) continue;
      const double ai = alpha[i] + ys[i] * ys[j] * (alpha[j] - aj);
      const double delta_i = (ai - alpha[i]) * ys[i];
      const double delta_j = (aj - alpha[j]) * ys[j];

      const double b1 = bias - ei - delta_i * kernel(i, i) -
                        delta_j * kernel(i, j);
      const double b2 = bias - ej - delta_i * kernel(i, j) -
                        delta_j * kernel(j, j);
      if (ai > 0.0 && ai < c_param)
        bias = b1;
      else if (aj > 0.0 && aj < c_param)
        bias = b2;
      else
        bias = 0.5 * (b1 + b2);

      alpha[i] = ai;
      alpha[j] = aj;
      f += delta_i * kernel.col(i) + delta_j * kernel.col(j);
      ++changed;
    }
    passes = changed == 0 ? passes + 1 : 0;
  }

  SvcParams p;
  p.gamma = gamma;
  p.bias = bias;
  std::vector<int> support;
  for (int i = 0; i < n; ++i)
    if (alpha[i] > 1e-8) support.push_back(i);
  p.support.resize(static_cast<Eigen::Index>(support.size()), x.cols());
  p.dual_coef.resize(static_cast<Eigen::Index>(support.size()));
  for (std::size_t s = 0; s < support.size(); ++s) {
    p.support.row(static_cast<Eigen::Index>(s)) = x.row(support[s]);
    p.dual_coef[static_cast<Eigen::Index>(s)] =
        alpha[support[s]] * ys[support[s]];
  }
  return p;
}

int predict_svc(const SvcParams& p, const Eigen::RowVectorXd& x) {
  double value = p.bias;
  for (int s = 0; s < p.support.rows(); ++s)
    value += p.dual_coef[s] *
             std::exp(-p.gamma * (p.support.row(s) - x).squaredNorm());
  return sign_to_label(value);
}

// --- AdaBoost over decision stumps -----------------------------------------

double stump_output(const Stump& s, const Eigen::RowVectorXd& x) {
  const double side = x[s.feature] > s.threshold ? 1.0 : -1.0;
  return side * static_cast<double>(s.polarity);
}

AdaParams train_ada(const Eigen::MatrixXd& x, const std::vector<int>& y) {
  const int rounds = 50;
  const int n = static_cast<int>(x.rows());
  const int v = static_cast<int>(x.cols());

  std::vector<std::vector<int>> order(v);
  for (int f = 0; f < v; ++f) {
    order[f].resize(n);
    std::iota(order[f].begin(), order[f].end(), 0);
    std::stable_sort(order[f].begin(), order[f].end(),
                     [&](int a, int b) { return x(a, f) < x(b, f); });
  }

  Eigen::VectorXd weight = Eigen::VectorXd::Constant(n, 1.0 / n);
  AdaParams params;
  for (int round = 0; round < rounds; ++round) {
    Stump best;
    double best_err = std::numeric_limits<double>::infinity();
    double positive_weight = 0.0;  // weight of samples labeled relationship
    for (int i = 0; i < n; ++i)
      if (y[i] == 1) positive_weight += weight[i];

    for (int f = 0; f < v; ++f) {
      // err for "predict +1 above threshold": start below all values.
      double err = positive_weight;  // everything predicted -1
      // threshold below the minimum predicts +1 everywhere:
      double err_all_positive = 1.0 - positive_weight;
      if (err_all_positive < best_err) {
        best_err = err_all_positive;
        best = {f, x(order[f][0], f) - 1.0, 1, 0.0};
      }
      if (1.0 - err_all_positive < best_err) {
        best_err = 1.0 - err_all_positive;
        best = {f, x(order[f][0], f) - 1.0, -1, 0.0};
      }
      // sweep thresholds upward; samples at or below move to the -1 side.
      err = err_all_positive;
      for (int pos = 0; pos < n; ++pos) {
        const int sample = order[f][pos];
        if (y[sample] == 1)
          err += weight[sample];  // now predicted -1, truth +1
        else
          err -= weight[sample];
        const bool boundary =
            pos + 1 == n || x(order[f][pos + 1], f) > x(sample, f);
        if (!boundary) continue;
        const double threshold =
            pos + 1 == n ? x(sample, f) + 1.0
                         : 0.5 * (x(sample, f) + x(order[f][pos + 1], f));
        if (err < best_err) {
          best_err = err;
          best = {f, threshold, 1, 0.0};
        }
        if (1.0 - err < best_err) {
          best_err = 1.0 - err;
          best = {f, threshold, -1, 0.0};
        }
      }
    }

    best_err = std::clamp(best_err, 1e-12, 1.0 - 1e-12);
    if (best_err >= 0.5) break;
    best.alpha = 0.5 * std::log((1.0 - best_err) / best_err);
    params.stumps.push_back(best);

    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      const double h = stump_output(best, x.row(i));
      weight[i] *= std::exp(-best.alpha * label_sign(y[i]) * h);
      total += weight[i];
    }
    weight /= total;
    if (best_err <= 1e-10) break;
  }
  if (params.stumps.empty())
    params.stumps.push_back({0, -1.0, 1, 0.0});  // degenerate constant vote
  return params;
}

int predict_ada(const AdaParams& p, const Eigen::RowVectorXd& x) {
  double score = 0.0;
  for (const Stump& s : p.stumps) score += s.alpha * stump_output(s, x);
  return sign_to_label(score);
}

// --- Random forest ----------------------------------------------------

struct TreeBuilder {
  const Eigen::MatrixXd& x;
  const std::vector<int>& y;
  std::mt19937& rng;
  int max_features;
  std::vector<TreeNode> nodes;

  int majority(const std::vector<int>& samples) const {
    int ones = 0;
    for (int s : samples) ones += y[s];
    return 2 * ones > static_cast<int>(samples.size()) ? 1 : 0;
  }

  double gini(int ones, int total) const {
    if (total == 0) return 0.0;
    const double p = static_cast<double>(ones) / total;
    return 2.0 * p * (1.0 - p);
  }

  int build(std::vector<int> samples) {
    const int node_id = static_cast<int>(nodes.size());
    nodes.push_back({});
    int ones = 0;
    for (int s : samples) ones += y[s];
    const int n = static_cast<int>(samples.size());
    if (ones == 0 || ones == n || n < 2) {
      nodes[node_id].label = 2 * ones > n ? 1 : 0;
      return node_id;
    }

    std::vector<int> features(x.cols());
    std::iota(features.begin(), features.end(), 0);
    std::shuffle(features.begin(), features.end(), rng);
    features.resize(std::min<std::size_t>(features.size(),
                                          static_cast<std::size_t>(max_features)));

    const double parent = gini(ones, n);
    double best_gain = 1e-12;
    int best_feature = -1;
    double best_threshold = 0.0;
    for (int f : features) {
      std::vector<int> sorted = samples;
      std::stable_sort(sorted.begin(), sorted.end(),
                       [&](int a, int b) { return x(a, f) < x(b, f); });
      int left_ones = 0;
      for (int pos = 0; pos + 1 < n; ++pos) {
        left_ones += y[sorted[pos]];
        if (x(sorted[pos + 1], f) <= x(sorted[pos], f)) continue;
        const int left_n = pos + 1;
        const int right_n = n - left_n;
        const double child =
            (left_n * gini(left_ones, left_n) +
             right_n * gini(ones - left_ones, right_n)) /
            n;
        const double gain = parent - child;
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = f;
          best_threshold = 0.5 * (x(sorted[pos], f) + x(sorted[pos + 1], f));
        }
      }
    }
    if (best_feature < 0) {
      nodes[node_id].label = 2 * ones > n ? 1 : 0;
      return node_id;
    }

    std::vector<int> left, right;
    for (int s : samples) {
      if (x(s, best_feature) <= best_threshold)
        left.push_back(s);
      else
        right.push_back(s);
    }
    nodes[node_id].feature = best_feature;
    nodes[node_id].threshold = best_threshold;
    const int left_id = build(std::move(left));
    const int right_id = build(std::move(right));
    nodes[node_id].left = left_id;
    nodes[node_id].right = right_id;
    return node_id;
  }
};

ForestParams train_forest(const Eigen::MatrixXd& x, const std::vector<int>& y,
                          unsigned seed) {
  const int tree_count = 100;
  const int n = static_cast<int>(x.rows());
  const int max_features = std::max(
      1, static_cast<int>(std::sqrt(static_cast<double>(x.cols()))));
  ForestParams params;
  for (int t = 0; t < tree_count; ++t) {
    std::mt19937 rng(seed + 0x9e3779b9u * static_cast<unsigned>(t + 1));
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> bootstrap(n);
    for (int i = 0; i < n; ++i) bootstrap[i] = pick(rng);
    TreeBuilder builder{x, y, rng, max_features, {}};
    builder.build(std::move(bootstrap));
    params.trees.push_back(std::move(builder.nodes));
  }
  return params;
}

int tree_predict(const std::vector<TreeNode>& nodes,
                 const Eigen::RowVectorXd& x) {
  int node = 0;
  while (nodes[node].feature >= 0)
    node = x[nodes[node].feature] <= nodes[node].threshold ? nodes[node].left
                                                           : nodes[node].right;
  return nodes[node].label;
}

int predict_forest(const ForestParams& p, const Eigen::RowVectorXd& x) {
  int votes = 0;
  for (const auto& tree : p.trees) votes += tree_predict(tree, x);
  return 2 * votes > static_cast<int>(p.trees.size()) ? 1 : 0;
}

// --- Serialization helpers --------------------------------------------------

nlohmann::ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, int cols_hint = 0) {
  const int rows = static_cast<int>(j.size());
  const int cols = rows > 0 ? static_cast<int>(j.at(0).size()) : cols_hint;
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m(i, c) = j.at(i).at(c).get<double>();
  return m;
}

nlohmann::ordered_json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = j.at(i).get<double>();
  return v;
}

nlohmann::ordered_json params_to_json(const ClassifierParams& params) {
  nlohmann::ordered_json j;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BernoulliParams>) {
          j["log_prior"] = {p.log_prior[0], p.log_prior[1]};
          j["log_prob"] = matrix_to_json(p.log_prob);
          j["log_not_prob"] = matrix_to_json(p.log_not_prob);
        } else if constexpr (std::is_same_v<T, MultinomialParams>) {
          j["log_prior"] = {p.log_prior[0], p.log_prior[1]};
          j["log_prob"] = matrix_to_json(p.log_prob);
        } else if constexpr (std::is_same_v<T, KnnParams>) {
          j["k"] = p.k;
          j["train"] = matrix_to_json(p.train);
          j["labels"] = p.labels;
        } else if constexpr (std::is_same_v<T, LinearParams>) {
          j["weights"] = vector_to_json(p.weights);
          j["bias"] = p.bias;
        } else if constexpr (std::is_same_v<T, SvcParams>) {
          j["support"] = matrix_to_json(p.support);
          j["dual_coef"] = vector_to_json(p.dual_coef);
          j["bias"] = p.bias;
          j["gamma"] = p.gamma;
        } else if constexpr (std::is_same_v<T, AdaParams>) {
          nlohmann::ordered_json stumps = nlohmann::ordered_json::array();
          for (const Stump& s : p.stumps)
            stumps.push_back({{"feature", s.feature},
                              {"threshold", s.threshold},
                              {"polarity", s.polarity},
                              {"alpha", s.alpha}});
          j["stumps"] = std::move(stumps);
        } else if constexpr (std::is_same_v<T, ForestParams>) {
          nlohmann::ordered_json trees = nlohmann::ordered_json::array();
          for (const auto& tree : p.trees) {
            nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
            for (const TreeNode& node : tree)
              nodes.push_back({{"feature", node.feature},
                               {"threshold", node.threshold},
                               {"left", node.left},
                               {"right", node.right},
                               {"label", node.label}});
            trees.push_back(std::move(nodes));
          }
          j["trees"] = std::move(trees);
        }
      },
      params);
  return j;
}

ClassifierParams params_from_json(ClassifierAlgorithm algorithm,
                                  const nlohmann::json& j, int vocab_size) {
  switch (algorithm) {
    case ClassifierAlgorithm::BernoulliNb: {
      BernoulliParams p;
      p.log_prior << j.at("log_prior").at(0).get<double>(),
          j.at("log_prior").at(1).get<double>();
      p.log_prob = matrix_from_json(j.at("log_prob"), vocab_size);
      p.log_not_prob = matrix_from_json(j.at("log_not_prob"), vocab_size);
      return p;
    }
    case ClassifierAlgorithm::MultinomialNb: {
      MultinomialParams p;
      p.log_prior << j.at("log_prior").at(0).get<double>(),
          j.at("log_prior").at(1).get<double>();
      p.log_prob = matrix_from_json(j.at("log_prob"), vocab_size);
      return p;
    }
    case ClassifierAlgorithm::Knn: {
      KnnParams p;
      p.k = j.at("k").get<int>();
      p.train = matrix_from_json(j.at("train"), vocab_size);
      p.labels = j.at("labels").get<std::vector<int>>();
      return p;
    }
    case ClassifierAlgorithm::LinearSvc:
    case ClassifierAlgorithm::Logistic: {
      LinearParams p;
      p.weights = vector_from_json(j.at("weights"));
      p.bias = j.at("bias").get<double>();
      return p;
    }
    case ClassifierAlgorithm::Svc: {
      SvcParams p;
      p.support = matrix_from_json(j.at("support"), vocab_size);
      p.dual_coef = vector_from_json(j.at("dual_coef"));
      p.bias = j.at("bias").get<double>();
      p.gamma = j.at("gamma").get<double>();
      return p;
    }
    case ClassifierAlgorithm::Ada: {
      AdaParams p;
      for (const auto& s : j.at("stumps"))
        p.stumps.push_back({s.at("feature").get<int>(),
                            s.at("threshold").get<double>(),
                            s.at("polarity").get<int>(),
                            s.at("alpha").get<double>()});
      return p;
    }
    case ClassifierAlgorithm::RandomForest: {
      ForestParams p;
      for (const auto& tree : j.at("trees")) {
        std::vector<TreeNode> nodes;
        for (const auto& node : tree)
          nodes.push_back({node.at("feature").get<int>(),
                           node.at("threshold").get<double>(),
                           node.at("left").get<int>(),
                           node.at("right").get<int>(),
                           node.at("label").get<int>()});
        p.trees.push_back(std::move(nodes));
      }
      return p;
    }
  }
  throw std::invalid_argument("unknown classifier algorithm");
}

int predict_index(const ClassifierParams& params, const Eigen::RowVectorXd& x) {
  return std::visit(
      [&](const auto& p) -> int {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BernoulliParams>)
          return predict_bernoulli(p, x);
        else if constexpr (std::is_same_v<T, MultinomialParams>)
          return predict_multinomial(p, x);
        else if constexpr (std::is_same_v<T, KnnParams>)
          return predict_knn(p, x);
        else if constexpr (std::is_same_v<T, LinearParams>)
          return predict_linear(p, x);
        else if constexpr (std::is_same_v<T, SvcParams>)
          return predict_svc(p, x);
        else if constexpr (std::is_same_v<T, AdaParams>)
          return predict_ada(p, x);
        else
          return predict_forest(p, x);
      },
      params);
}

}  // namespace

// --- SentenceClassifier --------------------------------------------------

SentenceClassifier::Result SentenceClassifier::train(
    const std::vector<LabeledSentence>& data, VectorMethod method,
    ClassifierAlgorithm algorithm, unsigned split_seed) {
  if (data.size() < 10)
    throw std::invalid_argument(
        "training requires at least 10 labeled sentences");
  std::vector<int> labels(data.size());
  int relationship_count = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    labels[i] = data[i].label == SentenceLabel::Relationship ? 1 : 0;
    relationship_count += labels[i];
  }
  if (relationship_count == 0)
    throw std::invalid_argument(
        "training data contains no sentence labeled 'relationship'");
  if (relationship_count == static_cast<int>(data.size()))
    throw std::invalid_argument(
        "training data contains no sentence labeled 'class'");

  std::vector<int> train_idx, test_idx;
  stratified_split(labels, 0.8, split_seed, &train_idx, &test_idx);

  std::vector<std::string> train_texts;
  std::vector<int> train_labels;
  for (int i : train_idx) {
    train_texts.push_back(data[i].text);
    train_labels.push_back(labels[i]);
  }

  SentenceClassifier model;
  model.algorithm_ = algorithm;
  model.vectorizer_ = Vectorizer::fit(train_texts, method);
  const Eigen::MatrixXd x = model.vectorizer_.transform_all(train_texts);

  switch (algorithm) {
    case ClassifierAlgorithm::BernoulliNb:
      model.params_ = train_bernoulli(x, train_labels);
      break;
    case ClassifierAlgorithm::MultinomialNb:
      model.params_ = train_multinomial(x, train_labels);
      break;
    case ClassifierAlgorithm::Knn: {
      KnnParams p;
      p.k = 5;
      p.train = x;
      p.labels = train_labels;
      model.params_ = std::move(p);
      break;
    }
    case ClassifierAlgorithm::LinearSvc:
      model.params_ = train_linear_svc(x, train_labels, split_seed);
      break;
    case ClassifierAlgorithm::Svc:
      model.params_ = train_svc(x, train_labels);
      break;
    case ClassifierAlgorithm::Ada:
      model.params_ = train_ada(x, train_labels);
      break;
    case ClassifierAlgorithm::RandomForest:
      model.params_ = train_forest(x, train_labels, split_seed);
      break;
    case ClassifierAlgorithm::Logistic:
      model.params_ = train_logistic(x, train_labels);
      break;
  }

  int correct = 0;
  for (int i : test_idx) {
    const SentenceLabel got = model.predict(data[i].text);
    const int got_idx = got == SentenceLabel::Relationship ? 1 : 0;
    if (got_idx == labels[i]) ++correct;
  }
  Result result{std::move(model),
                test_idx.empty()
                    ? 0.0
                    : static_cast<double>(correct) / test_idx.size()};
  return result;
}

SentenceLabel SentenceClassifier::predict(const std::string& sentence) const {
  const Eigen::RowVectorXd x = vectorizer_.transform(sentence);
  return predict_index(params_, x) == 1 ? SentenceLabel::Relationship
                                        : SentenceLabel::Class;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

void SentenceClassifier::save(const std::string& path) const {
  nlohmann::ordered_json payload;
  payload["algorithm"] = classifier_algorithm_name(algorithm_);
  payload["vectorizer"] = vectorizer_.to_json();
  payload["parameters"] = params_to_json(params_);

  nlohmann::ordered_json file;
  file["format_version"] = kFormatVersion;
  file["checksum"] = fnv1a_hex(payload.dump());
  file["payload"] = std::move(payload);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << file.dump(2) << '\n';
}

SentenceClassifier SentenceClassifier::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  nlohmann::ordered_json file;  // keep file key order for the checksum
  try {
    in >> file;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("corrupt model file " + path + ": " + e.what());
  }
  if (!file.contains("format_version") ||
      file.at("format_version").get<int>() != kFormatVersion)
    throw std::runtime_error("unsupported model format version in " + path);
  const nlohmann::ordered_json payload = file.at("payload");
  if (fnv1a_hex(payload.dump()) != file.at("checksum").get<std::string>())
    throw std::runtime_error("model file checksum mismatch: " + path);

  SentenceClassifier model;
  model.algorithm_ = classifier_algorithm_from_name(
      payload.at("algorithm").get<std::string>());
  model.vectorizer_ = Vectorizer::from_json(payload.at("vectorizer"));
  model.params_ =
      params_from_json(model.algorithm_, payload.at("parameters"),
                       model.vectorizer_.vocabulary_size());
  return model;
}

}  // namespace nl2uml
