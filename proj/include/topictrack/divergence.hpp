#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "topictrack/corpus.hpp"
#include "topictrack/embedding.hpp"
#include "topictrack/error.hpp"

namespace topictrack {

enum class Method { JS, SD };

std::string_view to_string(Method m);

struct Score {
  double value = 0.0;
  Method method = Method::JS;
};

/// 1 - cos(u, v), clamped to [0, 2].
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine_distance(const Eigen::MatrixBase<DerivedA>& u,
                                          const Eigen::MatrixBase<DerivedB>& v) {
  using Scalar = typename DerivedA::Scalar;
  if (u.size() != v.size()) throw UndefinedDistanceError("cosine distance of vectors of different size");
  const Scalar nu = u.norm();
  const Scalar nv = v.norm();
  if (!(nu > Scalar(0)) || !(nv > Scalar(0)))
    throw UndefinedDistanceError("cosine distance of a zero-norm vector");
  const Scalar d = Scalar(1) - u.dot(v) / (nu * nv);
  return std::clamp(d, Scalar(0), Scalar(2));
}

/// Cosine distance between the two topic embeddings. Throws
/// ZeroEmbeddingError when either topic embeds to the zero vector.
template <typename Scalar>
Score semantic_divergence(const BasicEmbeddingStore<Scalar>& store, const Topic& t1, const Topic& t2) {
  const auto e1 = topic_embedding(store, t1);
  const auto e2 = topic_embedding(store, t2);
  return {static_cast<double>(cosine_distance(e1.vector, e2.vector)), Method::SD};
}

/// Base-2 Jensen-Shannon divergence of two distributions over the union of
/// their supports. Symmetric bit-for-bit; result in [0, 1].
double js_divergence(const Distribution& p, const Distribution& q);

/// JS divergence of the combined word/entity distributions. Throws
/// DegenerateTopicError for topics without positive weight.
Score js_divergence(const Topic& t1, const Topic& t2);

/// Pairwise scores between two topic lists. Incomparable entries (zero
/// embedding, degenerate distribution) hold NaN.
class ScoreMatrix {
 public:
  ScoreMatrix(std::vector<std::string> rows, std::vector<std::string> cols, Eigen::MatrixXd scores,
              Method method);

  const std::vector<std::string>& rows() const { return rows_; }
  const std::vector<std::string>& cols() const { return cols_; }
  const Eigen::MatrixXd& scores() const { return scores_; }
  Method method() const { return method_; }

  double operator()(Eigen::Index i, Eigen::Index j) const { return scores_(i, j); }
  bool comparable(Eigen::Index i, Eigen::Index j) const { return !std::isnan(scores_(i, j)); }

 private:
  std::vector<std::string> rows_;
  std::vector<std::string> cols_;
  Eigen::MatrixXd scores_;
  Method method_;
};

/// Scores every (a, b) pair under `method`. SD requires `store`.
ScoreMatrix score_matrix(const std::vector<Topic>& topics_a, const std::vector<Topic>& topics_b,
                         Method method, const EmbeddingStore* store = nullptr);

}  // namespace topictrack
