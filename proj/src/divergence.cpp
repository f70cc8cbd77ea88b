#include "topictrack/divergence.hpp"

#include <cmath>
#include <optional>

namespace topictrack {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::JS: return "js";
    case Method::SD: return "sd";
  }
  return "unknown";
}

namespace {

// Contribution of one token: x * log2(x / m), with 0 * log(0 / m) = 0.
double kl_term(double x, double m) { return x > 0.0 ? x * std::log2(x / m) : 0.0; }

}  // namespace

double js_divergence(const Distribution& p, const Distribution& q) {
  double total = 0.0;
  auto accumulate = [&](double pw, double qw) {
    const double m = (pw + qw) / 2.0;
    total += 0.5 * (kl_term(pw, m) + kl_term(qw, m));
  };

  // Walk the union of supports in token order so that swapping p and q
  // visits identical terms in identical order.
  auto ip = p.begin();
  auto iq = q.begin();
  while (ip != p.end() || iq != q.end()) {
    if (iq == q.end() || (ip != p.end() && ip->first < iq->first)) {
      accumulate(ip->second, 0.0);
      ++ip;
    } else if (ip == p.end() || iq->first < ip->first) {
      accumulate(0.0, iq->second);
      ++iq;
    } else {
      accumulate(ip->second, iq->second);
      ++ip;
      ++iq;
    }
  }
  return std::clamp(total, 0.0, 1.0);
}

Score js_divergence(const Topic& t1, const Topic& t2) {
  return {js_divergence(combined_distribution(t1), combined_distribution(t2)), Method::JS};
}

ScoreMatrix::ScoreMatrix(std::vector<std::string> rows, std::vector<std::string> cols,
                         Eigen::MatrixXd scores, Method method)
    : rows_(std::move(rows)), cols_(std::move(cols)), scores_(std::move(scores)), method_(method) {
  if (scores_.rows() != static_cast<Eigen::Index>(rows_.size()) ||
      scores_.cols() != static_cast<Eigen::Index>(cols_.size()))
    throw ValidationError("score matrix shape does not match its row/column ids");
}

namespace {

std::vector<std::string> ids_of(const std::vector<Topic>& topics) {
  std::vector<std::string> ids;
  ids.reserve(topics.size());
  for (const Topic& t : topics) ids.push_back(t.id);
  return ids;
}

template <typename Repr, typename Make, typename Distance>
Eigen::MatrixXd fill(const std::vector<Topic>& a, const std::vector<Topic>& b, Make make,
                     Distance distance) {
  auto represent = [&](const std::vector<Topic>& topics) {
    std::vector<std::optional<Repr>> out;
    out.reserve(topics.size());
    for (const Topic& t : topics) {
      try {
        out.emplace_back(make(t));
      } catch (const DegenerateTopicError&) {
        out.emplace_back(std::nullopt);
      } catch (const ZeroEmbeddingError&) {
        out.emplace_back(std::nullopt);
      }
    }
    return out;
  };
  const auto ra = represent(a);
  const auto rb = represent(b);

  Eigen::MatrixXd m(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          (ra[i] && rb[j]) ? distance(*ra[i], *rb[j]) : std::numeric_limits<double>::quiet_NaN();
  return m;
}

}  // namespace

ScoreMatrix score_matrix(const std::vector<Topic>& topics_a, const std::vector<Topic>& topics_b,
                         Method method, const EmbeddingStore* store) {
  if (topics_a.empty() || topics_b.empty())
    throw ConfigError("score matrix needs non-empty topic lists");

  Eigen::MatrixXd scores;
  if (method == Method::JS) {
    scores = fill<Distribution>(
        topics_a, topics_b, [](const Topic& t) { return combined_distribution(t); },
        [](const Distribution& p, const Distribution& q) { return js_divergence(p, q); });
  } else {
    if (store == nullptr) throw ConfigError("semantic divergence requires an embedding store");
    scores = fill<EmbeddingStore::Vector>(
        topics_a, topics_b, [store](const Topic& t) { return topic_embedding(*store, t).vector; },
        [](const EmbeddingStore::Vector& u, const EmbeddingStore::Vector& v) {
          return cosine_distance(u, v);
        });
  }
  return ScoreMatrix(ids_of(topics_a), ids_of(topics_b), std::move(scores), method);
}

}  // namespace topictrack
