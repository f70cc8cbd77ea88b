#pragma once

// Test-only reference implementations, written independently of the
// library code they check.

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "topictrack/divergence.hpp"
#include "topictrack/tracker.hpp"

namespace oracle {

/// JS from its definition with natural logs, KL terms summed separately,
/// converted to bits at the end. p and q are parallel arrays over one support.
inline double js(const std::vector<double>& p, const std::vector<double>& q) {
  double kl_p = 0.0, kl_q = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0) kl_p += p[i] * std::log(p[i] / m);
    if (q[i] > 0) kl_q += q[i] * std::log(q[i] / m);
  }
  return (0.5 * kl_p + 0.5 * kl_q) / std::log(2.0);
}

/// js({.5, .5}, {1, 0}) frozen; agrees with a 30-digit evaluation
/// (0.311278124459132863909...).
inline constexpr double kHandJs = 0.31127812445913283;

using Link = std::tuple<std::string, std::string, double>;

inline std::vector<Link> links(const topictrack::Matching& m) {
  std::vector<Link> out;
  for (const auto& p : m.pairs) out.emplace_back(p.topic_a, p.topic_b, p.score);
  return out;
}

/// Repeatedly takes the global minimum over still-free rows and columns,
/// compared by (score, row id, col id), until it fails the threshold.
inline std::vector<Link> reference_sweep(const topictrack::ScoreMatrix& m, double threshold) {
  const auto n = m.scores().rows();
  const auto k = m.scores().cols();
  std::vector<bool> row_free(n, true), col_free(k, true);
  std::vector<Link> out;
  while (true) {
    std::optional<std::pair<Eigen::Index, Eigen::Index>> best;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!row_free[i]) continue;
      for (Eigen::Index j = 0; j < k; ++j) {
        if (!col_free[j] || std::isnan(m(i, j))) continue;
        if (!best) {
          best = {i, j};
          continue;
        }
        const auto [bi, bj] = *best;
        const bool better =
            m(i, j) < m(bi, bj) ||
            (m(i, j) == m(bi, bj) &&
             (m.rows()[i] < m.rows()[bi] || (m.rows()[i] == m.rows()[bi] && m.cols()[j] < m.cols()[bj])));
        if (better) best = {i, j};
      }
    }
    if (!best || !(m(best->first, best->second) < threshold)) break;
    row_free[best->first] = false;
    col_free[best->second] = false;
    out.emplace_back(m.rows()[best->first], m.cols()[best->second], m(best->first, best->second));
  }
  return out;
}

/// Up to 8x8, ids not in index order, ~5% incomparable cells, half the
/// matrices on a coarse grid so ties are common.
inline topictrack::ScoreMatrix random_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 8);
  const int n = dim(rng), k = dim(rng);
  std::vector<std::string> rows, cols;
  for (int i = 0; i < n; ++i) rows.push_back("r" + std::to_string((i * 5 + 3) % 11));
  for (int j = 0; j < k; ++j) cols.push_back("c" + std::to_string((j * 7 + 2) % 13));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> coarse(0, 5);
  const bool ties = rng() % 2 == 0;
  Eigen::MatrixXd s(n, k);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double r = u(rng);
    s(i) = r < 0.05 ? std::numeric_limits<double>::quiet_NaN() : (ties ? coarse(rng) / 10.0 : u(rng));
  }
  return topictrack::ScoreMatrix(rows, cols, s, topictrack::Method::JS);
}

}  // namespace oracle
