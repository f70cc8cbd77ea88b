#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "topictrack/corpus.hpp"
#include "topictrack/divergence.hpp"
#include "topictrack/embedding.hpp"

namespace topictrack {

struct DriftConfig {
  double drift_rate = 0.0;    // fraction of tokens replaced, in [0, 1]
  double weight_noise = 0.0;  // multiplicative jitter half-width, >= 0
  std::uint64_t seed = 0;

  void validate() const;
};

/// Copy of `topic` with ceil(drift_rate * token_count) rng-chosen tokens
/// replaced by their nearest store neighbor outside the topic, and every
/// weight scaled by 1 + U(-weight_noise, weight_noise) (floored at zero).
/// A token without any replacement candidate is kept.
Topic generate_drifted_pair(const Topic& topic, const DriftConfig& cfg, const EmbeddingStore& store,
                            std::mt19937_64& rng);

struct BenchThresholds {
  double js = 0.4;
  double sd = 0.1;
};

struct BenchResult {
  Method method = Method::JS;
  double drift_rate = 0.0;
  int ground_truth = 0;   // number of true links (= n_topics)
  int links = 0;          // pairs emitted by the matcher
  int correct = 0;        // emitted pairs that are true links
  double accuracy = 0.0;  // correct / ground_truth
  double precision = 0.0;  // correct / links, 0 when no links
  double recall = 0.0;
  double mean_correct_score = 0.0;  // NaN when nothing was recovered
  /// Score of each true pair, NaN where incomparable; indexed like slice A.
  std::vector<double> true_pair_scores;
};

/// Builds n_topics synthetic topics with disjoint vocabularies drawn from
/// the store, drifts a copy of each, tracks under JS and SD, and scores both
/// against the identity ground truth. Returns {JS result, SD result}.
std::vector<BenchResult> run_benchmark(int n_topics, const DriftConfig& cfg,
                                       const EmbeddingStore& store,
                                       const BenchThresholds& thresholds = {},
                                       int words_per_topic = 10);

}  // namespace topictrack
