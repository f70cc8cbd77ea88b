#pragma once

#include <optional>
#include <string>
#include <vector>

#include "topictrack/corpus.hpp"
#include "topictrack/divergence.hpp"
#include "topictrack/embedding.hpp"

namespace topictrack {

namespace defaults {
inline constexpr int kTopWords = 100;
inline constexpr int kTopEntities = 15;
inline constexpr int kMaxLevel = 2;
inline constexpr double kJsThreshold = 0.4;
inline constexpr double kSdThreshold = 0.1;
}  // namespace defaults

struct LinkedPair {
  std::string topic_a;
  std::string topic_b;
  double score = 0.0;
  Method method = Method::JS;
};

/// One-to-one links between the rows and columns of a score matrix.
struct Matching {
  std::vector<LinkedPair> pairs;  // in acceptance order (ascending score)
  Method method = Method::JS;
  double threshold = 0.0;
  std::vector<std::string> unmatched_a;
  std::vector<std::string> unmatched_b;
};

/// Greedy sweep: comparable entries sorted by (score, row id, col id); an
/// entry is accepted iff both endpoints are free and score < threshold.
Matching greedy_match(const ScoreMatrix& matrix, double threshold);

struct SharedPair {
  std::string topic_a;
  std::string topic_b;
  double js_score = 0.0;
  double sd_score = 0.0;
};

/// A JS link and an SD link that differ but share exactly one endpoint.
struct ConflictingPair {
  LinkedPair js;
  LinkedPair sd;
};

/// Three-way comparison of the links found by the two methods.
struct OverlapReport {
  std::vector<SharedPair> shared;
  std::vector<ConflictingPair> conflicting;
  std::vector<LinkedPair> exclusive_js;
  std::vector<LinkedPair> exclusive_sd;
};

/// Both matchings must cover the same two topic sets (ValidationError otherwise).
/// JS-only links are visited in ascending score order and each takes the
/// lowest-scoring unused SD-only link sharing one endpoint with it.
OverlapReport categorize_overlap(const Matching& js, const Matching& sd);

enum class MethodSelection { JS, SD, Both };

struct TrackConfig {
  MethodSelection methods = MethodSelection::Both;
  double js_threshold = defaults::kJsThreshold;
  double sd_threshold = defaults::kSdThreshold;
  int top_words = defaults::kTopWords;
  int top_entities = defaults::kTopEntities;
  int max_level = defaults::kMaxLevel;

  bool runs(Method m) const {
    return methods == MethodSelection::Both ||
           (m == Method::JS ? methods == MethodSelection::JS : methods == MethodSelection::SD);
  }
  /// Throws ConfigError on non-positive thresholds or sizes.
  void validate() const;
};

struct TrackResult {
  std::optional<Matching> js;
  std::optional<Matching> sd;
  std::optional<ScoreMatrix> js_matrix;
  std::optional<ScoreMatrix> sd_matrix;
  std::optional<OverlapReport> overlap;  // only when both methods ran
};

/// Flattens both slices to config.max_level, truncates every topic, scores
/// and matches under each requested method.
TrackResult track(const TopicSlice& slice_a, const TopicSlice& slice_b, const TrackConfig& config,
                  const EmbeddingStore* store = nullptr);

}  // namespace topictrack
