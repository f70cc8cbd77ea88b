#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "topictrack/bench.hpp"
#include "topictrack/divergence.hpp"
#include "topictrack/tracker.hpp"

namespace topictrack {

inline constexpr int kReportSchemaVersion = 1;

using Json = nlohmann::ordered_json;

Json to_json(const LinkedPair& p);
Json to_json(const Matching& m);
Json to_json(const OverlapReport& r);
Json to_json(const TrackConfig& c);

/// Row/column ids plus the score grid; incomparable cells become null.
Json to_json(const ScoreMatrix& m);

/// Tracker report document for one pair of slices.
Json track_report(const std::string& label_a, const std::string& label_b, const TrackConfig& config,
                  const TrackResult& result);

struct BenchRun {
  int n_topics = 0;
  int words_per_topic = 0;
  double weight_noise = 0.0;
  std::uint64_t seed = 0;
  BenchThresholds thresholds;
  std::vector<BenchResult> rows;  // one per (drift rate, method)
};

/// Benchmark results table.
Json bench_report(const BenchRun& run);

/// Serialized form written to disk: two-space indent, trailing newline.
std::string render(const Json& doc);

}  // namespace topictrack
