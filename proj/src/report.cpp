#include "topictrack/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace topictrack {

namespace {

std::string selection_name(MethodSelection s) {
  switch (s) {
    case MethodSelection::JS: return "js";
    case MethodSelection::SD: return "sd";
    case MethodSelection::Both: return "both";
  }
  return "unknown";
}

Json pair_list(const std::vector<LinkedPair>& pairs) {
  Json out = Json::array();
  for (const auto& p : pairs) out.push_back(to_json(p));
  return out;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(const LinkedPair& p) {
  return Json{{"topic_a", p.topic_a}, {"topic_b", p.topic_b}, {"score", p.score}};
}

Json to_json(const Matching& m) {
  return Json{{"method", std::string(to_string(m.method))},
              {"threshold", m.threshold},
              {"pair_count", m.pairs.size()},
              {"pairs", pair_list(m.pairs)},
              {"unmatched_a", m.unmatched_a},
              {"unmatched_b", m.unmatched_b}};
}

Json to_json(const OverlapReport& r) {
  Json shared = Json::array();
  for (const auto& s : r.shared)
    shared.push_back(Json{{"topic_a", s.topic_a},
                          {"topic_b", s.topic_b},
                          {"js_score", s.js_score},
                          {"sd_score", s.sd_score}});
  Json conflicting = Json::array();
  for (const auto& c : r.conflicting)
    conflicting.push_back(Json{{"js", to_json(c.js)}, {"sd", to_json(c.sd)}});

  return Json{{"counts",
               Json{{"shared", r.shared.size()},
                    {"conflicting", r.conflicting.size()},
                    {"exclusive_js", r.exclusive_js.size()},
                    {"exclusive_sd", r.exclusive_sd.size()}}},
              {"shared", std::move(shared)},
              {"conflicting", std::move(conflicting)},
              {"exclusive_js", pair_list(r.exclusive_js)},
              {"exclusive_sd", pair_list(r.exclusive_sd)}};
}

Json to_json(const TrackConfig& c) {
  return Json{{"method", selection_name(c.methods)},
              {"js_threshold", c.js_threshold},
              {"sd_threshold", c.sd_threshold},
              {"top_words", c.top_words},
              {"top_entities", c.top_entities},
              {"max_level", c.max_level}};
}

Json to_json(const ScoreMatrix& m) {
  Json grid = Json::array();
  for (Eigen::Index i = 0; i < m.scores().rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.scores().cols(); ++j) row.push_back(number_or_null(m(i, j)));
    grid.push_back(std::move(row));
  }
  return Json{{"method", std::string(to_string(m.method()))},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"scores", std::move(grid)}};
}

Json track_report(const std::string& label_a, const std::string& label_b, const TrackConfig& config,
                  const TrackResult& result) {
  Json methods = Json::object();
  if (result.js) methods["js"] = to_json(*result.js);
  if (result.sd) methods["sd"] = to_json(*result.sd);

  Json doc{{"schema_version", kReportSchemaVersion},
           {"kind", "track"},
           {"slices", Json{{"from", label_a}, {"to", label_b}}},
           {"config", to_json(config)},
           {"methods", std::move(methods)}};
  if (result.overlap) doc["overlap"] = to_json(*result.overlap);
  return doc;
}

Json bench_report(const BenchRun& run) {
  Json rows = Json::array();
  for (const BenchResult& r : run.rows) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    int n = 0;
    for (double s : r.true_pair_scores) {
      if (std::isnan(s)) continue;
      lo = std::min(lo, s);
      hi = std::max(hi, s);
      sum += s;
      ++n;
    }
    rows.push_back(Json{{"drift_rate", r.drift_rate},
                        {"method", std::string(to_string(r.method))},
                        {"accuracy", r.accuracy},
                        {"precision", r.precision},
                        {"recall", r.recall},
                        {"links", r.links},
                        {"correct", r.correct},
                        {"ground_truth", r.ground_truth},
                        {"mean_correct_score", number_or_null(r.mean_correct_score)},
                        {"true_pair_score_mean", n > 0 ? Json(sum / n) : Json(nullptr)},
                        {"true_pair_score_min", n > 0 ? Json(lo) : Json(nullptr)},
                        {"true_pair_score_max", n > 0 ? Json(hi) : Json(nullptr)}});
  }
  return Json{{"schema_version", kReportSchemaVersion},
              {"kind", "bench"},
              {"config",
               Json{{"n_topics", run.n_topics},
                    {"words_per_topic", run.words_per_topic},
                    {"weight_noise", run.weight_noise},
                    {"seed", run.seed},
                    {"js_threshold", run.thresholds.js},
                    {"sd_threshold", run.thresholds.sd}}},
              {"results", std::move(rows)}};
}

std::string render(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace topictrack
