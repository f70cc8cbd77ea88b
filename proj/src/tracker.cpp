#include "topictrack/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "topictrack/error.hpp"

namespace topictrack {

Matching greedy_match(const ScoreMatrix& matrix, double threshold) {
  if (!(threshold > 0.0)) throw ConfigError("threshold must be > 0");

  struct Entry {
    double score;
    Eigen::Index row;
    Eigen::Index col;
  };
  const auto& rows = matrix.rows();
  const auto& cols = matrix.cols();

  std::vector<Entry> entries;
  for (Eigen::Index i = 0; i < matrix.scores().rows(); ++i)
    for (Eigen::Index j = 0; j < matrix.scores().cols(); ++j)
      if (matrix.comparable(i, j)) entries.push_back({matrix(i, j), i, j});

  std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
    return std::tie(a.score, rows[a.row], cols[a.col]) < std::tie(b.score, rows[b.row], cols[b.col]);
  });

  Matching m;
  m.method = matrix.method();
  m.threshold = threshold;
  std::vector<bool> row_used(rows.size(), false);
  std::vector<bool> col_used(cols.size(), false);
  for (const Entry& e : entries) {
    if (!(e.score < threshold)) break;  // sorted: nothing further can pass
    if (row_used[e.row] || col_used[e.col]) continue;
    row_used[e.row] = col_used[e.col] = true;
    m.pairs.push_back({rows[e.row], cols[e.col], e.score, matrix.method()});
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!row_used[i]) m.unmatched_a.push_back(rows[i]);
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (!col_used[j]) m.unmatched_b.push_back(cols[j]);
  return m;
}

namespace {

std::set<std::string> side_a(const Matching& m) {
  std::set<std::string> s(m.unmatched_a.begin(), m.unmatched_a.end());
  for (const auto& p : m.pairs) s.insert(p.topic_a);
  return s;
}

std::set<std::string> side_b(const Matching& m) {
  std::set<std::string> s(m.unmatched_b.begin(), m.unmatched_b.end());
  for (const auto& p : m.pairs) s.insert(p.topic_b);
  return s;
}

bool same_link(const LinkedPair& x, const LinkedPair& y) {
  return x.topic_a == y.topic_a && x.topic_b == y.topic_b;
}

bool shares_one_endpoint(const LinkedPair& x, const LinkedPair& y) {
  return (x.topic_a == y.topic_a) != (x.topic_b == y.topic_b);
}

auto by_score = [](const LinkedPair& x, const LinkedPair& y) {
  return std::tie(x.score, x.topic_a, x.topic_b) < std::tie(y.score, y.topic_a, y.topic_b);
};

}  // namespace

OverlapReport categorize_overlap(const Matching& js, const Matching& sd) {
  if (side_a(js) != side_a(sd) || side_b(js) != side_b(sd))
    throw ValidationError("matchings are not over the same topic sets");

  OverlapReport report;
  std::vector<LinkedPair> only_js;
  std::vector<LinkedPair> only_sd;

  for (const LinkedPair& p : js.pairs) {
    auto hit = std::find_if(sd.pairs.begin(), sd.pairs.end(),
                            [&](const LinkedPair& q) { return same_link(p, q); });
    if (hit != sd.pairs.end())
      report.shared.push_back({p.topic_a, p.topic_b, p.score, hit->score});
    else
      only_js.push_back(p);
  }
  for (const LinkedPair& q : sd.pairs) {
    auto hit = std::find_if(js.pairs.begin(), js.pairs.end(),
                            [&](const LinkedPair& p) { return same_link(p, q); });
    if (hit == js.pairs.end()) only_sd.push_back(q);
  }
  std::sort(only_js.begin(), only_js.end(), by_score);
  std::sort(only_sd.begin(), only_sd.end(), by_score);

  std::vector<bool> sd_used(only_sd.size(), false);
  for (const LinkedPair& p : only_js) {
    // only_sd is score-sorted, so the first free candidate is the lowest.
    std::size_t k = 0;
    while (k < only_sd.size() && (sd_used[k] || !shares_one_endpoint(p, only_sd[k]))) ++k;
    if (k < only_sd.size()) {
      sd_used[k] = true;
      report.conflicting.push_back({p, only_sd[k]});
    } else {
      report.exclusive_js.push_back(p);
    }
  }
  for (std::size_t k = 0; k < only_sd.size(); ++k)
    if (!sd_used[k]) report.exclusive_sd.push_back(only_sd[k]);
  return report;
}

void TrackConfig::validate() const {
  if (!(js_threshold > 0.0)) throw ConfigError("JS threshold must be > 0");
  if (!(sd_threshold > 0.0)) throw ConfigError("SD threshold must be > 0");
  if (top_words < 1) throw ConfigError("top_words must be >= 1");
  if (top_entities < 0) throw ConfigError("top_entities must be >= 0");
  if (max_level < 1) throw ConfigError("max_level must be >= 1");
}

namespace {

std::vector<Topic> prepare(const TopicSlice& slice, const TrackConfig& config) {
  std::vector<Topic> topics = flatten_tree(slice, config.max_level);
  for (Topic& t : topics) t = truncate_topic(t, config.top_words, config.top_entities);
  return topics;
}

Matching unmatched_only(const std::vector<Topic>& a, const std::vector<Topic>& b, Method method,
                        double threshold) {
  Matching m;
  m.method = method;
  m.threshold = threshold;
  for (const Topic& t : a) m.unmatched_a.push_back(t.id);
  for (const Topic& t : b) m.unmatched_b.push_back(t.id);
  return m;
}

}  // namespace

TrackResult track(const TopicSlice& slice_a, const TopicSlice& slice_b, const TrackConfig& config,
                  const EmbeddingStore* store) {
  config.validate();
  if (config.runs(Method::SD) && store == nullptr)
    throw ConfigError("semantic divergence requested without an embedding store");

  const std::string context = "tracking '" + slice_a.label + "' -> '" + slice_b.label + "': ";
  try {
    const auto topics_a = prepare(slice_a, config);
    const auto topics_b = prepare(slice_b, config);

    TrackResult result;
    for (Method method : {Method::JS, Method::SD}) {
      if (!config.runs(method)) continue;
      const double threshold = method == Method::JS ? config.js_threshold : config.sd_threshold;
      auto& matching = method == Method::JS ? result.js : result.sd;
      auto& matrix = method == Method::JS ? result.js_matrix : result.sd_matrix;
      if (topics_a.empty() || topics_b.empty()) {
        matching = unmatched_only(topics_a, topics_b, method, threshold);
        continue;
      }
      matrix = score_matrix(topics_a, topics_b, method, store);
      matching = greedy_match(*matrix, threshold);
    }
    if (result.js && result.sd) result.overlap = categorize_overlap(*result.js, *result.sd);
    return result;
  } catch (const ConfigError& e) {
    throw ConfigError(context + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(context + e.what());
  }
}

}  // namespace topictrack
