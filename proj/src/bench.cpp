#include "topictrack/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "topictrack/error.hpp"
#include "topictrack/tracker.hpp"

namespace topictrack {

void DriftConfig::validate() const {
  if (!(drift_rate >= 0.0 && drift_rate <= 1.0)) throw ConfigError("drift_rate must be in [0, 1]");
  if (!(weight_noise >= 0.0)) throw ConfigError("weight_noise must be >= 0");
}

Topic generate_drifted_pair(const Topic& topic, const DriftConfig& cfg, const EmbeddingStore& store,
                            std::mt19937_64& rng) {
  cfg.validate();
  if (store.size() == 0) throw ConfigError("drift needs a non-empty embedding store");

  Topic out = topic;
  std::vector<WeightedToken*> slots;
  for (auto& wt : out.words) slots.push_back(&wt);
  for (auto& wt : out.entities) slots.push_back(&wt);

  // The epsilon keeps 0.3 * 10 from rounding up to 4.
  const auto n_replace = std::min(
      slots.size(), static_cast<std::size_t>(std::ceil(cfg.drift_rate * slots.size() - 1e-9)));

  std::vector<std::size_t> order(slots.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::unordered_set<std::string> taken;
  for (const auto* wt : slots) taken.insert(wt->token);
  for (std::size_t k = 0; k < n_replace; ++k) {
    WeightedToken& wt = *slots[order[k]];
    if (auto nb = nearest_neighbor(store, wt.token, taken)) {
      taken.insert(*nb);
      wt.token = *nb;
    } else {
      std::clog << "drift: no replacement for '" << wt.token << "' in topic '" << topic.id
                << "', kept\n";
    }
  }

  std::uniform_real_distribution<double> jitter(-cfg.weight_noise, cfg.weight_noise);
  for (auto* wt : slots) wt->weight = std::max(0.0, wt->weight * (1.0 + jitter(rng)));
  sort_tokens(out.words);
  sort_tokens(out.entities);
  return out;
}

namespace {

std::string topic_id(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "t%03d", i);
  return buf;
}

bool usable_word(const std::string& token) {
  return token.find_first_of("<> \t") == std::string::npos;
}

BenchResult score(const Matching& m, const ScoreMatrix& matrix, double drift_rate, int n_topics) {
  BenchResult r;
  r.method = m.method;
  r.drift_rate = drift_rate;
  r.ground_truth = n_topics;
  r.links = static_cast<int>(m.pairs.size());

  double correct_sum = 0.0;
  for (const LinkedPair& p : m.pairs) {
    if (p.topic_a == p.topic_b) {
      ++r.correct;
      correct_sum += p.score;
    }
  }
  r.accuracy = static_cast<double>(r.correct) / n_topics;
  r.recall = r.accuracy;
  r.precision = r.links > 0 ? static_cast<double>(r.correct) / r.links : 0.0;
  r.mean_correct_score =
      r.correct > 0 ? correct_sum / r.correct : std::numeric_limits<double>::quiet_NaN();

  // Rows and columns share ids; both are sorted the same way by flatten_tree.
  for (std::size_t i = 0; i < matrix.rows().size(); ++i) {
    const auto it = std::find(matrix.cols().begin(), matrix.cols().end(), matrix.rows()[i]);
    r.true_pair_scores.push_back(
        it == matrix.cols().end()
            ? std::numeric_limits<double>::quiet_NaN()
            : matrix(static_cast<Eigen::Index>(i), it - matrix.cols().begin()));
  }
  return r;
}

}  // namespace

std::vector<BenchResult> run_benchmark(int n_topics, const DriftConfig& cfg,
                                       const EmbeddingStore& store,
                                       const BenchThresholds& thresholds, int words_per_topic) {
  cfg.validate();
  if (n_topics < 2) throw ConfigError("benchmark needs at least 2 topics");
  if (words_per_topic < 1) throw ConfigError("words_per_topic must be >= 1");

  std::vector<std::string> vocab;
  for (const std::string& t : store.tokens())
    if (usable_word(t)) vocab.push_back(t);
  const auto needed = static_cast<std::size_t>(n_topics) * static_cast<std::size_t>(words_per_topic);
  if (needed > vocab.size())
    throw ConfigError("benchmark needs " + std::to_string(needed) + " distinct words, store has " +
                      std::to_string(vocab.size()));

  std::mt19937_64 vocab_rng(cfg.seed);
  std::shuffle(vocab.begin(), vocab.end(), vocab_rng);

  double zipf_total = 0.0;
  for (int r = 0; r < words_per_topic; ++r) zipf_total += 1.0 / (r + 1);

  TopicSlice slice_a{"A", {}};
  TopicSlice slice_b{"B", {}};
  for (int i = 0; i < n_topics; ++i) {
    Topic t;
    t.id = topic_id(i);
    t.slice = "A";
    for (int r = 0; r < words_per_topic; ++r)
      t.words.push_back({vocab[static_cast<std::size_t>(i * words_per_topic + r)],
                         (1.0 / (r + 1)) / zipf_total});
    sort_tokens(t.words);

    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    Topic drifted = generate_drifted_pair(t, cfg, store, rng);
    drifted.slice = "B";

    slice_a.topics.push_back(std::move(t));
    slice_b.topics.push_back(std::move(drifted));
  }

  TrackConfig config;
  config.methods = MethodSelection::Both;
  config.js_threshold = thresholds.js;
  config.sd_threshold = thresholds.sd;
  config.top_words = std::max(config.top_words, words_per_topic);
  const TrackResult tracked = track(slice_a, slice_b, config, &store);

  return {score(*tracked.js, *tracked.js_matrix, cfg.drift_rate, n_topics),
          score(*tracked.sd, *tracked.sd_matrix, cfg.drift_rate, n_topics)};
}

}  // namespace topictrack
