// topictrack: link topics across two time slices with JS and/or semantic
// divergence, benchmark both under synthetic lexical drift, and validate
// input files.
//
// Exit codes: 0 success, 1 input/validation/configuration error, 2 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "topictrack/bench.hpp"
#include "topictrack/corpus.hpp"
#include "topictrack/embedding.hpp"
#include "topictrack/error.hpp"
#include "topictrack/report.hpp"
#include "topictrack/tracker.hpp"

namespace tt = topictrack;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

struct TrackOptions {
  std::string topics_path;
  std::string embeddings_path;
  std::string output_path = "-";
  std::string matrices_path;
  std::string method = "both";
  std::string from;
  std::string to;
  tt::TrackConfig config;
};

struct BenchOptions {
  std::string embeddings_path;
  std::string output_path = "-";
  std::vector<double> drift{0.0, 0.3, 1.0};
  int n_topics = 50;
  int words_per_topic = 10;
  double weight_noise = 0.0;
  std::uint64_t seed = 7;
  tt::BenchThresholds thresholds;
};

struct ValidateOptions {
  std::string topics_path;
  std::string embeddings_path;
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tt::ConfigError("cannot write '" + path + "'");
  out << text;
}

const tt::TopicSlice& find_slice(const std::vector<tt::TopicSlice>& slices, const std::string& label) {
  for (const auto& s : slices)
    if (s.label == label) return s;
  throw tt::ConfigError("no slice labelled '" + label + "' in topics file");
}

int run_track(TrackOptions opt) {
  if (opt.method == "js") opt.config.methods = tt::MethodSelection::JS;
  else if (opt.method == "sd") opt.config.methods = tt::MethodSelection::SD;
  else opt.config.methods = tt::MethodSelection::Both;
  opt.config.validate();

  const bool needs_store = opt.config.runs(tt::Method::SD);
  if (needs_store && opt.embeddings_path.empty())
    throw tt::ConfigError("--embeddings is required for method '" + opt.method + "'");

  const auto slices = tt::load_topic_slices(opt.topics_path);
  if (slices.size() < 2 && (opt.from.empty() || opt.to.empty()))
    throw tt::ValidationError("topics file must contain at least two slices");
  const tt::TopicSlice& a = opt.from.empty() ? slices[0] : find_slice(slices, opt.from);
  const tt::TopicSlice& b = opt.to.empty() ? slices[1] : find_slice(slices, opt.to);

  std::optional<tt::EmbeddingStore> store;
  if (needs_store) store = tt::load_vectors_file(opt.embeddings_path);

  const auto result = tt::track(a, b, opt.config, store ? &*store : nullptr);
  write_output(opt.output_path, tt::render(tt::track_report(a.label, b.label, opt.config, result)));

  if (!opt.matrices_path.empty()) {
    tt::Json dump = tt::Json::object();
    if (result.js_matrix) dump["js"] = tt::to_json(*result.js_matrix);
    if (result.sd_matrix) dump["sd"] = tt::to_json(*result.sd_matrix);
    write_output(opt.matrices_path, tt::render(dump));
  }
  return 0;
}

int run_bench(const BenchOptions& opt) {
  if (opt.embeddings_path.empty()) throw tt::ConfigError("bench requires --embeddings");
  if (opt.n_topics < 2) throw tt::ConfigError("--n must be >= 2");
  if (!(opt.thresholds.js > 0.0) || !(opt.thresholds.sd > 0.0))
    throw tt::ConfigError("thresholds must be > 0");

  const auto store = tt::load_vectors_file(opt.embeddings_path);
  tt::BenchRun run{opt.n_topics, opt.words_per_topic, opt.weight_noise, opt.seed, opt.thresholds, {}};
  for (double rate : opt.drift) {
    tt::DriftConfig cfg{rate, opt.weight_noise, opt.seed};
    for (auto& row : tt::run_benchmark(opt.n_topics, cfg, store, opt.thresholds, opt.words_per_topic))
      run.rows.push_back(std::move(row));
  }

  std::fprintf(stderr, "%-6s %-6s %9s %9s %9s\n", "drift", "method", "accuracy", "precision", "recall");
  for (const auto& r : run.rows)
    std::fprintf(stderr, "%-6.2f %-6s %9.3f %9.3f %9.3f\n", r.drift_rate,
                 std::string(tt::to_string(r.method)).c_str(), r.accuracy, r.precision, r.recall);

  write_output(opt.output_path, tt::render(tt::bench_report(run)));
  return 0;
}

int run_validate(const ValidateOptions& opt) {
  if (opt.topics_path.empty() && opt.embeddings_path.empty())
    throw tt::ConfigError("validate needs --topics and/or --embeddings");
  if (!opt.topics_path.empty()) {
    const auto slices = tt::load_topic_slices(opt.topics_path);
    std::cout << opt.topics_path << ": " << slices.size() << " slice(s)\n";
    for (const auto& s : slices) {
      int deepest = 0;
      for (const auto& t : s.topics) deepest = std::max(deepest, t.level);
      std::cout << "  " << s.label << ": " << s.topics.size() << " topic(s), max level " << deepest
                << ", " << tt::flatten_tree(s, tt::defaults::kMaxLevel).size() << " tracked\n";
    }
  }
  if (!opt.embeddings_path.empty()) {
    const auto store = tt::load_vectors_file(opt.embeddings_path);
    std::cout << opt.embeddings_path << ": " << store.size() << " vector(s), dimension "
              << store.dimension() << "\n";
  }
  return 0;
}

void add_track_flags(CLI::App* cmd, TrackOptions& o) {
  cmd->add_option("--topics", o.topics_path, "Topic-slice JSON file")->required();
  cmd->add_option("--embeddings", o.embeddings_path, "Text vector file (needed for sd/both)");
  cmd->add_option("--method", o.method, "js, sd or both")
      ->check(CLI::IsMember({"js", "sd", "both"}))
      ->capture_default_str();
  cmd->add_option("--js-threshold", o.config.js_threshold, "Keep JS pairs scoring below this")
      ->capture_default_str();
  cmd->add_option("--sd-threshold", o.config.sd_threshold, "Keep SD pairs scoring below this")
      ->capture_default_str();
  cmd->add_option("--top-words", o.config.top_words, "Words kept per topic")->capture_default_str();
  cmd->add_option("--top-entities", o.config.top_entities, "Entities kept per topic")
      ->capture_default_str();
  cmd->add_option("--max-level", o.config.max_level, "Deepest tree level tracked")
      ->capture_default_str();
  cmd->add_option("--from", o.from, "Label of the earlier slice (default: first)");
  cmd->add_option("--to", o.to, "Label of the later slice (default: second)");
  cmd->add_option("-o,--output", o.output_path, "Report path, '-' for stdout")->capture_default_str();
  cmd->add_option("--matrices", o.matrices_path, "Also dump the score matrices here");
}

void add_bench_flags(CLI::App* cmd, BenchOptions& o) {
  cmd->add_option("--embeddings", o.embeddings_path, "Text vector file");
  cmd->add_option("--drift", o.drift, "Drift rate(s) in [0, 1]")->capture_default_str();
  cmd->add_option("--n", o.n_topics, "Synthetic topics per slice")->capture_default_str();
  cmd->add_option("--words", o.words_per_topic, "Words per synthetic topic")->capture_default_str();
  cmd->add_option("--weight-noise", o.weight_noise, "Multiplicative weight jitter")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--js-threshold", o.thresholds.js)->capture_default_str();
  cmd->add_option("--sd-threshold", o.thresholds.sd)->capture_default_str();
  cmd->add_option("-o,--output", o.output_path, "Results path, '-' for stdout")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topic tracking across time slices with lexical and semantic divergence"};
  app.require_subcommand(1);

  TrackOptions track_opt;
  BenchOptions bench_opt;
  ValidateOptions validate_opt;

  auto* track_cmd = app.add_subcommand("track", "Link the topics of two slices");
  add_track_flags(track_cmd, track_opt);
  auto* bench_cmd = app.add_subcommand("bench", "Synthetic lexical-drift benchmark");
  add_bench_flags(bench_cmd, bench_opt);
  auto* validate_cmd = app.add_subcommand("validate", "Schema-check input files");
  validate_cmd->add_option("--topics", validate_opt.topics_path, "Topic-slice JSON file");
  validate_cmd->add_option("--embeddings", validate_opt.embeddings_path, "Text vector file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*track_cmd) return run_track(track_opt);
    if (*bench_cmd) return run_bench(bench_opt);
    if (*validate_cmd) return run_validate(validate_opt);
  } catch (const tt::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const tt::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitInput;
  } catch (const tt::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
