#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace topictrack {

/// A word or entity surface form with its probability mass (or score).
struct WeightedToken {
  std::string token;
  double weight = 0.0;

  friend bool operator==(const WeightedToken&, const WeightedToken&) = default;
};

/// One topic of a time slice. Word and entity lists are kept in descending
/// weight order, ties broken by token.
struct Topic {
  std::string id;
  std::string slice;
  int level = 1;
  std::optional<std::string> parent;
  std::vector<WeightedToken> words;
  std::vector<WeightedToken> entities;

  friend bool operator==(const Topic&, const Topic&) = default;
};

/// All topics extracted for one time period.
struct TopicSlice {
  std::string label;
  std::vector<Topic> topics;
};

/// Token -> probability, summing to one. Ordered so iteration is deterministic.
using Distribution = std::map<std::string, double, std::less<>>;

/// Sorts by weight descending, then token ascending.
void sort_tokens(std::vector<WeightedToken>& tokens);

/// Parses the topic-slice JSON document (see docs/formats.md).
///
/// Throws ParseError on malformed JSON or schema violations (the message
/// carries the JSON path), ValidationError on duplicate ids, dangling parent
/// references or negative weights.
std::vector<TopicSlice> parse_topic_slices(std::string_view document);

/// Reads and parses a topic-slice file.
std::vector<TopicSlice> load_topic_slices(const std::string& path);

/// Topics with level <= max_level, ordered by (level, id).
std::vector<Topic> flatten_tree(const TopicSlice& slice, int max_level = 2);

/// Copy of `topic` keeping its first k_words words and k_entities entities.
Topic truncate_topic(const Topic& topic, int k_words, int k_entities);

/// Words and entities merged into one normalized distribution. Weights of a
/// token present in both lists are summed. Throws DegenerateTopicError when
/// the total weight is zero.
Distribution combined_distribution(const Topic& topic);

}  // namespace topictrack
