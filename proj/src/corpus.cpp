#include "topictrack/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "topictrack/error.hpp"

namespace topictrack {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, std::string("missing field '") + key + "'");
  return *it;
}

std::vector<WeightedToken> parse_tokens(const json& list, const std::string& path) {
  if (!list.is_array()) schema_error(path, "expected an array of [token, weight] pairs");
  std::vector<WeightedToken> out;
  out.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string item_path = path + "[" + std::to_string(i) + "]";
    const json& item = list[i];
    if (!item.is_array() || item.size() != 2)
      schema_error(item_path, "expected [token, weight]");
    if (!item[0].is_string()) schema_error(item_path, "token must be a string");
    if (!item[1].is_number()) schema_error(item_path, "weight must be a number");
    WeightedToken tok{item[0].get<std::string>(), item[1].get<double>()};
    if (tok.token.empty()) throw ValidationError(item_path + ": empty token");
    if (!std::isfinite(tok.weight)) throw ValidationError(item_path + ": weight is not finite");
    if (tok.weight < 0.0)
      throw ValidationError(item_path + ": negative weight for '" + tok.token + "'");
    out.push_back(std::move(tok));
  }
  sort_tokens(out);
  return out;
}

Topic parse_topic(const json& node, const std::string& label, const std::string& path) {
  if (!node.is_object()) schema_error(path, "expected an object");
  Topic t;
  t.slice = label;

  const json& id = require(node, "id", path);
  if (!id.is_string()) schema_error(path + ".id", "must be a string");
  t.id = id.get<std::string>();
  if (t.id.empty()) throw ValidationError(path + ".id: empty topic id");

  if (auto it = node.find("level"); it != node.end()) {
    if (!it->is_number_integer()) schema_error(path + ".level", "must be an integer");
    t.level = it->get<int>();
    if (t.level < 1) throw ValidationError(path + ".level: must be >= 1");
  }
  if (auto it = node.find("parent"); it != node.end() && !it->is_null()) {
    if (!it->is_string()) schema_error(path + ".parent", "must be a string or null");
    t.parent = it->get<std::string>();
  }

  t.words = parse_tokens(require(node, "words", path), path + ".words");
  if (auto it = node.find("entities"); it != node.end())
    t.entities = parse_tokens(*it, path + ".entities");
  return t;
}

TopicSlice parse_slice(const json& node, const std::string& path) {
  if (!node.is_object()) schema_error(path, "expected an object");
  const json& label = require(node, "label", path);
  if (!label.is_string()) schema_error(path + ".label", "must be a string");

  TopicSlice slice;
  slice.label = label.get<std::string>();
  const json& topics = require(node, "topics", path);
  if (!topics.is_array()) schema_error(path + ".topics", "expected an array");

  std::set<std::string, std::less<>> ids;
  for (std::size_t i = 0; i < topics.size(); ++i) {
    const std::string topic_path = path + ".topics[" + std::to_string(i) + "]";
    Topic t = parse_topic(topics[i], slice.label, topic_path);
    if (!ids.insert(t.id).second)
      throw ValidationError(topic_path + ": duplicate topic id '" + t.id + "' in slice '" +
                            slice.label + "'");
    slice.topics.push_back(std::move(t));
  }
  for (const Topic& t : slice.topics) {
    if (t.parent && !ids.contains(*t.parent))
      throw ValidationError(path + ": topic '" + t.id + "' has unknown parent '" + *t.parent +
                            "'");
  }
  return slice;
}

}  // namespace

void sort_tokens(std::vector<WeightedToken>& tokens) {
  std::stable_sort(tokens.begin(), tokens.end(), [](const auto& a, const auto& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.token < b.token;
  });
}

std::vector<TopicSlice> parse_topic_slices(std::string_view document) {
  json root;
  try {
    root = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed topics document: ") + e.what());
  }
  if (!root.is_array()) schema_error("$", "top level must be an array of slices");

  std::vector<TopicSlice> slices;
  std::set<std::string, std::less<>> labels;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const std::string path = "$[" + std::to_string(i) + "]";
    TopicSlice s = parse_slice(root[i], path);
    if (!labels.insert(s.label).second)
      throw ValidationError(path + ": duplicate slice label '" + s.label + "'");
    slices.push_back(std::move(s));
  }
  return slices;
}

std::vector<TopicSlice> load_topic_slices(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open topics file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_topic_slices(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::vector<Topic> flatten_tree(const TopicSlice& slice, int max_level) {
  if (max_level < 1) throw ConfigError("max_level must be >= 1");
  std::vector<Topic> out;
  for (const Topic& t : slice.topics)
    if (t.level <= max_level) out.push_back(t);
  std::sort(out.begin(), out.end(), [](const Topic& a, const Topic& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.id < b.id;
  });
  return out;
}

Topic truncate_topic(const Topic& topic, int k_words, int k_entities) {
  if (k_words < 1) throw ConfigError("k_words must be >= 1");
  if (k_entities < 0) throw ConfigError("k_entities must be >= 0");
  Topic out = topic;
  if (out.words.size() > static_cast<std::size_t>(k_words)) out.words.resize(k_words);
  if (out.entities.size() > static_cast<std::size_t>(k_entities)) out.entities.resize(k_entities);
  return out;
}

Distribution combined_distribution(const Topic& topic) {
  Distribution dist;
  for (const auto* list : {&topic.words, &topic.entities})
    for (const WeightedToken& wt : *list) dist[wt.token] += wt.weight;

  double total = 0.0;
  for (const auto& [token, w] : dist) total += w;
  if (!(total > 0.0))
    throw DegenerateTopicError("topic '" + topic.id + "' has no positive weight");

  for (auto& [token, w] : dist) w /= total;
  return dist;
}

}  // namespace topictrack
