#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "topictrack/corpus.hpp"
#include "topictrack/error.hpp"

using namespace topictrack;
using testutil::make_topic;

namespace {

std::string slice_json(const std::string& label, int n_topics) {
  std::string s = R"({"label": ")" + label + R"(", "topics": [)";
  for (int i = 0; i < n_topics; ++i) {
    if (i) s += ",";
    s += R"({"id": "t)" + std::to_string(i) + R"(", "words": [["x", 1.0]]})";
  }
  return s + "]}";
}

TopicSlice tree_fixture() {
  TopicSlice s{"2019", {}};
  s.topics.push_back(make_topic("b", {{"x", 1}}, {}, 1));
  s.topics.push_back(make_topic("a", {{"x", 1}}, {}, 1));
  s.topics.push_back(make_topic("a.1", {{"x", 1}}, {}, 2));
  s.topics.push_back(make_topic("a.1.1", {{"x", 1}}, {}, 3));
  return s;
}

}  // namespace

TEST_CASE("parse: one slice, one topic, words re-sorted descending") {
  auto slices = parse_topic_slices(R"([{"label": "2019", "topics": [
      {"id": "t1", "level": 1, "words": [["b", 0.2], ["a", 0.5], ["c", 0.3]],
       "entities": [["Acme Corp", 0.1]]}]}])");
  REQUIRE(slices.size() == 1);
  REQUIRE(slices[0].label == "2019");
  REQUIRE(slices[0].topics.size() == 1);
  const Topic& t = slices[0].topics[0];
  CHECK(t.slice == "2019");
  CHECK(t.words == std::vector<WeightedToken>{{"a", 0.5}, {"c", 0.3}, {"b", 0.2}});
  CHECK(t.entities == std::vector<WeightedToken>{{"Acme Corp", 0.1}});
  CHECK_FALSE(t.parent.has_value());
}

TEST_CASE("parse: two slices of 5 and 7 topics") {
  auto slices = parse_topic_slices("[" + slice_json("2019", 5) + "," + slice_json("2020", 7) + "]");
  REQUIRE(slices.size() == 2);
  CHECK(slices[0].topics.size() == 5);
  CHECK(slices[1].topics.size() == 7);
  CHECK(slices[1].topics[6].slice == "2020");
}

TEST_CASE("parse: weights are kept exactly") {
  auto slices = parse_topic_slices(R"([{"label": "x", "topics": [
      {"id": "t", "words": [["a", 0.1234567890123], ["b", 7]]}]}])");
  CHECK(slices[0].topics[0].words[0].weight == 7.0);
  CHECK(slices[0].topics[0].words[1].weight == 0.1234567890123);
}

TEST_CASE("parse: ties broken by token") {
  auto slices = parse_topic_slices(R"([{"label": "x", "topics": [
      {"id": "t", "words": [["z", 1], ["m", 1], ["a", 1], ["q", 2]]}]}])");
  const auto& w = slices[0].topics[0].words;
  CHECK(w[0].token == "q");
  CHECK(w[1].token == "a");
  CHECK(w[2].token == "m");
  CHECK(w[3].token == "z");
}

TEST_CASE("parse: errors") {
  SUBCASE("negative weight") {
    CHECK_THROWS_AS(parse_topic_slices(R"([{"label": "x", "topics": [
        {"id": "t", "words": [["a", -0.1]]}]}])"),
                    ValidationError);
  }
  SUBCASE("duplicate id within a slice") {
    CHECK_THROWS_AS(parse_topic_slices(R"([{"label": "x", "topics": [
        {"id": "t", "words": [["a", 1]]}, {"id": "t", "words": [["b", 1]]}]}])"),
                    ValidationError);
  }
  SUBCASE("same id in different slices is fine") {
    CHECK_NOTHROW(parse_topic_slices(R"([
        {"label": "x", "topics": [{"id": "t", "words": [["a", 1]]}]},
        {"label": "y", "topics": [{"id": "t", "words": [["a", 1]]}]}])"));
  }
  SUBCASE("unknown parent") {
    CHECK_THROWS_AS(parse_topic_slices(R"([{"label": "x", "topics": [
        {"id": "t", "parent": "nope", "level": 2, "words": [["a", 1]]}]}])"),
                    ValidationError);
  }
  SUBCASE("malformed json names the line") {
    try {
      parse_topic_slices("[\n{\"label\": \"x\",\n \"topics\": [}\n]");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("schema error names the path") {
    try {
      parse_topic_slices(R"([{"label": "x", "topics": [{"id": "t", "words": [["a"]]}]}])");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("$[0].topics[0].words[0]") != std::string::npos);
    }
  }
  SUBCASE("missing words") {
    CHECK_THROWS_AS(parse_topic_slices(R"([{"label": "x", "topics": [{"id": "t"}]}])"), ParseError);
  }
  SUBCASE("top level must be a list") {
    CHECK_THROWS_AS(parse_topic_slices(R"({"label": "x"})"), ParseError);
  }
  SUBCASE("level below one") {
    CHECK_THROWS_AS(parse_topic_slices(R"([{"label": "x", "topics": [
        {"id": "t", "level": 0, "words": [["a", 1]]}]}])"),
                    ValidationError);
  }
}

TEST_CASE("the bundled example parses") {
  auto slices = load_topic_slices(testutil::data_path("example_topics.json"));
  REQUIRE(slices.size() == 2);
  for (const auto& s : slices)
    for (const auto& t : s.topics)
      for (std::size_t i = 1; i < t.words.size(); ++i) CHECK(t.words[i - 1].weight >= t.words[i].weight);
}

TEST_CASE("flatten_tree") {
  const TopicSlice s = tree_fixture();
  SUBCASE("levels {1,1,2,3} at max_level 2 -> 3 topics ordered by (level, id)") {
    auto f = flatten_tree(s, 2);
    REQUIRE(f.size() == 3);
    CHECK(f[0].id == "a");
    CHECK(f[1].id == "b");
    CHECK(f[2].id == "a.1");
  }
  SUBCASE("max_level 1 -> 2 topics") { CHECK(flatten_tree(s, 1).size() == 2); }
  SUBCASE("flat slice is unchanged") {
    TopicSlice flat{"x", {make_topic("a", {{"x", 1}}), make_topic("b", {{"y", 1}})}};
    auto f = flatten_tree(flat, 2);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == flat.topics[0]);
    CHECK(f[1] == flat.topics[1]);
  }
  SUBCASE("result at k is a subset of the result at k + 1") {
    for (int k = 1; k <= 3; ++k) {
      auto small = flatten_tree(s, k);
      auto big = flatten_tree(s, k + 1);
      for (const auto& t : small)
        CHECK(std::find(big.begin(), big.end(), t) != big.end());
    }
  }
  CHECK_THROWS_AS(flatten_tree(s, 0), ConfigError);
}

TEST_CASE("truncate_topic") {
  std::vector<WeightedToken> words;
  for (int i = 0; i < 150; ++i) words.push_back({"w" + std::to_string(i), 1.0 / (i + 1)});
  const Topic big = make_topic("t", words, {{"E1", 0.5}, {"E2", 0.4}});

  SUBCASE("150 words, k = 100 keeps the 100 heaviest") {
    Topic t = truncate_topic(big, 100, 15);
    REQUIRE(t.words.size() == 100);
    CHECK(t.words.front().token == "w0");
    CHECK(t.words.back().token == "w99");
    CHECK(t.entities.size() == 2);
  }
  SUBCASE("under-full topic keeps everything") {
    Topic small = make_topic("s", {{"a", 1}, {"b", 0.5}});
    CHECK(truncate_topic(small, 100, 15) == small);
  }
  SUBCASE("k_entities = 0 empties entities") { CHECK(truncate_topic(big, 5, 0).entities.empty()); }
  SUBCASE("idempotent") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      Topic t = testutil::random_topic(rng, "t");
      const int k = 1 + static_cast<int>(rng() % 6);
      const int ke = static_cast<int>(rng() % 3);
      Topic once = truncate_topic(t, k, ke);
      CHECK(truncate_topic(once, k, ke) == once);
    }
  }
  CHECK_THROWS_AS(truncate_topic(big, 0, 1), ConfigError);
}

TEST_CASE("combined_distribution") {
  SUBCASE("already normalized") {
    auto d = combined_distribution(make_topic("t", {{"a", 0.6}, {"b", 0.4}}));
    CHECK(d.size() == 2);
    CHECK(d["a"] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(d["b"] == doctest::Approx(0.4).epsilon(1e-12));
  }
  SUBCASE("words and entities merged and normalized") {
    auto d = combined_distribution(make_topic("t", {{"a", 2}, {"b", 2}}, {{"c", 4}}));
    CHECK(d["a"] == 0.25);
    CHECK(d["b"] == 0.25);
    CHECK(d["c"] == 0.5);
  }
  SUBCASE("a token in both lists has its weights summed") {
    auto d = combined_distribution(make_topic("t", {{"x", 1}}, {{"x", 1}, {"y", 2}}));
    CHECK(d["x"] == 0.5);
    CHECK(d["y"] == 0.5);
  }
  SUBCASE("all-zero weights") {
    CHECK_THROWS_AS(combined_distribution(make_topic("t", {{"a", 0}})), DegenerateTopicError);
  }
  SUBCASE("sums to one, weights in [0, 1]") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
      auto d = combined_distribution(testutil::random_topic(rng, "t"));
      double sum = 0.0;
      for (const auto& [tok, w] : d) {
        CHECK(w >= 0.0);
        CHECK(w <= 1.0);
        sum += w;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
  }
}
