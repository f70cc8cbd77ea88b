#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "topictrack/corpus.hpp"
#include "topictrack/error.hpp"

namespace topictrack {

/// Read-only token -> dense vector table. Vectors are stored column-wise in
/// one matrix; a column-normalized copy backs neighbor queries.
template <typename Scalar>
class BasicEmbeddingStore {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  BasicEmbeddingStore(std::vector<std::string> tokens, Matrix table)
      : tokens_(std::move(tokens)), table_(std::move(table)) {
    if (table_.rows() < 1) throw ValidationError("embedding dimension must be positive");
    if (static_cast<std::size_t>(table_.cols()) != tokens_.size())
      throw ValidationError("embedding table has " + std::to_string(table_.cols()) +
                            " columns for " + std::to_string(tokens_.size()) + " tokens");
    index_.reserve(tokens_.size());
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (tokens_[i].empty()) throw ValidationError("empty token in embedding table");
      if (!index_.emplace(tokens_[i], static_cast<Eigen::Index>(i)).second)
        throw ValidationError("duplicate token '" + tokens_[i] + "' in embedding table");
    }
    unit_ = table_;
    for (Eigen::Index j = 0; j < unit_.cols(); ++j) {
      const Scalar n = unit_.col(j).norm();
      if (n > Scalar(0)) unit_.col(j) /= n;
    }
  }

  Eigen::Index dimension() const { return table_.rows(); }
  std::size_t size() const { return tokens_.size(); }
  bool contains(const std::string& token) const { return index_.contains(token); }

  std::optional<Eigen::Index> index_of(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& token(Eigen::Index i) const { return tokens_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  /// dimension x size, one column per token.
  const Matrix& table() const { return table_; }
  /// Same as table() with every nonzero column scaled to unit length.
  const Matrix& unit_table() const { return unit_; }

 private:
  std::vector<std::string> tokens_;
  Matrix table_;
  Matrix unit_;
  std::unordered_map<std::string, Eigen::Index> index_;
};

using EmbeddingStore = BasicEmbeddingStore<double>;

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view field, T& out) {
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end;
}

// Splits into UTF-8 code points; invalid lead bytes count as single units.
inline std::vector<std::string_view> code_points(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if ((c & 0xE0) == 0xC0) len = 2;
    else if ((c & 0xF0) == 0xE0) len = 3;
    else if ((c & 0xF8) == 0xF0) len = 4;
    len = std::min(len, s.size() - i);
    out.push_back(s.substr(i, len));
    i += len;
  }
  return out;
}

}  // namespace detail

/// Parses the text vector format: an optional "<count> <dimension>" header
/// followed by "<token> <v1> ... <vd>" rows.
template <typename Scalar = double>
BasicEmbeddingStore<Scalar> load_vectors(std::string_view content) {
  std::vector<std::string> tokens;
  std::vector<Scalar> values;
  Eigen::Index dim = 0;
  std::optional<long long> declared_count;

  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool first = true;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    auto fields = detail::split_fields(line);
    if (fields.empty()) continue;

    if (first) {
      first = false;
      long long count = 0, d = 0;
      if (fields.size() == 2 && detail::parse_number(fields[0], count) &&
          detail::parse_number(fields[1], d)) {
        if (count < 0 || d <= 0)
          throw ParseError("line " + std::to_string(line_no) + ": invalid header");
        declared_count = count;
        dim = static_cast<Eigen::Index>(d);
        continue;
      }
    }

    const auto components = static_cast<Eigen::Index>(fields.size()) - 1;
    if (dim == 0) {
      if (components < 1)
        throw ParseError("line " + std::to_string(line_no) + ": row has no vector components");
      dim = components;
    }
    if (components != dim)
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                       " components for '" + std::string(fields[0]) + "', found " +
                       std::to_string(components));
    for (Eigen::Index k = 0; k < dim; ++k) {
      Scalar v{};
      if (!detail::parse_number(fields[static_cast<std::size_t>(k) + 1], v))
        throw ParseError("line " + std::to_string(line_no) + ": bad number '" +
                         std::string(fields[static_cast<std::size_t>(k) + 1]) + "'");
      values.push_back(v);
    }
    tokens.emplace_back(fields[0]);
  }

  if (tokens.empty()) throw ParseError("vector file contains no vectors");
  if (declared_count && *declared_count != static_cast<long long>(tokens.size()))
    throw ParseError("header declares " + std::to_string(*declared_count) + " vectors, found " +
                     std::to_string(tokens.size()));

  using Matrix = typename BasicEmbeddingStore<Scalar>::Matrix;
  Matrix table = Eigen::Map<const Matrix>(values.data(), dim, static_cast<Eigen::Index>(tokens.size()));
  try {
    return BasicEmbeddingStore<Scalar>(std::move(tokens), std::move(table));
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

template <typename Scalar = double>
BasicEmbeddingStore<Scalar> load_vectors_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open vector file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return load_vectors<Scalar>(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

/// Character n-grams (n = 3..6, in code points) of the token wrapped in '<'
/// and '>' boundary markers, one entry per occurrence.
inline std::vector<std::string> char_ngrams(std::string_view token, int min_n = 3, int max_n = 6) {
  std::string wrapped;
  wrapped.reserve(token.size() + 2);
  wrapped += '<';
  wrapped += token;
  wrapped += '>';
  const auto cps = detail::code_points(wrapped);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    std::string gram;
    for (std::size_t n = 1; n <= static_cast<std::size_t>(max_n) && i + n <= cps.size(); ++n) {
      gram += cps[i + n - 1];
      if (n >= static_cast<std::size_t>(min_n)) out.push_back(gram);
    }
  }
  return out;
}

/// Mean of the in-vocabulary character n-gram vectors of `token`, or the
/// zero vector when none is present.
template <typename Scalar>
typename BasicEmbeddingStore<Scalar>::Vector oov_fallback(const BasicEmbeddingStore<Scalar>& store,
                                                          std::string_view token) {
  using Vector = typename BasicEmbeddingStore<Scalar>::Vector;
  Vector sum = Vector::Zero(store.dimension());
  std::size_t hits = 0;
  for (const std::string& gram : char_ngrams(token)) {
    if (auto idx = store.index_of(gram)) {
      sum += store.table().col(*idx);
      ++hits;
    }
  }
  if (hits > 0) sum /= static_cast<Scalar>(hits);
  return sum;
}

template <typename Scalar>
struct ResolvedVector {
  typename BasicEmbeddingStore<Scalar>::Vector vector;
  /// True when any part of the token was not found verbatim.
  bool fallback = false;
};

/// Direct hit, else mean over whitespace-separated words, else n-gram fallback.
template <typename Scalar>
ResolvedVector<Scalar> resolve(const BasicEmbeddingStore<Scalar>& store, const std::string& token) {
  using Vector = typename BasicEmbeddingStore<Scalar>::Vector;
  if (auto idx = store.index_of(token)) return {store.table().col(*idx), false};

  const auto words = detail::split_fields(token);
  if (words.size() > 1) {
    ResolvedVector<Scalar> out{Vector::Zero(store.dimension()), false};
    for (std::string_view w : words) {
      auto part = resolve(store, std::string(w));
      out.vector += part.vector;
      out.fallback = out.fallback || part.fallback;
    }
    out.vector /= static_cast<Scalar>(words.size());
    return out;
  }
  return {oov_fallback(store, words.empty() ? std::string_view(token) : words.front()), true};
}

template <typename Scalar>
typename BasicEmbeddingStore<Scalar>::Vector lookup(const BasicEmbeddingStore<Scalar>& store,
                                                    const std::string& token) {
  return resolve(store, token).vector;
}

template <typename Scalar>
struct BasicTopicEmbedding {
  typename BasicEmbeddingStore<Scalar>::Vector vector;
  int oov_count = 0;
  int token_count = 0;
};

using TopicEmbedding = BasicTopicEmbedding<double>;

/// Probability-weighted sum of the vectors of a topic's words and entities.
/// No renormalization: cosine comparisons downstream are scale-invariant.
template <typename Scalar>
BasicTopicEmbedding<Scalar> topic_embedding(const BasicEmbeddingStore<Scalar>& store,
                                            const Topic& topic) {
  using Vector = typename BasicEmbeddingStore<Scalar>::Vector;
  BasicTopicEmbedding<Scalar> out{Vector::Zero(store.dimension()), 0, 0};
  for (const auto* list : {&topic.words, &topic.entities}) {
    for (const WeightedToken& wt : *list) {
      auto r = resolve(store, wt.token);
      out.vector += static_cast<Scalar>(wt.weight) * r.vector;
      out.oov_count += r.fallback ? 1 : 0;
      ++out.token_count;
    }
  }
  if ((out.vector.array() == Scalar(0)).all())
    throw ZeroEmbeddingError("topic '" + topic.id + "' has a zero embedding");
  return out;
}

/// Most cosine-similar store token to `token`, skipping the token itself and
/// everything in `exclude`. Ties go to the earlier store entry.
template <typename Scalar>
std::optional<std::string> nearest_neighbor(const BasicEmbeddingStore<Scalar>& store,
                                            const std::string& token,
                                            const std::unordered_set<std::string>& exclude = {}) {
  typename BasicEmbeddingStore<Scalar>::Vector query = lookup(store, token);
  const Scalar n = query.norm();
  if (!(n > Scalar(0))) return std::nullopt;
  query /= n;

  const typename BasicEmbeddingStore<Scalar>::Vector sims = store.unit_table().transpose() * query;
  std::optional<Eigen::Index> best;
  for (Eigen::Index j = 0; j < sims.size(); ++j) {
    const std::string& cand = store.token(j);
    if (cand == token || exclude.contains(cand)) continue;
    if (!best || sims[j] > sims[*best]) best = j;
  }
  if (!best) return std::nullopt;
  return store.token(*best);
}

}  // namespace topictrack
