#pragma once

#include <stdexcept>
#include <string>

namespace topictrack {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document (topics JSON, vector file).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that breaks a data-model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Invalid or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A topic whose weights are all zero has no distribution.
class DegenerateTopicError : public Error {
 public:
  using Error::Error;
};

/// A topic whose embedding is exactly the zero vector.
class ZeroEmbeddingError : public Error {
 public:
  using Error::Error;
};

/// Cosine distance requested on a zero-norm vector.
class UndefinedDistanceError : public Error {
 public:
  using Error::Error;
};

}  // namespace topictrack
