#pragma once

#include <stdexcept>
#include <string>

namespace docforest {

// Malformed input record (bad JSON, wrong field type, missing field).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a data-model invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad hyperparameters or incompatible model/feature dimensions.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal invariant broken (e.g. two rules claiming the same entity).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace docforest
