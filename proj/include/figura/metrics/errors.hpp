#pragma once

#include <stdexcept>
#include <string>

namespace figura::metrics {

class MetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LengthMismatch : public MetricError {
 public:
  LengthMismatch(std::size_t a, std::size_t b)
      : MetricError("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class InvalidSpan : public MetricError {
 public:
  InvalidSpan(std::size_t start, std::size_t end)
      : MetricError("invalid span [" + std::to_string(start) + ", " + std::to_string(end) + ")") {}
};

class EmptyInput : public MetricError {
 public:
  using MetricError::MetricError;
};

}  // namespace figura::metrics
