#pragma once

#include <stdexcept>
#include <string>

namespace gg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Geometry.
class AntipodalPair : public Error {
 public:
  using Error::Error;
};
class AtPole : public Error {
 public:
  using Error::Error;
};
class DegenerateConfig : public Error {
 public:
  using Error::Error;
};

// Dynamics.
class StepSizeTooLarge : public Error {
 public:
  using Error::Error;
};

// Braid words.
class StrandMismatch : public Error {
 public:
  using Error::Error;
};
class NotPure : public Error {
 public:
  using Error::Error;
};

/// Malformed braid word text; `column()` is the 1-based offending column.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : Error(what + " (column " + std::to_string(column) + ")"), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

// Braid extraction.
class PoleTooClose : public Error {
 public:
  using Error::Error;
};
class UnresolvedCrossing : public Error {
 public:
  using Error::Error;
};

/// A hard internal invariant (purity of extracted braids, certificate
/// ordering, ...) did not hold.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// Estimation.
class NoSupportDeclared : public Error {
 public:
  using Error::Error;
};
class IllConditionedFit : public Error {
 public:
  using Error::Error;
};
class SupportsOverlap : public Error {
 public:
  using Error::Error;
};
class SamplingBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Embedding.
class PlacementFailed : public Error {
 public:
  using Error::Error;
};
class MissingEstimate : public Error {
 public:
  using Error::Error;
};

}  // namespace gg
