#pragma once

#include <stdexcept>

namespace qcoex {

/// Scenario or configuration problem: malformed JSON, unknown preset,
/// field constraint violation. Maps to exit code 2 in the CLI.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base class for errors raised by the physical model at evaluation time.
/// Maps to exit code 3 in the CLI.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Total per-gate click probability reached 1: the gated detector fires on
/// every gate and the link carries no quantum information at all.
class SaturationError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// The dark-count floor alone already violates the requested minimum key
/// rate; no allocation, not even the empty one, can satisfy the plan.
class NoBudgetError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Overall gain is zero, so the QBER is undefined (0/0).
class DegenerateChannelError : public ModelError {
 public:
  using ModelError::ModelError;
};

}
