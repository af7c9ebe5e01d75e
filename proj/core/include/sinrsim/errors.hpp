#pragma once

#include <stdexcept>
#include <string>

namespace sinrsim {

struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad argument: dimension mismatch, unknown station id, out-of-range value.
struct InvalidInputError : SimError {
  using SimError::SimError;
};

/// Two stations at distance zero; the SINR ratio is singular there.
struct DegenerateGeometryError : SimError {
  using SimError::SimError;
};

/// Generation or graph construction produced a disconnected communication graph.
struct TopologyDisconnectedError : SimError {
  TopologyDisconnectedError(const std::string& what, int components)
      : SimError(what), components(components) {}
  int components;
};

/// A station automaton was stepped after it quit.
struct ProtocolOrderError : SimError {
  using SimError::SimError;
};

/// A stated precondition of an oracle check does not hold for the given input.
struct PreconditionError : SimError {
  using SimError::SimError;
};

/// The series sum_{i>=1} i^(gamma-alpha-1) diverges (alpha <= gamma).
struct DivergentSeriesError : SimError {
  using SimError::SimError;
};

/// A runtime invariant of a trial was violated; names the invariant and round.
struct InvariantViolationError : SimError {
  InvariantViolationError(const std::string& invariant, long long round,
                          const std::string& detail)
      : SimError("invariant '" + invariant + "' violated at round " +
                 std::to_string(round) + ": " + detail),
        invariant(invariant),
        round(round) {}
  std::string invariant;
  long long round;
};

}  // namespace sinrsim
