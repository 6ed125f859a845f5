#pragma once

#include <stdexcept>
#include <string>

namespace specpoly {

// Failure taxonomy shared by every module.  Callers that need to branch on
// the cause (the CLI, the approximation drivers) switch on kind(); everyone
// else lets the exception propagate with a readable message.
enum class ErrorKind {
  InvalidInput,        // malformed data: dimension mismatch, NaN, empty list
  NotPositiveDefinite, // a solve required an SPD matrix and did not get one
  Unbounded,           // sup of a linear functional over the set is +inf
  InfeasibleStart,     // an interior-point start was not strictly feasible
  PointInside,         // boundary search asked from a point already in the set
  PointNotInterior,    // boundary search aimed at a non-interior anchor
  EmptyPolyhedron,     // halfspace insertion emptied the polyhedron
  NotPointed,          // cone contains a line; V-representation impossible
  CompactInput,        // recession cone is trivial; use the compact code path
  NoInterior,          // Slater point search proved the interior empty
  DegenerateDirection, // objective direction vanished; no way to orient
  IterationCap,        // refinement loop hit its iteration budget
  NotHomogeneous,      // cone routine fed a pencil with a constant term
  NoConvergence,       // numerical routine stalled before its tolerance
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace specpoly
