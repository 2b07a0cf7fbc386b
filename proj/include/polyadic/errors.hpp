#ifndef POLYADIC_ERRORS_HPP
#define POLYADIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polyadic {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A polyad has the wrong length for the requested operation, or two systems
/// of different arity were combined.
struct ArityMismatch : Error {
  using Error::Error;
};

/// An element lies outside the system's carrier (bad index, value outside the
/// closed-form domain, or an intermediate value left the domain mid-formula).
struct DomainViolation : Error {
  using Error::Error;
};

/// Constant positions passed to a reduced product collide or fall outside
/// the product's slots.
struct PositionOverlap : Error {
  using Error::Error;
};

/// An exhaustive sweep would evaluate more tuples than the configured budget.
/// Exhaustive requests never degrade silently to sampling; they fail loudly.
struct SweepBudgetExceeded : Error {
  using Error::Error;
};

/// No querelement exists for the given element.
struct NotQuerable : Error {
  using Error::Error;
};

/// A search that must have a unique solution (querelement, negative power)
/// found more than one; the system is not an n-ary group.
struct NonUniqueSolution : Error {
  using Error::Error;
};

/// A search that must have a solution found none.
struct NoSolution : Error {
  using Error::Error;
};

/// An operation requiring an n-ary group was applied to something that
/// visibly is not one.
struct NotAGroup : Error {
  using Error::Error;
};

/// The chosen retract identity fails g * e == e * g == g.
struct IdentityLawFailed : Error {
  using Error::Error;
};

/// An element of a binary retract has no two-sided inverse.
struct NoInverse : Error {
  using Error::Error;
};

/// Family or constructor parameters violate their documented constraints.
struct InvalidParams : Error {
  using Error::Error;
};

/// A deformation parameter q does not match between paired structures, or is
/// not admissible for the arity.
struct QMismatch : Error {
  using Error::Error;
};

/// A reverse-construction hypothesis ((b1) conjugation or (b2) fixed point)
/// failed; the message names the hypothesis and a witness.
struct HypothesisFailed : Error {
  using Error::Error;
};

/// Two independently computed routes to the same decomposition datum disagree.
struct InconsistentDecomposition : Error {
  using Error::Error;
};

/// A theorem the implementation relies on was violated by computed data;
/// indicates a bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};

/// Integer arithmetic (Heine numbers, exponent towers) overflowed 64 bits.
struct OverflowError : Error {
  using Error::Error;
};

}  // namespace polyadic

#endif  // POLYADIC_ERRORS_HPP
