#ifndef POLYADIC_OPTIONS_HPP
#define POLYADIC_OPTIONS_HPP

#include <cstdint>

namespace polyadic {

/// Controls for sweep-style verification predicates.
struct SweepOptions {
  /// Maximum number of tuples a single exhaustive predicate may evaluate.
  /// Exceeding it throws SweepBudgetExceeded; exhaustive sweeps never fall
  /// back to sampling silently.  Defaults to 10^7, overridable via the
  /// POLYADIC_BUDGET environment variable.
  std::uint64_t budget = default_budget();

  /// Worker threads for partitionable sweeps.  Results are deterministic
  /// regardless of the value: the reported witness is always the one with
  /// the lowest tuple rank.
  int jobs = 1;

  static std::uint64_t default_budget();
};

}  // namespace polyadic

#endif  // POLYADIC_OPTIONS_HPP
