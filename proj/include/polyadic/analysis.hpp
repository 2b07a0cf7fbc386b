#ifndef POLYADIC_ANALYSIS_HPP
#define POLYADIC_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "polyadic/element.hpp"
#include "polyadic/options.hpp"
#include "polyadic/system.hpp"

namespace polyadic {

/// How a verdict was reached.  `exhaustive` covers the whole tuple space,
/// `sampled` a deterministic pseudo-random subset, `asserted` a family-level
/// claim validated only on samples.
enum class Evidence { exhaustive, sampled, asserted };

const char* evidence_name(Evidence e);

/// How a predicate should traverse its tuple space.  `exhaustive` throws
/// SweepBudgetExceeded when the space is over budget (never downgrades
/// silently); `auto_` picks exhaustive when the space fits the budget and a
/// finite carrier, otherwise sampled.  Closed-form carriers are always
/// sampled.
enum class Strategy { exhaustive, sampled, auto_ };

struct Witness {
  Polyad tuple;      ///< the offending arguments, in order
  std::string note;  ///< what failed, human-readable
};

struct CheckResult {
  bool pass = true;
  Evidence evidence = Evidence::exhaustive;
  std::uint64_t checked = 0;  ///< tuples actually evaluated
  std::uint64_t skipped = 0;  ///< tuples skipped for leaving a numeric domain
  std::optional<Witness> witness;
};

struct CommutativityReport {
  CheckResult commutative;      ///< invariant under every permutation
  CheckResult semicommutative;  ///< invariant under swapping first and last
};

struct ClassificationReport {
  Idx arity = 0;
  std::optional<Idx> order;
  CheckResult associative;
  std::vector<CheckResult> solvable;  ///< one entry per argument position
  CheckResult quasigroup;             ///< solvable at every position
  CheckResult group;                  ///< associative quasigroup
  CheckResult medial;
  CheckResult commutative;
  CheckResult semicommutative;
  std::vector<CheckResult> cancellative;  ///< one entry per argument position
  CheckResult idempotency;                ///< every (sampled) element idempotent
  std::vector<Element> idempotents;       ///< finite carriers only
};

/// Total associativity: every placement of the inner product inside a
/// (2n-1)-tuple yields the same value.
CheckResult check_associativity(const PolyadicSystem& sys, const SweepOptions& opts = {},
                                Strategy strategy = Strategy::auto_);

/// Unique solvability of mu[...x...] = b in each argument position.
std::vector<CheckResult> check_solvability(const PolyadicSystem& sys,
                                           const SweepOptions& opts = {},
                                           Strategy strategy = Strategy::auto_);

/// Mediality: mu applied to the rows of an n x n matrix, then to the results,
/// equals the same with the transposed matrix.
CheckResult check_mediality(const PolyadicSystem& sys, const SweepOptions& opts = {},
                            Strategy strategy = Strategy::auto_);

CommutativityReport check_commutativity(const PolyadicSystem& sys,
                                        const SweepOptions& opts = {},
                                        Strategy strategy = Strategy::auto_);

/// Cancellativity in each argument position: equal products with equal
/// contexts force equal arguments.
std::vector<CheckResult> check_cancellativity(const PolyadicSystem& sys,
                                              const SweepOptions& opts = {},
                                              Strategy strategy = Strategy::auto_);

/// Runs the full battery above and assembles the report.
ClassificationReport classify(const PolyadicSystem& sys, const SweepOptions& opts = {},
                              Strategy strategy = Strategy::auto_);

/// The querelement of g: the unique solution of mu[g^{n-1}, x] = g.
/// Finite carriers search exhaustively (NotQuerable / NonUniqueSolution on
/// failure); closed forms use the family formula and validate it.
Element querelement(const PolyadicSystem& sys, const Element& g);

/// k-fold querelement, quer applied k >= 0 times.
Element querpower(const PolyadicSystem& sys, const Element& g, Idx k);

/// g^<-ell> for ell >= 1: the unique solution of mu^ell[g^{ell(n-1)}, x] = g.
Element negative_power(const PolyadicSystem& sys, const Element& g, Idx ell);

/// Polyadic power for any integer exponent.
Element power_signed(const PolyadicSystem& sys, const Element& g, Idx ell);

/// Checks quer^k(g) == g^<-[[k]]_{2-n}> for k = 0..k_max, where [[.]] is the
/// Heine number with base 2-n (note the exponent may come out positive).
CheckResult verify_querpower_identity(const PolyadicSystem& sys, const Element& g,
                                      Idx k_max);

/// Whether the polyad (length k(n-1) for some k >= 1) is neutral for g:
/// inserting g at any slot and folding with mu^k returns g.
bool is_neutral(const PolyadicSystem& sys, const Element& g, const Polyad& polyad);

/// All (n-1)-polyads neutral for every carrier element.  Finite systems only.
std::vector<Polyad> neutral_polyads(const PolyadicSystem& sys,
                                    const SweepOptions& opts = {});

/// The inverse polyad (g^{n-3}, quer(g)) of length n-2, for n >= 3; validated
/// by mu[g, inverse, h] == h == mu[h, inverse, g] over the carrier (finite)
/// or samples (closed forms).
Polyad polyadic_inverse(const PolyadicSystem& sys, const Element& g);

/// The querelement relations: mu over n-1 copies of g and one quer(g), the
/// quer in any position, returns g.
CheckResult verify_dornte(const PolyadicSystem& sys, const SweepOptions& opts = {});

/// g^<ell> == g.
bool is_idempotent(const PolyadicSystem& sys, const Element& g, Idx ell = 1);

}  // namespace polyadic

#endif  // POLYADIC_ANALYSIS_HPP
