#ifndef POLYADIC_RETRACT_HPP
#define POLYADIC_RETRACT_HPP

#include <vector>

#include "polyadic/analysis.hpp"
#include "polyadic/element.hpp"
#include "polyadic/options.hpp"
#include "polyadic/system.hpp"

namespace polyadic {

/// The binary retract of an n-ary group around a chosen identity e:
///     g * h  =  mu_n[g, e^{n-3}, quer(e), h]
/// (for n = 2 the retract is mu itself).  Owns a copy of the base system;
/// finite retracts of modest order materialize the m x m Cayley table of *
/// so chain sweeps run on lookups.
class BinaryRetract {
 public:
  const PolyadicSystem& base() const { return sys_; }
  const Element& identity() const { return e_; }
  /// quer(e), the last entry of the canonical inverse polyad.
  const Element& identity_quer() const { return ebar_; }
  /// The (n-2)-polyad (e^{n-3}, quer(e)) spliced between * factors.
  const Polyad& identity_inverse() const { return einv_; }

  Element star(const Element& g, const Element& h) const;

  /// Binary inverse on the retract: mu_n[e, g^{n-3}, quer(g), e] for n >= 3,
  /// validated two-sidedly; searched (finite) or solved (closed forms) at n=2.
  Element inverse(const Element& g) const;

  bool cached() const { return !table_.empty(); }
  /// Cached * table (row-major, m x m); empty when not materialized.
  const std::vector<Idx>& star_table() const { return table_; }

  friend BinaryRetract build_retract(const PolyadicSystem& sys, const Element& e,
                                     const SweepOptions& opts);

 private:
  BinaryRetract(PolyadicSystem sys, Element e, Element ebar);

  PolyadicSystem sys_;
  Element e_;
  Element ebar_;
  Polyad einv_;
  std::vector<Idx> table_;
};

/// Builds the retract at e and validates the identity laws
/// g * e == e * g == g over the carrier (finite) or samples (closed forms).
/// Throws NotAGroup when e has no unique querelement, IdentityLawFailed with
/// a witness when the laws break.
BinaryRetract build_retract(const PolyadicSystem& sys, const Element& e,
                            const SweepOptions& opts = {});

}  // namespace polyadic

#endif  // POLYADIC_RETRACT_HPP
