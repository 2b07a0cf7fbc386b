#ifndef POLYADIC_SYSTEM_HPP
#define POLYADIC_SYSTEM_HPP

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polyadic/element.hpp"
#include "polyadic/errors.hpp"

namespace polyadic {

/// n-ary operation derived from Z_m:  mu[g_1..g_n] = g_1 + ... + g_n + c (mod m).
/// Always an n-ary group; the workhorse for exhaustive oracles.
struct DerivedModular {
  Idx m = 2;
  Idx n = 2;
  Idx c = 0;
};

/// Explicit n-ary Cayley table over {0..m-1}; entries row-major with the last
/// argument index varying fastest.  No algebraic properties are assumed, so
/// arbitrary finite magmas (including non-groups) can be represented.
struct CayleyTable {
  Idx n = 2;
  Idx m = 0;
  std::vector<Idx> entries;
};

/// Closed-form numeric families.
enum class Family {
  qadd,    ///< mu[g] = sum g_i + hbar * prod g_i over R (or C), any arity
  copula,  ///< ternary product-type operation on [0, 1]
  qprod,   ///< ternary mu[g,t,u] = (g^h + t^h + u^h - 3)^{1/h} on positive reals
};

const char* family_name(Family f);

struct ClosedForm {
  Family family = Family::qadd;
  Idx n = 3;
  double hbar = 1.0;           ///< deformation parameter (qadd: != 0; qprod: in (0,1))
  bool allow_complex = false;  ///< qadd only: admit complex carrier values
  double tol = 1e-9;           ///< relative tolerance used by equal()
};

/// Provenance for n-ary systems built as g_1 * ... * g_n * c over a binary
/// group with central c; kept so closed-form reference formulas (powers,
/// querelements in terms of binary exponents) remain available.
struct BinaryCenterInfo {
  Idx m = 0;
  std::vector<Idx> binary;   ///< m*m table, row-major
  std::vector<Idx> inverse;  ///< binary inverse of each element
  Idx e = 0;                 ///< binary identity
  Idx c = 0;                 ///< the central element
};

/// A concrete n-ary system: a carrier plus one total n-ary operation.
/// Immutable after construction.  Operations validate arity and domain and
/// throw; they never return sentinel values.
class PolyadicSystem {
 public:
  explicit PolyadicSystem(DerivedModular d);
  explicit PolyadicSystem(CayleyTable t);
  explicit PolyadicSystem(ClosedForm f);

  Idx arity() const;
  bool is_finite() const;
  /// Carrier size; throws InvalidParams for infinite (closed-form) carriers.
  Idx order() const;
  /// Relative tolerance for equal(); 0 for finite systems (exact comparison).
  double tolerance() const;

  bool in_domain(const Element& g) const;
  void require_in_domain(const Element& g) const;

  /// The n-ary product.  args.size() must equal arity().
  Element evaluate(const Polyad& args) const;

  /// Left-nested iterated product mu^ell: consumes ell*(n-1)+1 arguments by
  /// folding the first n, then the result with the next n-1, and so on.
  Element iterated_product(Idx ell, const Polyad& args) const;

  /// mu with constants frozen at the given (distinct, 0-based) positions;
  /// the remaining slots are filled with args in order.  The result is an
  /// (n - constants.size())-ary operation value.
  Element reduced_product(const Polyad& constants, const std::vector<Idx>& positions,
                          const Polyad& args) const;

  /// Polyadic power g^<ell> = mu^ell over ell*(n-1)+1 copies of g; g^<0> = g.
  Element polyadic_power(const Element& g, Idx ell) const;

  /// Equality in the carrier: exact for finite systems, relative-tolerance
  /// |a-b| <= tol*max(1,|a|,|b|) for closed forms.
  bool equal(const Element& a, const Element& b) const;

  const DerivedModular* derived() const;
  const CayleyTable* table() const;
  const ClosedForm* closed_form() const;

  const BinaryCenterInfo* binary_center() const;
  void set_binary_center(BinaryCenterInfo info);

  /// Short human-readable description, e.g. "derived_modular(m=5,n=3,c=2)".
  std::string describe() const;

  /// Finite: the whole carrier.  Closed forms: a fixed, family-appropriate
  /// list of sample points used by sampled checks and CLI defaults.
  std::vector<Element> carrier_sample() const;

 private:
  std::variant<DerivedModular, CayleyTable, ClosedForm> rep_;
  std::shared_ptr<const BinaryCenterInfo> bc_;
};

}  // namespace polyadic

#endif  // POLYADIC_SYSTEM_HPP
