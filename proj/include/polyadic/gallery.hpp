#ifndef POLYADIC_GALLERY_HPP
#define POLYADIC_GALLERY_HPP

#include <string>
#include <variant>
#include <vector>

#include "polyadic/element.hpp"
#include "polyadic/options.hpp"
#include "polyadic/system.hpp"

namespace polyadic {

/// mu[g] = sum g_i + hbar * prod g_i over the reals (or complexes).
struct QAddSpec {
  Idx n = 3;
  double hbar = 1.0;
  bool allow_complex = false;
  double tol = 1e-9;
};

/// Ternary product-type operation on [0, 1]; every element idempotent and
/// its own querelement.
struct CopulaSpec {
  double tol = 1e-9;
};

/// Ternary mu[g,t,u] = (g^hbar + t^hbar + u^hbar - 3)^{1/hbar} on positive
/// reals, hbar in (0, 1); partial (brackets must stay positive).
struct QProdSpec {
  double hbar = 0.5;
  double tol = 1e-9;
};

/// mu[g_1..g_n] = g_1 + ... + g_n + c over Z_m.
struct DerivedModularSpec {
  Idx m = 2;
  Idx n = 2;
  Idx c = 0;
};

/// mu[g_1..g_n] = g_1 . g_2 . ... . g_n . c over a binary group given as an
/// m x m table, with c central (validated at instantiation).
struct BinaryCenterSpec {
  Idx m = 0;
  Idx n = 4;
  std::vector<Idx> binary;
  Idx c = 0;
};

using FamilySpec =
    std::variant<QAddSpec, CopulaSpec, QProdSpec, DerivedModularSpec, BinaryCenterSpec>;

/// Builds the system for a family spec, validating parameters (InvalidParams
/// on bad hbar, non-central c, non-group binary table, ...).
PolyadicSystem instantiate(const FamilySpec& spec, const SweepOptions& opts = {});

/// Closed-form reference values, computed from per-family formulas rather
/// than the engine's folds and searches.  Throw DomainViolation when the
/// formula leaves the carrier (callers of the bulk checks count those as
/// skipped).
///
/// The q-addition family is not totally associative, so only non-negative
/// power exponents have a closed form there (the affine extension to negative
/// exponents does not solve the negative-power equation); asking for one
/// raises InvalidParams.  The other families accept any integer exponent.
Element reference_power(const PolyadicSystem& sys, const Element& g, Idx ell);
Element reference_quer(const PolyadicSystem& sys, const Element& g);
Element reference_querpower(const PolyadicSystem& sys, const Element& g, Idx k);

/// Retract-level references for the ternary families.
/// Copula retract automorphism around e: phi(g) = e^2(1-g) / (e^2 - 2ge + g).
double copula_phi_reference(double e, double g);
/// q-product retract product around e: g * t = (g^h - e^h + t^h)^{1/h}.
double qprod_star_reference(double hbar, double e, double g, double t);
/// q-product deformed automorphism at q=3, iterated j times:
/// phi_3^j(g) = (g^h - 2j e^h + 3j)^{1/h}.
double qprod_phi3_reference(double hbar, double e, double g, Idx j = 1);
/// q-product distinguished element at q=3: b_3 = (13 e^h - 18)^{1/h}.
double qprod_b3_reference(double hbar, double e);

enum class ReferenceKind { power, quer, querpower, negpower };

const char* reference_kind_name(ReferenceKind k);

struct ReferenceReport {
  ReferenceKind kind = ReferenceKind::power;
  std::uint64_t compared = 0;
  std::uint64_t mismatched = 0;
  std::uint64_t skipped = 0;  // formula or engine left the carrier
  std::vector<std::string> notes;
  bool pass() const { return mismatched == 0; }
};

/// Compares engine values (folds, searches, quer iteration) against the
/// family reference formulas over the carrier (finite) or the family sample
/// points.  Exponents range over 0..k_max for power and querpower and
/// 1..k_max for negpower (engine negative_power vs the power reference at
/// -ell).  Kinds a family makes no claim for (q-addition negative powers)
/// report everything as skipped with a note.
ReferenceReport reference_check(const PolyadicSystem& sys, ReferenceKind kind,
                                Idx k_max = 4);

struct GalleryReport {
  std::string system;
  std::vector<ReferenceReport> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass()) return false;
    return true;
  }
};

/// reference_check for all kinds.
GalleryReport gallery_check(const PolyadicSystem& sys, Idx k_max = 4);

}  // namespace polyadic

#endif  // POLYADIC_GALLERY_HPP
