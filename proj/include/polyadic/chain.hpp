#ifndef POLYADIC_CHAIN_HPP
#define POLYADIC_CHAIN_HPP

#include <optional>
#include <string>
#include <vector>

#include "polyadic/analysis.hpp"
#include "polyadic/retract.hpp"

namespace polyadic {

/// Admissibility data for a deformation parameter q at arity n.
/// ell_phi(q) = (q(n-2)+1)/(n-1) must be integral for the deformed
/// automorphism to exist (equivalently q = 1 mod n-1); ell_e(q) =
/// ([[n]]_q - 1)/(n-1) is the power giving the distinguished element
/// b_q = e^<ell_e>.  Both integrality checks are computed independently.
struct QValue {
  Idx q = 0;
  bool admissible = false;   ///< ell_phi integral
  Idx ell_phi = -1;          ///< valid when admissible
  bool ell_e_integral = false;
  Idx ell_e = -1;            ///< valid when ell_e_integral
};

/// All q in 0..q_max with their admissibility data.
std::vector<QValue> enumerate_q(Idx n, Idx q_max);

/// The q-deformed Hosszu-Gluskin data over a retract:
///     phi_q(g)  = mu^{ell_phi}[e, g, (e^{-1})^q]
///     b_q       = e^<ell_e>          (fold over [[n]]_q copies of e)
///     M_q[g]    = g_1 * phi_q^{[[1]]_q}(g_2) * ... * phi_q^{[[n-1]]_q}(g_n) * b_q
/// q = 1 recovers the classical chain (phi an automorphism, b = e^<1>).
/// Finite decompositions precompute phi and each phi^{[[i]]_q} as lookup
/// tables, so chain sweeps cost a handful of array reads per tuple.
class ChainDecomposition {
 public:
  const BinaryRetract& retract() const { return r_; }
  const PolyadicSystem& base() const { return r_.base(); }
  Idx q() const { return q_; }
  Idx ell_phi() const { return lphi_; }
  Idx ell_e() const { return le_; }

  Element phi(const Element& g) const;
  /// phi_q applied k >= 0 times.
  Element iterate_phi(const Element& g, Idx k) const;

  /// The distinguished element b_q; computed by two independent routes at
  /// build time (InconsistentDecomposition if they disagree).
  const Element& b() const { return b_; }
  /// a = phi_q(e), the defect of phi_q from being an endomorphism.
  const Element& a() const { return a_; }

  /// Evaluates the chain M_q on an n-tuple.
  Element chain_evaluate(const Polyad& args) const;

  /// Cached phi^{[[i]]_q} tables, one per i = 0..n-1; empty when the retract
  /// is not cached.  exponent_tables()[i][g] = phi^{[[i]]_q}(g).
  const std::vector<std::vector<Idx>>& exponent_tables() const { return exp_; }

  friend ChainDecomposition build_chain(const BinaryRetract& r, Idx q);

 private:
  ChainDecomposition(BinaryRetract r, Idx q, Idx lphi, Idx le);

  BinaryRetract r_;
  Idx q_, lphi_, le_;
  Element b_, a_;
  std::vector<Idx> phi_tab_;
  std::vector<std::vector<Idx>> exp_;
};

/// Builds the decomposition for an admissible q (QMismatch otherwise).
ChainDecomposition build_chain(const BinaryRetract& r, Idx q);

/// phi_q(g) * phi_q(h) == phi_q(g * a * h) with a = phi_q(e), over all pairs
/// (finite) or samples.
CheckResult check_quasi_endomorphism(const ChainDecomposition& d,
                                     const SweepOptions& opts = {},
                                     Strategy strategy = Strategy::auto_);

/// phi_q(b_q) == b_q * a.
CheckResult check_quasi_fixed_point(const ChainDecomposition& d);

/// phi_q^{[[n-1]]_q}(g) * b_q == b_q * phi_q^{[[n-1]]_q}(e) * g for all g.
CheckResult check_quasi_conjugation(const ChainDecomposition& d,
                                    const SweepOptions& opts = {},
                                    Strategy strategy = Strategy::auto_);

/// phi_q(e^<k>) == e^<k> for k = 0..k_max (an identity of the classical
/// q = 1 chain; for other q it may fail honestly).
CheckResult check_fixed_points(const ChainDecomposition& d, Idx k_max);

/// phi_q^{k(n-1)}(g) == e^<k> * g * (e^<k>)^{-1} for k = 1..k_max; at q = 1
/// this is the conjugation property of the classical chain (for n = 3 it
/// reads phi^{2k}(g) = e^<k> * g * (e^<k>)^{-1}).
CheckResult check_conjugation(const ChainDecomposition& d, Idx k_max,
                              const SweepOptions& opts = {},
                              Strategy strategy = Strategy::auto_);

/// One q-entry of an invariance sweep.
struct ChainCheck {
  QValue q;
  std::optional<Element> b;    ///< empty when the entry was skipped
  CheckResult result;
  std::string skip_reason;     ///< non-empty when b_q/phi_q left the carrier
  bool skipped_entry() const { return !skip_reason.empty(); }
};

struct InvarianceReport {
  Element e;
  std::vector<ChainCheck> entries;
  bool all_pass() const;
  std::uint64_t total_checked() const;
};

/// For every admissible q <= q_max, checks M_q == mu_n over the whole tuple
/// space (finite) or sampled tuples with domain-violation counting (closed
/// forms).  Entries whose b_q does not exist in the carrier are recorded as
/// skipped, never as silent passes.
InvarianceReport verify_invariance(const PolyadicSystem& sys, const Element& e,
                                   Idx q_max, const SweepOptions& opts = {},
                                   Strategy strategy = Strategy::auto_);

/// Reverse construction: from a binary group (m x m Cayley table), an
/// automorphism phi given as a permutation table, and an element b with
///   (b1)  phi^{n-1}(g) == b * g * b^{-1} for every g,
///   (b2)  phi(b) == b,
/// builds the n-ary product g_1 * phi(g_2) * ... * phi^{n-1}(g_n) * b,
/// verifies it is an n-ary group and that b == e^<1> there (InternalError if
/// the construction theorem is violated), and returns it.
PolyadicSystem reverse_construct(const CayleyTable& binary, const std::vector<Idx>& phi,
                                 Idx b, Idx n, const SweepOptions& opts = {});

/// The n+1 extended homotopy maps of a decomposition:
///   psi_i(g)     = phi_q^{[[i-1]]_q}(g)        for i = 1..n
///   psi_{n+1}(g) = g^<ell_e>                   (fold over [[n]]_q copies)
/// verify() checks mu_n[g] == psi_1(g_1) * ... * psi_n(g_n) * psi_{n+1}(e).
class ExtendedHomotopyMaps {
 public:
  explicit ExtendedHomotopyMaps(ChainDecomposition d);
  Idx count() const { return base().arity() + 1; }
  const ChainDecomposition& decomposition() const { return d_; }
  const PolyadicSystem& base() const { return d_.base(); }

  /// i is 1-based, in 1..n+1.
  Element apply(Idx i, const Element& g) const;

  CheckResult verify(const SweepOptions& opts = {},
                     Strategy strategy = Strategy::auto_) const;

 private:
  ChainDecomposition d_;
};

}  // namespace polyadic

#endif  // POLYADIC_CHAIN_HPP
