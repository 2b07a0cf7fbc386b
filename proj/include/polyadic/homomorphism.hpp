#ifndef POLYADIC_HOMOMORPHISM_HPP
#define POLYADIC_HOMOMORPHISM_HPP

#include <string>
#include <variant>
#include <vector>

#include "polyadic/analysis.hpp"
#include "polyadic/chain.hpp"
#include "polyadic/system.hpp"

namespace polyadic {

/// A map between carriers: an explicit image table for finite carriers, or
/// one of the closed-form families' natural parameter maps (scaling g -> l*g
/// on q-addition carriers, powers g -> g^s on the q-product carrier).
/// Arbitrary numeric maps are deliberately not representable.
class CarrierMap {
 public:
  static CarrierMap table(std::vector<Idx> image);
  static CarrierMap identity();
  static CarrierMap scale(Scalar lambda);
  static CarrierMap power(double s);

  Element operator()(const Element& g) const;

  /// Non-null for finite image tables.
  const std::vector<Idx>* image_table() const;

  std::string describe() const;

 private:
  struct Table {
    std::vector<Idx> image;
  };
  struct Identity {};
  struct Scale {
    Scalar lambda;
  };
  struct Power {
    double s;
  };
  using Rep = std::variant<Table, Identity, Scale, Power>;
  explicit CarrierMap(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

/// f(mu[g_1..g_n]) == mu'[f(g_1)..f(g_n)] over all tuples (finite) or samples.
CheckResult check_homomorphism(const CarrierMap& f, const PolyadicSystem& src,
                               const PolyadicSystem& tgt, const SweepOptions& opts = {},
                               Strategy strategy = Strategy::auto_);

/// Homotopy with n+1 maps: f_{n+1}(mu[g_1..g_n]) == mu'[f_1(g_1)..f_n(g_n)].
CheckResult check_homotopy(const std::vector<CarrierMap>& maps, const PolyadicSystem& src,
                           const PolyadicSystem& tgt, const SweepOptions& opts = {},
                           Strategy strategy = Strategy::auto_);

/// The four checks tying a binary-retract homomorphism to the n-ary one:
///   binary: f(g * h) == f(g) *' f(h)
///   ff1:    f(phi_q(g)) == phi'_q(f(g))
///   ff2:    f(b_q) == b'_q
///   ff3:    f is an n-ary homomorphism
/// The theorem: binary & ff1 & ff2 imply ff3.
struct DeformedCompatibility {
  CheckResult binary;
  CheckResult ff1;
  CheckResult ff2;
  CheckResult ff3;
  bool premises_hold() const { return binary.pass && ff1.pass && ff2.pass; }
  bool consistent_with_theorem() const { return !premises_hold() || ff3.pass; }
};

/// Runs all four checks.  Both decompositions must share q (QMismatch) and
/// arity (ArityMismatch).  On finite carriers, premises passing while ff3
/// fails violates the theorem and raises InternalError.
DeformedCompatibility check_deformed_compatibility(const CarrierMap& f,
                                                   const ChainDecomposition& src,
                                                   const ChainDecomposition& tgt,
                                                   const SweepOptions& opts = {},
                                                   Strategy strategy = Strategy::auto_);

}  // namespace polyadic

#endif  // POLYADIC_HOMOMORPHISM_HPP
