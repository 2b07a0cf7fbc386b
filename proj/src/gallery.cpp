#include "polyadic/gallery.hpp"

#include <cmath>

#include "binary_group.hpp"
#include "polyadic/analysis.hpp"
#include "polyadic/detail/sweep.hpp"
#include "polyadic/heine.hpp"

namespace polyadic {

namespace {

/// Signed binary power over a validated group table.
Idx group_pow(const BinaryCenterInfo& bc, Idx base, Idx exp) {
  auto bt = [&](Idx x, Idx y) {
    return bc.binary[static_cast<std::size_t>(x * bc.m + y)];
  };
  if (exp < 0) {
    base = bc.inverse[static_cast<std::size_t>(base)];
    exp = -exp;
  }
  Idx acc = bc.e;
  for (Idx i = 0; i < exp; ++i) acc = bt(acc, base);
  return acc;
}

Scalar scalar_ipow(Scalar base, Idx exp) {
  if (exp < 0) {
    if (std::abs(base) == 0.0) throw DomainViolation("0 raised to a negative power");
    return 1.0 / scalar_ipow(base, -exp);
  }
  Scalar acc = 1.0;
  for (Idx i = 0; i < exp; ++i) acc *= base;
  return acc;
}

double positive_pow(double x, double p, const char* what) {
  if (!(x > 0.0))
    throw DomainViolation(std::string(what) + ": bracket " + std::to_string(x) +
                          " is not positive");
  return std::pow(x, p);
}

}  // namespace

PolyadicSystem instantiate(const FamilySpec& spec, const SweepOptions& opts) {
  if (const auto* q = std::get_if<QAddSpec>(&spec))
    return PolyadicSystem(ClosedForm{Family::qadd, q->n, q->hbar, q->allow_complex, q->tol});
  if (const auto* c = std::get_if<CopulaSpec>(&spec))
    return PolyadicSystem(ClosedForm{Family::copula, 3, 0.0, false, c->tol});
  if (const auto* p = std::get_if<QProdSpec>(&spec))
    return PolyadicSystem(ClosedForm{Family::qprod, 3, p->hbar, false, p->tol});
  if (const auto* d = std::get_if<DerivedModularSpec>(&spec))
    return PolyadicSystem(DerivedModular{d->m, d->n, d->c});

  const auto& b = std::get<BinaryCenterSpec>(spec);
  if (b.n < 2) throw InvalidParams("binary_center: arity must be at least 2");
  CayleyTable bin;
  bin.n = 2;
  bin.m = b.m;
  bin.entries = b.binary;
  detail::BinaryGroupData grp = detail::validate_binary_group(bin, opts);
  if (b.c < 0 || b.c >= b.m)
    throw InvalidParams("binary_center: c outside the carrier");
  auto bt = [&](Idx x, Idx y) {
    return b.binary[static_cast<std::size_t>(x * b.m + y)];
  };
  for (Idx g = 0; g < b.m; ++g)
    if (bt(b.c, g) != bt(g, b.c))
      throw InvalidParams("binary_center: c=" + std::to_string(b.c) +
                          " is not central (fails to commute with " + std::to_string(g) +
                          ")");

  CayleyTable out;
  out.n = b.n;
  out.m = b.m;
  std::uint64_t cells = 1;
  for (Idx i = 0; i < b.n; ++i) cells *= static_cast<std::uint64_t>(b.m);
  out.entries.resize(cells);
  std::vector<Idx> t(static_cast<std::size_t>(b.n), 0);
  std::uint64_t rank = 0;
  do {
    Idx acc = t[0];
    for (Idx i = 1; i < b.n; ++i) acc = bt(acc, t[static_cast<std::size_t>(i)]);
    out.entries[rank++] = bt(acc, b.c);
  } while (detail::next_tuple(t, b.m));

  PolyadicSystem sys(std::move(out));
  sys.set_binary_center(BinaryCenterInfo{b.m, b.binary, grp.inverse, grp.e, b.c});
  return sys;
}

Element reference_power(const PolyadicSystem& sys, const Element& g, Idx ell) {
  sys.require_in_domain(g);
  Idx n = sys.arity();

  if (const auto* d = sys.derived()) {
    Idx coeff = detail::checked_add(detail::checked_mul(ell, n - 1), 1);
    Idx v = detail::checked_add(detail::checked_mul(coeff, g.idx()),
                                detail::checked_mul(ell, d->c));
    return Element::index(mod(v, d->m));
  }

  if (const auto* bc = sys.binary_center()) {
    Idx coeff = detail::checked_add(detail::checked_mul(ell, n - 1), 1);
    auto bt = [&](Idx x, Idx y) {
      return bc->binary[static_cast<std::size_t>(x * bc->m + y)];
    };
    return Element::index(bt(group_pow(*bc, g.idx(), coeff), group_pow(*bc, bc->c, ell)));
  }

  const ClosedForm* f = sys.closed_form();
  if (!f)
    throw InvalidParams("no closed-form power reference for a bare Cayley table");
  switch (f->family) {
    case Family::qadd: {
      if (ell < 0)
        throw InvalidParams(
            "q-addition is not totally associative; the closed form covers "
            "non-negative exponents only");
      Scalar z = g.scalar();
      if (std::abs(z) == 0.0) return Element::complex(0.0);  // all powers of 0 are 0
      Scalar gpow = scalar_ipow(z, n - 1);
      Scalar A = 1.0 + f->hbar * gpow;
      if (std::abs(A) == 0.0)
        throw DomainViolation("power reference singular: 1 + hbar*g^{n-1} = 0");
      // x_ell = A^ell (g - p) + p with fixed point p = -((n-1)/hbar) g^{2-n};
      // the left-nested fold x_k = mu[x_{k-1}, g^{n-1}] is affine in x_{k-1}.
      Scalar p = -(static_cast<double>(n - 1) / f->hbar) * scalar_ipow(z, 2 - n);
      return Element::complex(scalar_ipow(A, ell) * (z - p) + p);
    }
    case Family::copula:
      return g;
    case Family::qprod: {
      double y = std::pow(g.real_value(), f->hbar);
      double bracket = static_cast<double>(2 * ell + 1) * y - 3.0 * static_cast<double>(ell);
      return Element::real(positive_pow(bracket, 1.0 / f->hbar, "power reference"));
    }
  }
  throw InternalError("reference_power: unhandled family");
}

Element reference_quer(const PolyadicSystem& sys, const Element& g) {
  sys.require_in_domain(g);
  Idx n = sys.arity();

  if (const auto* d = sys.derived())
    return Element::index(mod((2 - n) * g.idx() - d->c, d->m));

  if (const auto* bc = sys.binary_center()) {
    auto bt = [&](Idx x, Idx y) {
      return bc->binary[static_cast<std::size_t>(x * bc->m + y)];
    };
    return Element::index(bt(group_pow(*bc, g.idx(), 2 - n),
                             bc->inverse[static_cast<std::size_t>(bc->c)]));
  }

  const ClosedForm* f = sys.closed_form();
  if (!f) throw InvalidParams("no closed-form quer reference for a bare Cayley table");
  switch (f->family) {
    case Family::qadd: {
      Scalar z = g.scalar();
      Scalar A = 1.0 + f->hbar * scalar_ipow(z, n - 1);
      if (std::abs(A) == 0.0)
        throw DomainViolation("quer reference singular: 1 + hbar*g^{n-1} = 0");
      return Element::complex(-static_cast<double>(n - 2) * z / A);
    }
    case Family::copula:
      return g;
    case Family::qprod: {
      double bracket = 3.0 - std::pow(g.real_value(), f->hbar);
      return Element::real(positive_pow(bracket, 1.0 / f->hbar, "quer reference"));
    }
  }
  throw InternalError("reference_quer: unhandled family");
}

Element reference_querpower(const PolyadicSystem& sys, const Element& g, Idx k) {
  if (k < 0) throw InvalidParams("reference_querpower: k must be non-negative");
  sys.require_in_domain(g);
  Idx n = sys.arity();

  if (const auto* d = sys.derived()) {
    Idx coeff = ipow(2 - n, k);
    Idx val = detail::checked_mul(coeff, g.idx()) -
              detail::checked_mul(heine(k, 2 - n), d->c);
    return Element::index(mod(val, d->m));
  }

  if (const auto* bc = sys.binary_center()) {
    auto bt = [&](Idx x, Idx y) {
      return bc->binary[static_cast<std::size_t>(x * bc->m + y)];
    };
    // quer^k(g) = g^{(2-n)^k} . c^{-[[k]]_{2-n}}.
    return Element::index(bt(group_pow(*bc, g.idx(), ipow(2 - n, k)),
                             group_pow(*bc, bc->c, -heine(k, 2 - n))));
  }

  const ClosedForm* f = sys.closed_form();
  if (!f)
    throw InvalidParams("no closed-form querpower reference for a bare Cayley table");
  if (f->family == Family::copula) return g;
  if (f->family == Family::qadd) {
    // No associativity, so no negative-power route; iterate the quer formula.
    Element acc = g;
    for (Idx i = 0; i < k; ++i) acc = reference_quer(sys, acc);
    return acc;
  }
  // Associative families: route through quer^k(g) = g^<-[[k]]_{2-n}>.
  return reference_power(sys, g, -heine(k, 2 - n));
}

double copula_phi_reference(double e, double g) {
  double den = e * e - 2.0 * g * e + g;
  if (den == 0.0) throw DomainViolation("copula phi reference: denominator is 0");
  return e * e * (1.0 - g) / den;
}

double qprod_star_reference(double hbar, double e, double g, double t) {
  double bracket = std::pow(g, hbar) - std::pow(e, hbar) + std::pow(t, hbar);
  return positive_pow(bracket, 1.0 / hbar, "qprod star reference");
}

double qprod_phi3_reference(double hbar, double e, double g, Idx j) {
  double bracket = std::pow(g, hbar) +
                   static_cast<double>(j) * (3.0 - 2.0 * std::pow(e, hbar));
  return positive_pow(bracket, 1.0 / hbar, "qprod phi_3 reference");
}

double qprod_b3_reference(double hbar, double e) {
  double bracket = 13.0 * std::pow(e, hbar) - 18.0;
  return positive_pow(bracket, 1.0 / hbar, "qprod b_3 reference");
}

const char* reference_kind_name(ReferenceKind k) {
  switch (k) {
    case ReferenceKind::power:
      return "power";
    case ReferenceKind::quer:
      return "quer";
    case ReferenceKind::querpower:
      return "querpower";
    case ReferenceKind::negpower:
      return "negpower";
  }
  return "unknown";
}

namespace {

template <class Fn>
void guarded(ReferenceReport& rep, Fn&& fn) {
  try {
    fn();
  } catch (const DomainViolation&) {
    ++rep.skipped;
  } catch (const NotQuerable&) {
    ++rep.skipped;
  } catch (const NoSolution&) {
    ++rep.skipped;
  } catch (const OverflowError&) {
    ++rep.skipped;
  }
}

void record_mismatch(ReferenceReport& rep, const std::string& note) {
  ++rep.mismatched;
  if (rep.notes.size() < 8) rep.notes.push_back(note);
}

}  // namespace

ReferenceReport reference_check(const PolyadicSystem& sys, ReferenceKind kind,
                                Idx k_max) {
  if (k_max < 0) throw InvalidParams("reference_check: k_max must be >= 0");
  ReferenceReport rep;
  rep.kind = kind;
  Idx n = sys.arity();
  const ClosedForm* f = sys.closed_form();
  bool qadd = f && f->family == Family::qadd && !sys.binary_center();

  if (kind == ReferenceKind::negpower && qadd) {
    rep.skipped = sys.carrier_sample().size() * static_cast<std::uint64_t>(k_max);
    rep.notes.push_back(
        "q-addition is not totally associative: no closed-form claim for "
        "negative powers, all comparisons skipped");
    return rep;
  }

  for (const Element& g : sys.carrier_sample()) {
    switch (kind) {
      case ReferenceKind::power:
        for (Idx ell = 0; ell <= k_max; ++ell) {
          guarded(rep, [&] {
            Element ref = reference_power(sys, g, ell);
            Element eng = power_signed(sys, g, ell);
            ++rep.compared;
            if (!sys.equal(ref, eng))
              record_mismatch(rep, "g=" + g.str() + ", ell=" + std::to_string(ell) +
                                       ": engine " + eng.str() + ", reference " +
                                       ref.str());
          });
        }
        break;
      case ReferenceKind::negpower:
        for (Idx ell = 1; ell <= k_max; ++ell) {
          guarded(rep, [&] {
            Element ref = reference_power(sys, g, -ell);
            Element eng = negative_power(sys, g, ell);
            ++rep.compared;
            if (!sys.equal(ref, eng))
              record_mismatch(rep, "g=" + g.str() + ", ell=-" + std::to_string(ell) +
                                       ": engine " + eng.str() + ", reference " +
                                       ref.str());
          });
        }
        break;
      case ReferenceKind::quer:
        guarded(rep, [&] {
          Element ref = reference_quer(sys, g);
          Polyad defining(static_cast<std::size_t>(n), g);
          defining.back() = ref;
          Element back = sys.evaluate(defining);
          Element eng = querelement(sys, g);
          ++rep.compared;
          if (!sys.equal(back, g))
            record_mismatch(rep, "g=" + g.str() + ": reference quer " + ref.str() +
                                     " fails the defining equation (mu gives " +
                                     back.str() + ")");
          else if (!sys.equal(ref, eng))
            record_mismatch(rep, "g=" + g.str() + ": engine quer " + eng.str() +
                                     ", reference " + ref.str());
        });
        break;
      case ReferenceKind::querpower:
        for (Idx k = 0; k <= k_max; ++k) {
          guarded(rep, [&] {
            Element ref = reference_querpower(sys, g, k);
            Element eng = querpower(sys, g, k);
            ++rep.compared;
            if (!sys.equal(ref, eng))
              record_mismatch(rep, "g=" + g.str() + ", k=" + std::to_string(k) +
                                       ": engine " + eng.str() + ", reference " +
                                       ref.str());
          });
        }
        break;
    }
  }
  return rep;
}

GalleryReport gallery_check(const PolyadicSystem& sys, Idx k_max) {
  GalleryReport rep;
  rep.system = sys.describe();
  rep.checks.push_back(reference_check(sys, ReferenceKind::power, k_max));
  rep.checks.push_back(reference_check(sys, ReferenceKind::quer, k_max));
  rep.checks.push_back(reference_check(sys, ReferenceKind::querpower, k_max));
  rep.checks.push_back(reference_check(sys, ReferenceKind::negpower, k_max));
  return rep;
}

}  // namespace polyadic
