#include "polyadic/homomorphism.hpp"

#include <cmath>
#include <sstream>

#include "finite_eval.hpp"
#include "predicate_runner.hpp"

namespace polyadic {

namespace {

using detail::FiniteEval;
using detail::resolve_exhaustive;
using detail::run_finite_predicate;
using detail::run_numeric_predicate;

constexpr std::uint64_t kHomSampledTuples = 4000;

}  // namespace

CarrierMap CarrierMap::table(std::vector<Idx> image) {
  return CarrierMap(Table{std::move(image)});
}

CarrierMap CarrierMap::identity() { return CarrierMap(Identity{}); }

CarrierMap CarrierMap::scale(Scalar lambda) { return CarrierMap(Scale{lambda}); }

CarrierMap CarrierMap::power(double s) {
  if (s == 0.0) throw InvalidParams("power map: exponent must be non-zero");
  return CarrierMap(Power{s});
}

Element CarrierMap::operator()(const Element& g) const {
  if (const auto* t = std::get_if<Table>(&rep_)) {
    Idx i = g.idx();
    if (i < 0 || i >= static_cast<Idx>(t->image.size()))
      throw DomainViolation("map applied to index " + g.str() +
                            " outside its table of size " +
                            std::to_string(t->image.size()));
    return Element::index(t->image[static_cast<std::size_t>(i)]);
  }
  if (std::holds_alternative<Identity>(rep_)) return g;
  if (const auto* s = std::get_if<Scale>(&rep_))
    return Element::complex(s->lambda * g.scalar());
  const auto& p = std::get<Power>(rep_);
  double x = g.real_value();
  if (!(x > 0.0))
    throw DomainViolation("power map needs a positive argument, got " + g.str());
  return Element::real(std::pow(x, p.s));
}

const std::vector<Idx>* CarrierMap::image_table() const {
  if (const auto* t = std::get_if<Table>(&rep_)) return &t->image;
  return nullptr;
}

std::string CarrierMap::describe() const {
  std::ostringstream os;
  if (const auto* t = std::get_if<Table>(&rep_)) {
    os << "table[" << t->image.size() << "]";
  } else if (std::holds_alternative<Identity>(rep_)) {
    os << "identity";
  } else if (const auto* s = std::get_if<Scale>(&rep_)) {
    os << "scale(" << Element::complex(s->lambda).str() << ")";
  } else {
    os << "power(" << std::get<Power>(rep_).s << ")";
  }
  return os.str();
}

namespace {

void require_compatible(const PolyadicSystem& src, const PolyadicSystem& tgt) {
  if (src.arity() != tgt.arity())
    throw ArityMismatch("source arity " + std::to_string(src.arity()) +
                        " differs from target arity " + std::to_string(tgt.arity()));
  if (src.is_finite() != tgt.is_finite())
    throw InvalidParams("finite and closed-form carriers cannot be mixed in one check");
}

/// Image table of f over a finite source, validated against the target.
std::vector<Idx> materialize(const CarrierMap& f, const PolyadicSystem& src,
                             const PolyadicSystem& tgt) {
  Idx m = src.order();
  std::vector<Idx> img(static_cast<std::size_t>(m));
  for (Idx g = 0; g < m; ++g) {
    Element v = f(Element::index(g));
    tgt.require_in_domain(v);
    img[static_cast<std::size_t>(g)] = v.idx();
  }
  return img;
}

CheckResult homotopy_core(const std::vector<const CarrierMap*>& arg_maps,
                          const CarrierMap& out_map, const PolyadicSystem& src,
                          const PolyadicSystem& tgt, const SweepOptions& opts,
                          Strategy strategy, const char* name, std::uint64_t seed) {
  Idx n = src.arity();

  if (src.is_finite()) {
    bool exhaustive = resolve_exhaustive(src, static_cast<int>(n), opts, strategy, name);
    FiniteEval fs = detail::finite_eval(src);
    FiniteEval ft = detail::finite_eval(tgt);
    std::vector<std::vector<Idx>> argt;
    argt.reserve(arg_maps.size());
    for (const CarrierMap* mp : arg_maps) argt.push_back(materialize(*mp, src, tgt));
    std::vector<Idx> outt = materialize(out_map, src, tgt);
    auto make_worker = [fs, ft, argt, outt, n] {
      return [fs, ft, argt, outt, n,
              buf = std::vector<Idx>(static_cast<std::size_t>(n))](
                 const std::vector<Idx>& t) mutable {
        for (Idx i = 0; i < n; ++i)
          buf[static_cast<std::size_t>(i)] =
              argt[static_cast<std::size_t>(i)][static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
        return ft(buf.data()) == outt[static_cast<std::size_t>(fs(t.data()))];
      };
    };
    auto note = [](const std::vector<Idx>&) {
      return std::string("mapped product differs from product of mapped arguments");
    };
    return run_finite_predicate(src, static_cast<int>(n), opts, exhaustive, name, seed,
                                make_worker, note);
  }

  resolve_exhaustive(src, static_cast<int>(n), opts, strategy, name);
  return run_numeric_predicate(
      src, static_cast<int>(n), kHomSampledTuples, seed,
      [&](const Polyad& t) {
        Polyad mapped;
        mapped.reserve(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) mapped.push_back((*arg_maps[i])(t[i]));
        Element lhs = tgt.evaluate(mapped);
        Element rhs = out_map(src.evaluate(t));
        if (!tgt.equal(lhs, rhs))
          return "mu'[f(g)] = " + lhs.str() + " but f(mu[g]) = " + rhs.str();
        return std::string();
      });
}

}  // namespace

CheckResult check_homomorphism(const CarrierMap& f, const PolyadicSystem& src,
                               const PolyadicSystem& tgt, const SweepOptions& opts,
                               Strategy strategy) {
  require_compatible(src, tgt);
  std::vector<const CarrierMap*> arg_maps(static_cast<std::size_t>(src.arity()), &f);
  return homotopy_core(arg_maps, f, src, tgt, opts, strategy, "homomorphism",
                       0xF00F1ULL);
}

CheckResult check_homotopy(const std::vector<CarrierMap>& maps, const PolyadicSystem& src,
                           const PolyadicSystem& tgt, const SweepOptions& opts,
                           Strategy strategy) {
  require_compatible(src, tgt);
  Idx n = src.arity();
  if (static_cast<Idx>(maps.size()) != n + 1)
    throw InvalidParams("homotopy needs n+1 maps, got " + std::to_string(maps.size()));
  std::vector<const CarrierMap*> arg_maps;
  arg_maps.reserve(static_cast<std::size_t>(n));
  for (Idx i = 0; i < n; ++i) arg_maps.push_back(&maps[static_cast<std::size_t>(i)]);
  return homotopy_core(arg_maps, maps.back(), src, tgt, opts, strategy, "homotopy",
                       0xF00F2ULL);
}

DeformedCompatibility check_deformed_compatibility(const CarrierMap& f,
                                                   const ChainDecomposition& src,
                                                   const ChainDecomposition& tgt,
                                                   const SweepOptions& opts,
                                                   Strategy strategy) {
  const PolyadicSystem& S = src.base();
  const PolyadicSystem& T = tgt.base();
  require_compatible(S, T);
  if (src.q() != tgt.q())
    throw QMismatch("source uses q=" + std::to_string(src.q()) + ", target q=" +
                    std::to_string(tgt.q()));

  DeformedCompatibility out;

  if (S.is_finite()) {
    bool exhaustive = resolve_exhaustive(S, 2, opts, strategy, "deformed-compatibility");
    Idx m = S.order();
    std::vector<Idx> img = materialize(f, S, T);

    // binary: f(g * h) == f(g) *' f(h) over all pairs.
    {
      CheckResult r;
      r.evidence = exhaustive ? Evidence::exhaustive : Evidence::sampled;
      auto pair_check = [&](Idx g, Idx h) {
        Element lhs = f(src.retract().star(Element::index(g), Element::index(h)));
        Element rhs = tgt.retract().star(Element::index(img[static_cast<std::size_t>(g)]),
                                         Element::index(img[static_cast<std::size_t>(h)]));
        return std::pair<Element, Element>(lhs, rhs);
      };
      for (Idx g = 0; g < m && r.pass; ++g)
        for (Idx h = 0; h < m && r.pass; ++h) {
          auto [lhs, rhs] = pair_check(g, h);
          ++r.checked;
          if (lhs.idx() != rhs.idx()) {
            r.pass = false;
            r.witness = Witness{{Element::index(g), Element::index(h)},
                                "f(g*h)=" + lhs.str() + " but f(g)*'f(h)=" + rhs.str()};
          }
        }
      out.binary = r;
    }

    // ff1: f . phi_q == phi'_q . f pointwise.
    {
      CheckResult r;
      r.evidence = Evidence::exhaustive;
      for (Idx g = 0; g < m && r.pass; ++g) {
        Element lhs = f(src.phi(Element::index(g)));
        Element rhs = tgt.phi(Element::index(img[static_cast<std::size_t>(g)]));
        ++r.checked;
        if (lhs.idx() != rhs.idx()) {
          r.pass = false;
          r.witness = Witness{{Element::index(g)}, "f(phi_q(g))=" + lhs.str() +
                                                       " but phi'_q(f(g))=" + rhs.str()};
        }
      }
      out.ff1 = r;
    }

    // ff2: f(b_q) == b'_q.
    {
      CheckResult r;
      r.evidence = Evidence::exhaustive;
      r.checked = 1;
      Element lhs = f(src.b());
      if (lhs.idx() != tgt.b().idx()) {
        r.pass = false;
        r.witness =
            Witness{{src.b()}, "f(b_q)=" + lhs.str() + " but b'_q=" + tgt.b().str()};
      }
      out.ff2 = r;
    }

    out.ff3 = check_homomorphism(f, S, T, opts, strategy);

    if (out.premises_hold() && !out.ff3.pass)
      throw InternalError(
          "deformed-compatibility theorem violated on finite carriers: the binary "
          "homomorphism respects phi_q and b_q yet is not an n-ary homomorphism");
    return out;
  }

  // Closed forms: sampled versions of the same four checks.
  out.binary = run_numeric_predicate(
      S, 2, kHomSampledTuples, 0xFF00ULL, [&](const Polyad& t) {
        Element lhs = f(src.retract().star(t[0], t[1]));
        Element rhs = tgt.retract().star(f(t[0]), f(t[1]));
        if (!T.equal(lhs, rhs))
          return "f(g*h)=" + lhs.str() + " but f(g)*'f(h)=" + rhs.str();
        return std::string();
      });
  out.ff1 = run_numeric_predicate(
      S, 1, kHomSampledTuples, 0xFF01ULL, [&](const Polyad& t) {
        Element lhs = f(src.phi(t[0]));
        Element rhs = tgt.phi(f(t[0]));
        if (!T.equal(lhs, rhs))
          return "f(phi_q(g))=" + lhs.str() + " but phi'_q(f(g))=" + rhs.str();
        return std::string();
      });
  {
    CheckResult r;
    r.evidence = Evidence::exhaustive;
    r.checked = 1;
    Element lhs = f(src.b());
    if (!T.equal(lhs, tgt.b())) {
      r.pass = false;
      r.witness = Witness{{src.b()}, "f(b_q)=" + lhs.str() + " but b'_q=" + tgt.b().str()};
    }
    out.ff2 = r;
  }
  out.ff3 = check_homomorphism(f, S, T, opts, strategy);
  return out;
}

}  // namespace polyadic
