#include "polyadic/retract.hpp"

#include "finite_eval.hpp"
#include "polyadic/analysis.hpp"

namespace polyadic {

namespace {

// Retracts at or below this order keep a materialized * table.
constexpr Idx kCacheOrderCap = 1024;

}  // namespace

BinaryRetract::BinaryRetract(PolyadicSystem sys, Element e, Element ebar)
    : sys_(std::move(sys)), e_(e), ebar_(ebar) {
  Idx n = sys_.arity();
  if (n >= 3) {
    einv_ = repeated(e_, n - 3);
    einv_.push_back(ebar_);
  }
}

Element BinaryRetract::star(const Element& g, const Element& h) const {
  if (cached()) {
    Idx m = sys_.order();
    return Element::index(table_[static_cast<std::size_t>(g.idx() * m + h.idx())]);
  }
  Polyad args;
  args.reserve(static_cast<std::size_t>(sys_.arity()));
  args.push_back(g);
  args.insert(args.end(), einv_.begin(), einv_.end());
  args.push_back(h);
  return sys_.evaluate(args);
}

Element BinaryRetract::inverse(const Element& g) const {
  Idx n = sys_.arity();
  if (n >= 3) {
    Polyad args;
    args.reserve(static_cast<std::size_t>(n));
    args.push_back(e_);
    args.insert(args.end(), static_cast<std::size_t>(n - 3), g);
    args.push_back(querelement(sys_, g));
    args.push_back(e_);
    Element inv = sys_.evaluate(args);
    if (!sys_.equal(star(g, inv), e_) || !sys_.equal(star(inv, g), e_))
      throw NoInverse("retract inverse of " + g.str() + " fails validation");
    return inv;
  }
  // n = 2: the retract is mu itself; search or solve g * x = e directly.
  if (sys_.is_finite()) {
    Idx m = sys_.order();
    for (Idx x = 0; x < m; ++x) {
      Element cand = Element::index(x);
      if (sys_.equal(star(g, cand), e_) && sys_.equal(star(cand, g), e_)) return cand;
    }
    throw NoInverse("no binary inverse for " + g.str());
  }
  const ClosedForm* f = sys_.closed_form();
  if (f && f->family == Family::qadd) {
    // mu2[g, x] = g + x + hbar*g*x = e  =>  x = (e - g)/(1 + hbar*g).
    Scalar den = 1.0 + f->hbar * g.scalar();
    if (std::abs(den) == 0.0)
      throw NoInverse("binary inverse of " + g.str() + ": singular point");
    Element inv = Element::complex((e_.scalar() - g.scalar()) / den);
    if (!sys_.equal(star(g, inv), e_) || !sys_.equal(star(inv, g), e_))
      throw NoInverse("binary inverse of " + g.str() + " fails validation");
    return inv;
  }
  throw NoInverse("no closed-form binary inverse for this family at arity 2");
}

BinaryRetract build_retract(const PolyadicSystem& sys, const Element& e,
                            const SweepOptions& opts) {
  (void)opts;
  sys.require_in_domain(e);
  Element ebar;
  try {
    ebar = sys.arity() >= 3 ? querelement(sys, e) : e;
  } catch (const NotQuerable& ex) {
    throw NotAGroup(std::string("cannot build a retract: ") + ex.what());
  } catch (const NonUniqueSolution& ex) {
    throw NotAGroup(std::string("cannot build a retract: ") + ex.what());
  }

  BinaryRetract r(sys, e, ebar);

  if (sys.is_finite() && sys.order() <= kCacheOrderCap) {
    Idx m = sys.order();
    Idx n = sys.arity();
    detail::FiniteEval fe = detail::finite_eval(r.sys_);
    std::vector<Idx> buf(static_cast<std::size_t>(n));
    for (Idx j = 1; j < n - 1; ++j)
      buf[static_cast<std::size_t>(j)] = j == n - 2 ? ebar.idx() : e.idx();
    r.table_.resize(static_cast<std::size_t>(m * m));
    if (n == 2) {
      for (Idx a = 0; a < m; ++a)
        for (Idx bb = 0; bb < m; ++bb) {
          buf[0] = a;
          buf[1] = bb;
          r.table_[static_cast<std::size_t>(a * m + bb)] = fe(buf.data());
        }
    } else {
      for (Idx a = 0; a < m; ++a) {
        buf[0] = a;
        for (Idx bb = 0; bb < m; ++bb) {
          buf[static_cast<std::size_t>(n - 1)] = bb;
          r.table_[static_cast<std::size_t>(a * m + bb)] = fe(buf.data());
        }
      }
    }
  }

  // Identity laws g * e == e * g == g.
  for (const Element& g : sys.carrier_sample()) {
    Element ge = r.star(g, e), eg = r.star(e, g);
    if (!sys.equal(ge, g) || !sys.equal(eg, g))
      throw IdentityLawFailed("retract at e=" + e.str() + ": expected g*e=e*g=g for g=" +
                              g.str() + ", got g*e=" + ge.str() + ", e*g=" + eg.str());
  }
  return r;
}

}  // namespace polyadic
