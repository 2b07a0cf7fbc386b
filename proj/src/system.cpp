#include "polyadic/system.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "polyadic/heine.hpp"
#include "polyadic/options.hpp"

namespace polyadic {

std::uint64_t SweepOptions::default_budget() {
  if (const char* env = std::getenv("POLYADIC_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 10000000ULL;
}

namespace {

constexpr Idx kMaxTableCells = 1000000;  // hard cap on materialized m^n tables

bool finite_scalar(const Scalar& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::qadd:
      return "qadd";
    case Family::copula:
      return "copula";
    case Family::qprod:
      return "qprod";
  }
  return "unknown";
}

std::string Element::str() const {
  if (is_index()) return std::to_string(std::get<Idx>(v_));
  Scalar z = std::get<Scalar>(v_);
  std::ostringstream os;
  os << std::setprecision(12) << z.real();
  if (z.imag() != 0.0) {
    os << (z.imag() < 0 ? "-" : "+") << std::setprecision(12) << std::abs(z.imag())
       << "i";
  }
  return os.str();
}

PolyadicSystem::PolyadicSystem(DerivedModular d) : rep_(d) {
  if (d.m < 1) throw InvalidParams("derived_modular: m must be positive");
  if (d.n < 2) throw InvalidParams("derived_modular: arity must be at least 2");
  if (d.c < 0 || d.c >= d.m)
    throw InvalidParams("derived_modular: c must lie in {0..m-1}");
}

PolyadicSystem::PolyadicSystem(CayleyTable t) : rep_(std::move(t)) {
  const auto& ct = std::get<CayleyTable>(rep_);
  if (ct.m < 1) throw InvalidParams("cayley: m must be positive");
  if (ct.n < 2) throw InvalidParams("cayley: arity must be at least 2");
  Idx cells = 1;
  for (Idx i = 0; i < ct.n; ++i) {
    cells = detail::checked_mul(cells, ct.m);
    if (cells > kMaxTableCells)
      throw InvalidParams("cayley: m^n exceeds the 10^6 table cap");
  }
  if (static_cast<Idx>(ct.entries.size()) != cells)
    throw InvalidParams("cayley: table must hold exactly m^n entries");
  for (Idx v : ct.entries)
    if (v < 0 || v >= ct.m)
      throw InvalidParams("cayley: table entry outside {0..m-1}");
}

PolyadicSystem::PolyadicSystem(ClosedForm f) : rep_(f) {
  if (!(f.tol > 0) || !std::isfinite(f.tol))
    throw InvalidParams("closed_form: tolerance must be positive and finite");
  switch (f.family) {
    case Family::qadd:
      if (f.n < 2) throw InvalidParams("qadd: arity must be at least 2");
      if (f.hbar == 0.0 || !std::isfinite(f.hbar))
        throw InvalidParams("qadd: hbar must be non-zero and finite");
      break;
    case Family::copula:
      if (f.n != 3) throw InvalidParams("copula: the family is ternary");
      break;
    case Family::qprod:
      if (f.n != 3) throw InvalidParams("qprod: the family is ternary");
      if (!(f.hbar > 0.0 && f.hbar < 1.0))
        throw InvalidParams("qprod: hbar must lie in (0, 1)");
      break;
  }
}

Idx PolyadicSystem::arity() const {
  if (auto* d = std::get_if<DerivedModular>(&rep_)) return d->n;
  if (auto* t = std::get_if<CayleyTable>(&rep_)) return t->n;
  return std::get<ClosedForm>(rep_).n;
}

bool PolyadicSystem::is_finite() const {
  return !std::holds_alternative<ClosedForm>(rep_);
}

Idx PolyadicSystem::order() const {
  if (auto* d = std::get_if<DerivedModular>(&rep_)) return d->m;
  if (auto* t = std::get_if<CayleyTable>(&rep_)) return t->m;
  throw InvalidParams("order(): closed-form carriers are infinite");
}

double PolyadicSystem::tolerance() const {
  if (auto* f = std::get_if<ClosedForm>(&rep_)) return f->tol;
  return 0.0;
}

bool PolyadicSystem::in_domain(const Element& g) const {
  if (is_finite()) {
    if (!g.is_index()) return false;
    Idx v = g.idx();
    return v >= 0 && v < order();
  }
  const auto& f = std::get<ClosedForm>(rep_);
  if (!g.is_scalar()) return false;
  Scalar z = g.scalar();
  if (!finite_scalar(z)) return false;
  switch (f.family) {
    case Family::qadd:
      return f.allow_complex || z.imag() == 0.0;
    case Family::copula:
      return z.imag() == 0.0 && z.real() >= 0.0 && z.real() <= 1.0;
    case Family::qprod:
      return z.imag() == 0.0 && z.real() > 0.0;
  }
  return false;
}

void PolyadicSystem::require_in_domain(const Element& g) const {
  if (!in_domain(g))
    throw DomainViolation("element " + g.str() + " is outside the carrier of " +
                          describe());
}

Element PolyadicSystem::evaluate(const Polyad& args) const {
  Idx n = arity();
  if (static_cast<Idx>(args.size()) != n)
    throw ArityMismatch("evaluate: expected " + std::to_string(n) + " arguments, got " +
                        std::to_string(args.size()));
  for (const Element& g : args) require_in_domain(g);

  if (auto* d = std::get_if<DerivedModular>(&rep_)) {
    Idx s = d->c;
    for (const Element& g : args) s += g.idx();
    return Element::index(mod(s, d->m));
  }
  if (auto* t = std::get_if<CayleyTable>(&rep_)) {
    Idx ix = 0;
    for (const Element& g : args) ix = ix * t->m + g.idx();
    return Element::index(t->entries[static_cast<std::size_t>(ix)]);
  }

  const auto& f = std::get<ClosedForm>(rep_);
  switch (f.family) {
    case Family::qadd: {
      Scalar sum = 0.0, prod = 1.0;
      for (const Element& g : args) {
        sum += g.scalar();
        prod *= g.scalar();
      }
      Scalar r = sum + f.hbar * prod;
      if (!finite_scalar(r)) throw DomainViolation("qadd: product overflowed");
      return Element::complex(r);
    }
    case Family::copula: {
      double g = args[0].real_value();
      double h = args[1].real_value();
      double u = args[2].real_value();
      double num = g * (1.0 - h) * u;
      double den = num + (1.0 - g) * h * (1.0 - u);
      // Both terms of den are non-negative on [0,1]^3, so den == 0 forces
      // num == 0; the 0/0 cases are defined to give 0.
      if (den == 0.0) return Element::real(0.0);
      return Element::real(num / den);
    }
    case Family::qprod: {
      double bracket = -3.0;
      for (const Element& g : args) bracket += std::pow(g.real_value(), f.hbar);
      if (!(bracket > 0.0))
        throw DomainViolation("qprod: bracket " + std::to_string(bracket) +
                              " is not positive; arguments leave the carrier");
      return Element::real(std::pow(bracket, 1.0 / f.hbar));
    }
  }
  throw InternalError("evaluate: unhandled closed form");
}

Element PolyadicSystem::iterated_product(Idx ell, const Polyad& args) const {
  if (ell < 1) throw InvalidParams("iterated_product: ell must be at least 1");
  Idx n = arity();
  Idx want = ell * (n - 1) + 1;
  if (static_cast<Idx>(args.size()) != want)
    throw ArityMismatch("iterated_product: ell=" + std::to_string(ell) + " needs " +
                        std::to_string(want) + " arguments, got " +
                        std::to_string(args.size()));

  Polyad buf(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(n));
  Element acc = evaluate(buf);
  for (Idx s = 1; s < ell; ++s) {
    buf[0] = acc;
    auto base = args.begin() + static_cast<std::ptrdiff_t>(s * (n - 1) + 1);
    std::copy(base, base + static_cast<std::ptrdiff_t>(n - 1), buf.begin() + 1);
    acc = evaluate(buf);
  }
  return acc;
}

Element PolyadicSystem::reduced_product(const Polyad& constants,
                                        const std::vector<Idx>& positions,
                                        const Polyad& args) const {
  Idx n = arity();
  Idx nc = static_cast<Idx>(constants.size());
  if (static_cast<Idx>(positions.size()) != nc)
    throw InvalidParams("reduced_product: one position per constant required");
  if (nc > n - 2)
    throw InvalidParams("reduced_product: at most n-2 slots may be frozen");
  if (static_cast<Idx>(args.size()) != n - nc)
    throw ArityMismatch("reduced_product: expected " + std::to_string(n - nc) +
                        " free arguments, got " + std::to_string(args.size()));

  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  Polyad full(static_cast<std::size_t>(n));
  for (Idx i = 0; i < nc; ++i) {
    Idx p = positions[static_cast<std::size_t>(i)];
    if (p < 0 || p >= n)
      throw PositionOverlap("reduced_product: position " + std::to_string(p) +
                            " outside 0.." + std::to_string(n - 1));
    if (taken[static_cast<std::size_t>(p)])
      throw PositionOverlap("reduced_product: position " + std::to_string(p) +
                            " frozen twice");
    taken[static_cast<std::size_t>(p)] = true;
    full[static_cast<std::size_t>(p)] = constants[static_cast<std::size_t>(i)];
  }
  std::size_t next = 0;
  for (Idx p = 0; p < n; ++p) {
    if (!taken[static_cast<std::size_t>(p)])
      full[static_cast<std::size_t>(p)] = args[next++];
  }
  return evaluate(full);
}

Element PolyadicSystem::polyadic_power(const Element& g, Idx ell) const {
  if (ell < 0)
    throw InvalidParams("polyadic_power: ell must be non-negative (see power_signed)");
  require_in_domain(g);
  if (ell == 0) return g;
  return iterated_product(ell, repeated(g, ell * (arity() - 1) + 1));
}

bool PolyadicSystem::equal(const Element& a, const Element& b) const {
  if (is_finite()) return a.idx() == b.idx();
  double tol = std::get<ClosedForm>(rep_).tol;
  Scalar x = a.scalar(), y = b.scalar();
  double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= tol * scale;
}

const DerivedModular* PolyadicSystem::derived() const {
  return std::get_if<DerivedModular>(&rep_);
}

const CayleyTable* PolyadicSystem::table() const {
  return std::get_if<CayleyTable>(&rep_);
}

const ClosedForm* PolyadicSystem::closed_form() const {
  return std::get_if<ClosedForm>(&rep_);
}

const BinaryCenterInfo* PolyadicSystem::binary_center() const { return bc_.get(); }

void PolyadicSystem::set_binary_center(BinaryCenterInfo info) {
  bc_ = std::make_shared<const BinaryCenterInfo>(std::move(info));
}

std::string PolyadicSystem::describe() const {
  std::ostringstream os;
  if (auto* d = std::get_if<DerivedModular>(&rep_)) {
    os << "derived_modular(m=" << d->m << ",n=" << d->n << ",c=" << d->c << ")";
  } else if (auto* t = std::get_if<CayleyTable>(&rep_)) {
    if (bc_)
      os << "binary_center(m=" << t->m << ",n=" << t->n << ",c=" << bc_->c << ")";
    else
      os << "cayley(m=" << t->m << ",n=" << t->n << ")";
  } else {
    const auto& f = std::get<ClosedForm>(rep_);
    switch (f.family) {
      case Family::qadd:
        os << "qadd(n=" << f.n << ",hbar=" << f.hbar
           << (f.allow_complex ? ",complex" : "") << ")";
        break;
      case Family::copula:
        os << "copula(n=3)";
        break;
      case Family::qprod:
        os << "qprod(hbar=" << f.hbar << ")";
        break;
    }
  }
  return os.str();
}

std::vector<Element> PolyadicSystem::carrier_sample() const {
  std::vector<Element> out;
  if (is_finite()) {
    Idx m = order();
    out.reserve(static_cast<std::size_t>(m));
    for (Idx i = 0; i < m; ++i) out.push_back(Element::index(i));
    return out;
  }
  const auto& f = std::get<ClosedForm>(rep_);
  switch (f.family) {
    case Family::qadd:
      // Non-zero points on both sides of the origin; 0 is excluded because the
      // closed-form power/quer references are singular there.
      for (double x : {-2.0, -1.3, -0.7, -0.25, 0.3, 0.6, 1.1, 1.8})
        out.push_back(Element::real(x));
      break;
    case Family::copula:
      for (double x : {0.05, 0.15, 0.3, 0.45, 0.55, 0.7, 0.85, 0.95})
        out.push_back(Element::real(x));
      break;
    case Family::qprod:
      // Kept above 1 so every bracket stays positive, and below 3^{1/hbar}
      // so querelements exist.
      for (double x : {1.1, 1.35, 1.6, 2.0, 2.4, 2.9})
        out.push_back(Element::real(x));
      break;
  }
  return out;
}

}  // namespace polyadic
