#include "polyadic/chain.hpp"

#include <algorithm>
#include <numeric>

#include "binary_group.hpp"
#include "finite_eval.hpp"
#include "polyadic/detail/sweep.hpp"
#include "polyadic/heine.hpp"
#include "predicate_runner.hpp"

namespace polyadic {

namespace {

using detail::FiniteEval;
using detail::resolve_exhaustive;
using detail::run_finite_predicate;
using detail::run_numeric_predicate;

constexpr std::uint64_t kChainSampledTuples = 2000;  // per q, numeric invariance

/// phi^{[[i]]_q} for i = 0..n-1 as index tables, built by stepping a running
/// phi^k table and snapshotting at each Heine exponent.
std::vector<std::vector<Idx>> build_exponent_tables(const std::vector<Idx>& phi_tab,
                                                    Idx n, Idx q) {
  Idx m = static_cast<Idx>(phi_tab.size());
  std::vector<std::vector<Idx>> exp;
  exp.reserve(static_cast<std::size_t>(n));
  std::vector<Idx> cur(static_cast<std::size_t>(m));
  std::iota(cur.begin(), cur.end(), 0);
  Idx k = 0;
  for (Idx i = 0; i < n; ++i) {
    Idx want = heine(i, q);
    for (; k < want; ++k) {
      for (auto& v : cur) v = phi_tab[static_cast<std::size_t>(v)];
    }
    exp.push_back(cur);
  }
  return exp;
}

/// Per-element phi tables built through the public interface; works whether
/// or not the retract caches its * table.
std::vector<Idx> boxed_phi_table(const ChainDecomposition& d) {
  Idx m = d.base().order();
  std::vector<Idx> tab(static_cast<std::size_t>(m));
  for (Idx g = 0; g < m; ++g) tab[static_cast<std::size_t>(g)] = d.phi(Element::index(g)).idx();
  return tab;
}

std::vector<Idx> boxed_star_row_table(const BinaryRetract& r) {
  Idx m = r.base().order();
  std::vector<Idx> tab(static_cast<std::size_t>(m * m));
  for (Idx a = 0; a < m; ++a)
    for (Idx b = 0; b < m; ++b)
      tab[static_cast<std::size_t>(a * m + b)] =
          r.star(Element::index(a), Element::index(b)).idx();
  return tab;
}

}  // namespace

std::vector<QValue> enumerate_q(Idx n, Idx q_max) {
  if (n < 2) throw InvalidParams("enumerate_q: arity must be at least 2");
  if (q_max < 0) throw InvalidParams("enumerate_q: q_max must be non-negative");
  std::vector<QValue> out;
  out.reserve(static_cast<std::size_t>(q_max + 1));
  for (Idx q = 0; q <= q_max; ++q) {
    QValue v;
    v.q = q;
    Idx num = q * (n - 2) + 1;
    if (num % (n - 1) == 0) {
      v.admissible = true;
      v.ell_phi = num / (n - 1);
    }
    Idx he = heine(n, q) - 1;
    if (he % (n - 1) == 0) {
      v.ell_e_integral = true;
      v.ell_e = he / (n - 1);
    }
    out.push_back(v);
  }
  return out;
}

ChainDecomposition::ChainDecomposition(BinaryRetract r, Idx q, Idx lphi, Idx le)
    : r_(std::move(r)), q_(q), lphi_(lphi), le_(le) {
  const PolyadicSystem& sys = r_.base();
  const Element& e = r_.identity();
  Idx n = sys.arity();

  if (r_.cached()) {
    Idx m = sys.order();
    phi_tab_.resize(static_cast<std::size_t>(m));
    Polyad args;
    args.reserve(static_cast<std::size_t>(2 + q_ * (n - 2)));
    for (Idx g = 0; g < m; ++g) {
      args.clear();
      args.push_back(e);
      args.push_back(Element::index(g));
      for (Idx i = 0; i < q_; ++i)
        args.insert(args.end(), r_.identity_inverse().begin(),
                    r_.identity_inverse().end());
      phi_tab_[static_cast<std::size_t>(g)] =
          (lphi_ == 1 ? sys.evaluate(args) : sys.iterated_product(lphi_, args)).idx();
    }
    exp_ = build_exponent_tables(phi_tab_, n, q_);
  }

  // b_q by two routes: the polyadic power e^<ell_e>, and an independent fold
  // that extends a prefix with e^{n-1} one application at a time.
  b_ = sys.polyadic_power(e, le_);
  Element b2 = e;
  Polyad buf(static_cast<std::size_t>(n), e);
  for (Idx i = 0; i < le_; ++i) {
    buf[0] = b2;
    b2 = sys.evaluate(buf);
  }
  if (!sys.equal(b_, b2))
    throw InconsistentDecomposition(
        "b_q routes disagree: e^<ell_e> = " + b_.str() + " but the stepwise fold gives " +
        b2.str());

  a_ = phi(e);
}

ChainDecomposition build_chain(const BinaryRetract& r, Idx q) {
  Idx n = r.base().arity();
  if (q < 0) throw QMismatch("q must be non-negative");
  Idx num = q * (n - 2) + 1;
  if (num % (n - 1) != 0)
    throw QMismatch("q=" + std::to_string(q) + " is not admissible at arity " +
                    std::to_string(n) + ": (q(n-2)+1)/(n-1) is not integral");
  Idx lphi = num / (n - 1);
  Idx he = heine(n, q) - 1;
  if (he % (n - 1) != 0)
    throw InternalError("ell_phi integral but ell_e is not; this contradicts "
                        "q = 1 (mod n-1) forcing [[n]]_q = 1 (mod n-1)");
  return ChainDecomposition(r, q, lphi, he / (n - 1));
}

Element ChainDecomposition::phi(const Element& g) const {
  if (!phi_tab_.empty()) return Element::index(phi_tab_[static_cast<std::size_t>(g.idx())]);
  const PolyadicSystem& sys = r_.base();
  Idx n = sys.arity();
  Polyad args;
  args.reserve(static_cast<std::size_t>(2 + q_ * (n - 2)));
  args.push_back(r_.identity());
  args.push_back(g);
  for (Idx i = 0; i < q_; ++i)
    args.insert(args.end(), r_.identity_inverse().begin(), r_.identity_inverse().end());
  return lphi_ == 1 ? sys.evaluate(args) : sys.iterated_product(lphi_, args);
}

Element ChainDecomposition::iterate_phi(const Element& g, Idx k) const {
  if (k < 0) throw InvalidParams("iterate_phi: k must be non-negative");
  if (!phi_tab_.empty()) {
    Idx v = g.idx();
    for (Idx i = 0; i < k; ++i) v = phi_tab_[static_cast<std::size_t>(v)];
    return Element::index(v);
  }
  Element acc = g;
  for (Idx i = 0; i < k; ++i) acc = phi(acc);
  return acc;
}

Element ChainDecomposition::chain_evaluate(const Polyad& args) const {
  const PolyadicSystem& sys = r_.base();
  Idx n = sys.arity();
  if (static_cast<Idx>(args.size()) != n)
    throw ArityMismatch("chain_evaluate: expected " + std::to_string(n) + " arguments");

  if (!exp_.empty() && r_.cached()) {
    Idx m = sys.order();
    const auto& st = r_.star_table();
    Idx acc = args[0].idx();
    for (Idx i = 1; i < n; ++i) {
      Idx img = exp_[static_cast<std::size_t>(i)][static_cast<std::size_t>(args[static_cast<std::size_t>(i)].idx())];
      acc = st[static_cast<std::size_t>(acc * m + img)];
    }
    return Element::index(st[static_cast<std::size_t>(acc * m + b_.idx())]);
  }

  Element acc = args[0];
  for (Idx i = 1; i < n; ++i)
    acc = r_.star(acc, iterate_phi(args[static_cast<std::size_t>(i)], heine(i, q_)));
  return r_.star(acc, b_);
}

CheckResult check_quasi_endomorphism(const ChainDecomposition& d,
                                     const SweepOptions& opts, Strategy strategy) {
  const PolyadicSystem& sys = d.base();
  const char* name = "quasi-endomorphism";

  if (sys.is_finite()) {
    bool exhaustive = resolve_exhaustive(sys, 2, opts, strategy, name);
    Idx m = sys.order();
    std::vector<Idx> phit = boxed_phi_table(d);
    std::vector<Idx> st = boxed_star_row_table(d.retract());
    Idx a = d.a().idx();
    auto make_worker = [phit, st, m, a] {
      return [phit, st, m, a](const std::vector<Idx>& t) {
        Idx lhs = st[static_cast<std::size_t>(phit[static_cast<std::size_t>(t[0])] * m +
                                              phit[static_cast<std::size_t>(t[1])])];
        Idx mid = st[static_cast<std::size_t>(st[static_cast<std::size_t>(t[0] * m + a)] * m + t[1])];
        Idx rhs = phit[static_cast<std::size_t>(mid)];
        return lhs == rhs;
      };
    };
    auto note = [&d](const std::vector<Idx>& t) {
      Element g = Element::index(t[0]), h = Element::index(t[1]);
      const auto& r = d.retract();
      Element lhs = r.star(d.phi(g), d.phi(h));
      Element rhs = d.phi(r.star(r.star(g, d.a()), h));
      return "phi(g)*phi(h)=" + lhs.str() + " but phi(g*a*h)=" + rhs.str();
    };
    return run_finite_predicate(sys, 2, opts, exhaustive, name, 0x0E17D03ULL,
                                make_worker, note);
  }

  resolve_exhaustive(sys, 2, opts, strategy, name);
  return run_numeric_predicate(
      sys, 2, detail::kSampledSolves, 0x0E17D03ULL, [&d](const Polyad& t) {
        const auto& r = d.retract();
        Element lhs = r.star(d.phi(t[0]), d.phi(t[1]));
        Element rhs = d.phi(r.star(r.star(t[0], d.a()), t[1]));
        if (!d.base().equal(lhs, rhs))
          return "phi(g)*phi(h)=" + lhs.str() + " but phi(g*a*h)=" + rhs.str();
        return std::string();
      });
}

CheckResult check_quasi_fixed_point(const ChainDecomposition& d) {
  CheckResult res;
  res.evidence = Evidence::exhaustive;
  res.checked = 1;
  Element lhs = d.phi(d.b());
  Element rhs = d.retract().star(d.b(), d.a());
  if (!d.base().equal(lhs, rhs)) {
    res.pass = false;
    res.witness = Witness{{d.b()}, "phi(b)=" + lhs.str() + " but b*a=" + rhs.str()};
  }
  return res;
}

CheckResult check_quasi_conjugation(const ChainDecomposition& d, const SweepOptions& opts,
                                    Strategy strategy) {
  const PolyadicSystem& sys = d.base();
  const char* name = "quasi-conjugation";
  Idx n = sys.arity();
  Idx big = heine(n - 1, d.q());
  const auto& r = d.retract();
  Element e = r.identity();
  Element lift_e = d.iterate_phi(e, big);

  if (sys.is_finite()) {
    bool exhaustive = resolve_exhaustive(sys, 1, opts, strategy, name);
    Idx m = sys.order();
    std::vector<Idx> st = boxed_star_row_table(r);
    std::vector<Idx> phit = boxed_phi_table(d);
    std::vector<Idx> lift(static_cast<std::size_t>(m));
    std::iota(lift.begin(), lift.end(), 0);
    for (Idx i = 0; i < big; ++i)
      for (auto& v : lift) v = phit[static_cast<std::size_t>(v)];
    Idx b = d.b().idx();
    Idx le = lift_e.idx();
    auto make_worker = [st, lift, m, b, le] {
      return [st, lift, m, b, le](const std::vector<Idx>& t) {
        Idx lhs = st[static_cast<std::size_t>(lift[static_cast<std::size_t>(t[0])] * m + b)];
        Idx rhs = st[static_cast<std::size_t>(st[static_cast<std::size_t>(b * m + le)] * m + t[0])];
        return lhs == rhs;
      };
    };
    auto note = [big](const std::vector<Idx>&) {
      return "phi^{[[n-1]]_q}(g)*b differs from b*phi^{[[n-1]]_q}(e)*g (exponent " +
             std::to_string(big) + ")";
    };
    return run_finite_predicate(sys, 1, opts, exhaustive, name, 0xC0717A7ULL,
                                make_worker, note);
  }

  resolve_exhaustive(sys, 1, opts, strategy, name);
  return run_numeric_predicate(
      sys, 1, detail::kSampledSolves, 0xC0717A7ULL, [&d, big, lift_e](const Polyad& t) {
        const auto& rr = d.retract();
        Element lhs = rr.star(d.iterate_phi(t[0], big), d.b());
        Element rhs = rr.star(rr.star(d.b(), lift_e), t[0]);
        if (!d.base().equal(lhs, rhs))
          return "phi^[[n-1]](g)*b=" + lhs.str() + " but b*phi^[[n-1]](e)*g=" + rhs.str();
        return std::string();
      });
}

CheckResult check_fixed_points(const ChainDecomposition& d, Idx k_max) {
  if (k_max < 0) throw InvalidParams("check_fixed_points: k_max must be >= 0");
  CheckResult res;
  res.evidence = Evidence::exhaustive;
  const PolyadicSystem& sys = d.base();
  for (Idx k = 0; k <= k_max; ++k) {
    Element ek = sys.polyadic_power(d.retract().identity(), k);
    Element img = d.phi(ek);
    ++res.checked;
    if (!sys.equal(img, ek)) {
      res.pass = false;
      res.witness = Witness{{ek}, "phi(e^<" + std::to_string(k) + ">)=" + img.str() +
                                      " is not e^<" + std::to_string(k) + ">=" + ek.str()};
      return res;
    }
  }
  return res;
}

CheckResult check_conjugation(const ChainDecomposition& d, Idx k_max,
                              const SweepOptions& opts, Strategy strategy) {
  if (k_max < 1) throw InvalidParams("check_conjugation: k_max must be >= 1");
  (void)opts;
  const PolyadicSystem& sys = d.base();
  const auto& r = d.retract();
  Idx n = sys.arity();
  CheckResult res;
  res.evidence = sys.is_finite() ? Evidence::exhaustive : Evidence::sampled;
  if (!sys.is_finite() && strategy == Strategy::exhaustive)
    throw InvalidParams("check_conjugation: closed forms cannot be exhaustive");

  for (Idx k = 1; k <= k_max; ++k) {
    Element ek = sys.polyadic_power(r.identity(), k);
    Element inv = r.inverse(ek);
    for (const Element& g : sys.carrier_sample()) {
      Element lhs = d.iterate_phi(g, k * (n - 1));
      Element rhs = r.star(r.star(ek, g), inv);
      ++res.checked;
      if (!sys.equal(lhs, rhs)) {
        res.pass = false;
        res.witness =
            Witness{{g}, "k=" + std::to_string(k) + ": phi^{k(n-1)}(g)=" + lhs.str() +
                             " but e^<k>*g*(e^<k>)^{-1}=" + rhs.str()};
        return res;
      }
    }
  }
  return res;
}

bool InvarianceReport::all_pass() const {
  for (const auto& c : entries)
    if (!c.skipped_entry() && !c.result.pass) return false;
  return true;
}

std::uint64_t InvarianceReport::total_checked() const {
  std::uint64_t s = 0;
  for (const auto& c : entries) s += c.result.checked;
  return s;
}

namespace {

CheckResult chain_matches_mu(const ChainDecomposition& d, const SweepOptions& opts,
                             Strategy strategy) {
  const PolyadicSystem& sys = d.base();
  Idx n = sys.arity();
  const char* name = "chain-invariance";

  if (sys.is_finite()) {
    bool exhaustive = resolve_exhaustive(sys, static_cast<int>(n), opts, strategy, name);
    FiniteEval fe = detail::finite_eval(sys);
    Idx m = sys.order();

    if (d.retract().cached() && !d.exponent_tables().empty()) {
      const auto& st = d.retract().star_table();
      const auto& exp = d.exponent_tables();
      Idx b = d.b().idx();
      auto make_worker = [&st, &exp, fe, m, n, b] {
        return [&st, &exp, fe, m, n, b](const std::vector<Idx>& t) {
          Idx acc = t[0];
          for (Idx i = 1; i < n; ++i) {
            Idx img = exp[static_cast<std::size_t>(i)][static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
            acc = st[static_cast<std::size_t>(acc * m + img)];
          }
          acc = st[static_cast<std::size_t>(acc * m + b)];
          return acc == fe(t.data());
        };
      };
      auto note = [&d](const std::vector<Idx>& t) {
        Polyad p = detail::to_polyad(t);
        return "chain gives " + d.chain_evaluate(p).str() + ", mu gives " +
               d.base().evaluate(p).str();
      };
      return run_finite_predicate(sys, static_cast<int>(n), opts, exhaustive, name,
                                  0xC4A11ULL, make_worker, note);
    }

    auto make_worker = [&d] {
      return [&d](const std::vector<Idx>& t) {
        Polyad p = detail::to_polyad(t);
        return d.base().equal(d.chain_evaluate(p), d.base().evaluate(p));
      };
    };
    auto note = [&d](const std::vector<Idx>& t) {
      Polyad p = detail::to_polyad(t);
      return "chain gives " + d.chain_evaluate(p).str() + ", mu gives " +
             d.base().evaluate(p).str();
    };
    return run_finite_predicate(sys, static_cast<int>(n), opts, exhaustive, name,
                                0xC4A11ULL, make_worker, note);
  }

  resolve_exhaustive(sys, static_cast<int>(n), opts, strategy, name);
  return run_numeric_predicate(sys, static_cast<int>(n), kChainSampledTuples, 0xC4A11ULL,
                               [&d](const Polyad& t) {
                                 Element chain = d.chain_evaluate(t);
                                 Element mu = d.base().evaluate(t);
                                 if (!d.base().equal(chain, mu))
                                   return "chain gives " + chain.str() + ", mu gives " +
                                          mu.str();
                                 return std::string();
                               });
}

}  // namespace

InvarianceReport verify_invariance(const PolyadicSystem& sys, const Element& e,
                                   Idx q_max, const SweepOptions& opts,
                                   Strategy strategy) {
  InvarianceReport rep;
  rep.e = e;
  BinaryRetract r = build_retract(sys, e, opts);
  for (const QValue& v : enumerate_q(sys.arity(), q_max)) {
    if (!v.admissible) continue;
    ChainCheck entry;
    entry.q = v;
    try {
      ChainDecomposition d = build_chain(r, v.q);
      entry.b = d.b();
      entry.result = chain_matches_mu(d, opts, strategy);
    } catch (const DomainViolation& ex) {
      if (sys.is_finite()) throw;
      entry.skip_reason = ex.what();  // b_q or phi_q leaves the carrier
    } catch (const NotQuerable& ex) {
      if (sys.is_finite()) throw;
      entry.skip_reason = ex.what();
    }
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

PolyadicSystem reverse_construct(const CayleyTable& binary, const std::vector<Idx>& phi,
                                 Idx b, Idx n, const SweepOptions& opts) {
  if (binary.n != 2)
    throw InvalidParams("reverse_construct: the input table must be binary");
  if (n < 2) throw InvalidParams("reverse_construct: target arity must be >= 2");
  Idx m = binary.m;
  auto bt = [&](Idx x, Idx y) {
    return binary.entries[static_cast<std::size_t>(x * m + y)];
  };
  detail::BinaryGroupData grp = detail::validate_binary_group(binary, opts);
  Idx e = grp.e;
  const std::vector<Idx>& inv = grp.inverse;

  if (static_cast<Idx>(phi.size()) != m)
    throw InvalidParams("reverse_construct: phi table must have m entries");
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  for (Idx v : phi) {
    if (v < 0 || v >= m || seen[static_cast<std::size_t>(v)])
      throw InvalidParams("reverse_construct: phi is not a bijection on the carrier");
    seen[static_cast<std::size_t>(v)] = 1;
  }
  for (Idx g = 0; g < m; ++g)
    for (Idx h = 0; h < m; ++h)
      if (phi[static_cast<std::size_t>(bt(g, h))] !=
          bt(phi[static_cast<std::size_t>(g)], phi[static_cast<std::size_t>(h)]))
        throw InvalidParams("reverse_construct: phi is not an automorphism (g=" +
                            std::to_string(g) + ", h=" + std::to_string(h) + ")");
  if (b < 0 || b >= m)
    throw InvalidParams("reverse_construct: b outside the carrier");

  // phi^{n-1} for hypothesis (b1).
  std::vector<Idx> phin(static_cast<std::size_t>(m));
  std::iota(phin.begin(), phin.end(), 0);
  for (Idx i = 0; i < n - 1; ++i)
    for (auto& v : phin) v = phi[static_cast<std::size_t>(v)];
  Idx binv = inv[static_cast<std::size_t>(b)];
  for (Idx g = 0; g < m; ++g) {
    Idx conj = bt(bt(b, g), binv);
    if (phin[static_cast<std::size_t>(g)] != conj)
      throw HypothesisFailed("(b1) phi^{n-1}(g) == b*g*b^{-1} fails at g=" +
                             std::to_string(g) + ": phi^{n-1}(g)=" +
                             std::to_string(phin[static_cast<std::size_t>(g)]) +
                             ", b*g*b^{-1}=" + std::to_string(conj));
  }
  if (phi[static_cast<std::size_t>(b)] != b)
    throw HypothesisFailed("(b2) phi(b) == b fails: phi(b)=" +
                           std::to_string(phi[static_cast<std::size_t>(b)]));

  // Build the n-ary table from the q=1 chain g_1 * phi(g_2) * ... * phi^{n-1}(g_n) * b.
  std::vector<std::vector<Idx>> pow;
  pow.reserve(static_cast<std::size_t>(n));
  {
    std::vector<Idx> cur(static_cast<std::size_t>(m));
    std::iota(cur.begin(), cur.end(), 0);
    for (Idx i = 0; i < n; ++i) {
      pow.push_back(cur);
      for (auto& v : cur) v = phi[static_cast<std::size_t>(v)];
    }
  }
  std::uint64_t cells =
      detail::tuple_space_size(m, static_cast<int>(n), opts.budget, "reverse_construct");
  CayleyTable out;
  out.n = n;
  out.m = m;
  out.entries.resize(cells);
  std::vector<Idx> t(static_cast<std::size_t>(n), 0);
  std::uint64_t rank = 0;
  do {
    Idx acc = t[0];
    for (Idx i = 1; i < n; ++i)
      acc = bt(acc, pow[static_cast<std::size_t>(i)][static_cast<std::size_t>(t[static_cast<std::size_t>(i)])]);
    out.entries[rank++] = bt(acc, b);
  } while (detail::next_tuple(t, m));

  PolyadicSystem nsys(std::move(out));
  CheckResult nassoc = check_associativity(nsys, opts, Strategy::auto_);
  if (!nassoc.pass)
    throw InternalError("reverse_construct: built system is not associative");
  for (const CheckResult& s : check_solvability(nsys, opts, Strategy::auto_))
    if (!s.pass) throw InternalError("reverse_construct: built system is not solvable");
  Element e1 = nsys.polyadic_power(Element::index(e), 1);
  if (e1.idx() != b)
    throw InternalError("reverse_construct: b != e^<1> in the built system");
  return nsys;
}

ExtendedHomotopyMaps::ExtendedHomotopyMaps(ChainDecomposition d) : d_(std::move(d)) {}

Element ExtendedHomotopyMaps::apply(Idx i, const Element& g) const {
  Idx n = base().arity();
  if (i < 1 || i > n + 1)
    throw InvalidParams("homotopy map index must lie in 1..n+1");
  if (i <= n) return d_.iterate_phi(g, heine(i - 1, d_.q()));
  return base().polyadic_power(g, d_.ell_e());
}

CheckResult ExtendedHomotopyMaps::verify(const SweepOptions& opts,
                                         Strategy strategy) const {
  const PolyadicSystem& sys = base();
  Idx n = sys.arity();
  const char* name = "extended-homotopy";
  Element tail = apply(n + 1, d_.retract().identity());

  if (sys.is_finite()) {
    bool exhaustive = resolve_exhaustive(sys, static_cast<int>(n), opts, strategy, name);
    Idx m = sys.order();
    FiniteEval fe = detail::finite_eval(sys);
    std::vector<Idx> st = boxed_star_row_table(d_.retract());
    std::vector<std::vector<Idx>> psi(static_cast<std::size_t>(n));
    for (Idx i = 1; i <= n; ++i) {
      auto& tab = psi[static_cast<std::size_t>(i - 1)];
      tab.resize(static_cast<std::size_t>(m));
      for (Idx g = 0; g < m; ++g)
        tab[static_cast<std::size_t>(g)] = apply(i, Element::index(g)).idx();
    }
    Idx tl = tail.idx();
    auto make_worker = [st, psi, m, n, tl, fe] {
      return [st, psi, m, n, tl, fe](const std::vector<Idx>& t) {
        Idx acc = psi[0][static_cast<std::size_t>(t[0])];
        for (Idx i = 1; i < n; ++i)
          acc = st[static_cast<std::size_t>(
              acc * m + psi[static_cast<std::size_t>(i)][static_cast<std::size_t>(t[static_cast<std::size_t>(i)])])];
        acc = st[static_cast<std::size_t>(acc * m + tl)];
        return acc == fe(t.data());
      };
    };
    auto note = [](const std::vector<Idx>&) {
      return std::string("psi-fold disagrees with mu on this tuple");
    };
    return run_finite_predicate(sys, static_cast<int>(n), opts, exhaustive, name,
                                0x4040ULL, make_worker, note);
  }

  resolve_exhaustive(sys, static_cast<int>(n), opts, strategy, name);
  return run_numeric_predicate(
      sys, static_cast<int>(n), kChainSampledTuples, 0x4040ULL,
      [this, n, tail](const Polyad& t) {
        const auto& r = d_.retract();
        Element acc = apply(1, t[0]);
        for (Idx i = 2; i <= n; ++i)
          acc = r.star(acc, apply(i, t[static_cast<std::size_t>(i - 1)]));
        acc = r.star(acc, tail);
        Element mu = base().evaluate(t);
        if (!base().equal(acc, mu))
          return "psi-fold gives " + acc.str() + ", mu gives " + mu.str();
        return std::string();
      });
}

}  // namespace polyadic
