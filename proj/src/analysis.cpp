#include "polyadic/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "finite_eval.hpp"
#include "polyadic/detail/sweep.hpp"
#include "polyadic/heine.hpp"
#include "predicate_runner.hpp"

namespace polyadic {

namespace {

using detail::FiniteEval;
using detail::kSampledSolves;
using detail::kSampledTuples;
using detail::kSingularGuard;
using detail::max_evidence;
using detail::resolve_exhaustive;
using detail::Rng;
using detail::run_finite_predicate;
using detail::run_numeric_predicate;
using detail::to_polyad;

/// Value of the i-th associativity placement over a (2n-1)-tuple.
Element placement_value(const PolyadicSystem& sys, const Polyad& t, Idx i) {
  Idx n = sys.arity();
  Polyad inner(t.begin() + i, t.begin() + i + n);
  Element v = sys.evaluate(inner);
  Polyad outer;
  outer.reserve(static_cast<std::size_t>(n));
  outer.insert(outer.end(), t.begin(), t.begin() + i);
  outer.push_back(v);
  outer.insert(outer.end(), t.begin() + i + n, t.end());
  return sys.evaluate(outer);
}

/// Solve mu[context with x at pos] = target for closed forms, by family
/// formula.  Returns nullopt when the solution leaves the carrier or the
/// context is singular (callers count these as skipped).
std::optional<Element> solve_at_closed(const PolyadicSystem& sys, Idx pos,
                                       const Polyad& ctx, const Element& target) {
  const ClosedForm& f = *sys.closed_form();
  Idx n = sys.arity();
  if (static_cast<Idx>(ctx.size()) != n - 1 || pos < 0 || pos >= n)
    throw InvalidParams("solve_at: context must have n-1 entries and a valid slot");
  switch (f.family) {
    case Family::qadd: {
      Scalar s = 0.0, p = 1.0;
      for (const Element& g : ctx) {
        s += g.scalar();
        p *= g.scalar();
      }
      Scalar den = 1.0 + f.hbar * p;
      double scale = std::max(1.0, std::abs(f.hbar * p));
      if (std::abs(den) < kSingularGuard * scale) return std::nullopt;
      Scalar x = (target.scalar() - s) / den;
      Element e = Element::complex(x);
      if (!sys.in_domain(e)) return std::nullopt;
      return e;
    }
    case Family::copula: {
      double t = target.real_value();
      double a = ctx[0].real_value();
      double b = ctx[1].real_value();
      double num = 0.0, den = 0.0;
      // One closed form per slot of mu3[g,h,u] = g(1-h)u / (g(1-h)u + (1-g)h(1-u)).
      if (pos == 0) {
        num = t * a * (1.0 - b);
        den = (1.0 - a) * b * (1.0 - t) + num;
      } else if (pos == 1) {
        num = a * b * (1.0 - t);
        den = num + t * (1.0 - a) * (1.0 - b);
      } else {
        num = t * (1.0 - a) * b;
        den = a * (1.0 - b) * (1.0 - t) + num;
      }
      if (den == 0.0) return std::nullopt;
      return Element::real(num / den);
    }
    case Family::qprod: {
      double acc = std::pow(target.real_value(), f.hbar) + 3.0;
      for (const Element& g : ctx) acc -= std::pow(g.real_value(), f.hbar);
      if (!(acc > 0.0)) return std::nullopt;
      return Element::real(std::pow(acc, 1.0 / f.hbar));
    }
  }
  return std::nullopt;
}

CheckResult merge_all(const std::vector<CheckResult>& parts, const char* label) {
  CheckResult res;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    res.checked += p.checked;
    res.skipped += p.skipped;
    res.evidence = max_evidence(res.evidence, p.evidence);
    if (!p.pass && res.pass) {
      res.pass = false;
      res.witness = p.witness;
      if (res.witness)
        res.witness->note =
            std::string(label) + " " + std::to_string(i) + ": " + res.witness->note;
    }
  }
  return res;
}

}  // namespace

const char* evidence_name(Evidence e) {
  switch (e) {
    case Evidence::exhaustive:
      return "exhaustive";
    case Evidence::sampled:
      return "sampled";
    case Evidence::asserted:
      return "asserted";
  }
  return "unknown";
}

CheckResult check_associativity(const PolyadicSystem& sys, const SweepOptions& opts,
                                Strategy strategy) {
  Idx n = sys.arity();
  int width = static_cast<int>(2 * n - 1);

  if (sys.is_finite()) {
    bool exhaustive = resolve_exhaustive(sys, width, opts, strategy, "associativity");
    FiniteEval fe = detail::finite_eval(sys);
    auto make_worker = [fe, n] {
      return [fe, n, inner = std::vector<Idx>(static_cast<std::size_t>(n)),
              outer = std::vector<Idx>(static_cast<std::size_t>(n))](
                 const std::vector<Idx>& t) mutable {
        std::copy_n(t.data(), n, inner.data());
        outer[0] = fe(inner.data());
        for (Idx j = 1; j < n; ++j) outer[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(n - 1 + j)];
        Idx ref = fe(outer.data());
        for (Idx i = 1; i < n; ++i) {
          std::copy_n(t.data() + i, n, inner.data());
          Idx v = fe(inner.data());
          for (Idx j = 0; j < i; ++j) outer[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j)];
          outer[static_cast<std::size_t>(i)] = v;
          for (Idx j = i + 1; j < n; ++j)
            outer[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j + n - 1)];
          if (fe(outer.data()) != ref) return false;
        }
        return true;
      };
    };
    auto note = [&sys, n](const std::vector<Idx>& t) {
      Polyad p = to_polyad(t);
      std::string s = "placements give ";
      for (Idx i = 0; i < n; ++i) {
        if (i) s += ",";
        s += placement_value(sys, p, i).str();
      }
      return s;
    };
    return run_finite_predicate(sys, width, opts, exhaustive, "associativity",
                                0xA550C1A7ULL, make_worker, note);
  }

  resolve_exhaustive(sys, width, opts, strategy, "associativity");
  return run_numeric_predicate(
      sys, width, kSampledTuples, 0xA550C1A7ULL, [&sys](const Polyad& t) {
        Idx n = sys.arity();
        Element ref = placement_value(sys, t, 0);
        for (Idx i = 1; i < n; ++i) {
          Element v = placement_value(sys, t, i);
          if (!sys.equal(ref, v))
            return "placement " + std::to_string(i) + " gives " + v.str() +
                   ", placement 0 gives " + ref.str();
        }
        return std::string();
      });
}

std::vector<CheckResult> check_solvability(const PolyadicSystem& sys,
                                           const SweepOptions& opts,
                                           Strategy strategy) {
  Idx n = sys.arity();
  std::vector<CheckResult> out;
  out.reserve(static_cast<std::size_t>(n));

  if (sys.is_finite()) {
    bool exhaustive = resolve_exhaustive(sys, static_cast<int>(n), opts, strategy,
                                         "solvability");
    Idx m = sys.order();
    FiniteEval fe = detail::finite_eval(sys);
    for (Idx pos = 0; pos < n; ++pos) {
      if (exhaustive)  // the real work is m^n products, not m^{n-1} contexts
        detail::tuple_space_size(m, static_cast<int>(n), opts.budget, "solvability");
      auto make_worker = [fe, n, m, pos] {
        return [fe, n, m, pos, seen = std::vector<char>(static_cast<std::size_t>(m)),
                buf = std::vector<Idx>(static_cast<std::size_t>(n))](
                   const std::vector<Idx>& ctx) mutable {
          std::fill(seen.begin(), seen.end(), 0);
          for (Idx j = 0, k = 0; j < n; ++j)
            if (j != pos) buf[static_cast<std::size_t>(j)] = ctx[static_cast<std::size_t>(k++)];
          for (Idx x = 0; x < m; ++x) {
            buf[static_cast<std::size_t>(pos)] = x;
            Idx v = fe(buf.data());
            if (seen[static_cast<std::size_t>(v)]) return false;
            seen[static_cast<std::size_t>(v)] = 1;
          }
          return true;
        };
      };
      auto note = [pos](const std::vector<Idx>&) {
        return "position " + std::to_string(pos) +
               ": products over this context repeat a value, so some target is unreachable";
      };
      CheckResult r = run_finite_predicate(sys, static_cast<int>(n - 1), opts, exhaustive,
                                           "solvability", 0x501BAB1EULL + static_cast<std::uint64_t>(pos),
                                           make_worker, note);
      r.checked *= static_cast<std::uint64_t>(m);  // products evaluated per context
      out.push_back(std::move(r));
    }
    return out;
  }

  resolve_exhaustive(sys, static_cast<int>(n), opts, strategy, "solvability");
  for (Idx pos = 0; pos < n; ++pos) {
    CheckResult r = run_numeric_predicate(
        sys, static_cast<int>(n), kSampledSolves, 0x501BAB1EULL + static_cast<std::uint64_t>(pos),
        [&sys, pos](const Polyad& t) {
          // t = n-1 context points plus a target in the last slot.
          Polyad ctx(t.begin(), t.end() - 1);
          Element target = t.back();
          auto x = solve_at_closed(sys, pos, ctx, target);
          if (!x) throw DomainViolation("solution leaves the carrier");
          Polyad full(ctx);
          full.insert(full.begin() + pos, *x);
          Element got = sys.evaluate(full);
          if (!sys.equal(got, target))
            return "position " + std::to_string(pos) + ": solved x=" + x->str() +
                   " but mu gives " + got.str() + " instead of " + target.str();
          return std::string();
        });
    out.push_back(std::move(r));
  }
  return out;
}

CheckResult check_mediality(const PolyadicSystem& sys, const SweepOptions& opts,
                            Strategy strategy) {
  Idx n = sys.arity();
  int width = static_cast<int>(n * n);

  if (sys.is_finite()) {
    bool exhaustive = resolve_exhaustive(sys, width, opts, strategy, "mediality");
    FiniteEval fe = detail::finite_eval(sys);
    auto make_worker = [fe, n] {
      return [fe, n, row = std::vector<Idx>(static_cast<std::size_t>(n)),
              acc = std::vector<Idx>(static_cast<std::size_t>(n))](
                 const std::vector<Idx>& t) mutable {
        for (Idx k = 0; k < n; ++k) {
          for (Idx j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(k * n + j)];
          acc[static_cast<std::size_t>(k)] = fe(row.data());
        }
        Idx by_rows = fe(acc.data());
        for (Idx j = 0; j < n; ++j) {
          for (Idx k = 0; k < n; ++k) row[static_cast<std::size_t>(k)] = t[static_cast<std::size_t>(k * n + j)];
          acc[static_cast<std::size_t>(j)] = fe(row.data());
        }
        return fe(acc.data()) == by_rows;
      };
    };
    auto note = [](const std::vector<Idx>&) {
      return std::string("row-wise and column-wise products differ for this matrix");
    };
    return run_finite_predicate(sys, width, opts, exhaustive, "mediality",
                                0x3D3D1A17ULL, make_worker, note);
  }

  resolve_exhaustive(sys, width, opts, strategy, "mediality");
  return run_numeric_predicate(
      sys, width, kSampledTuples, 0x3D3D1A17ULL, [&sys](const Polyad& t) {
        Idx n = sys.arity();
        Polyad acc(static_cast<std::size_t>(n)), row(static_cast<std::size_t>(n));
        for (Idx k = 0; k < n; ++k) {
          for (Idx j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(k * n + j)];
          acc[static_cast<std::size_t>(k)] = sys.evaluate(row);
        }
        Element by_rows = sys.evaluate(acc);
        for (Idx j = 0; j < n; ++j) {
          for (Idx k = 0; k < n; ++k) row[static_cast<std::size_t>(k)] = t[static_cast<std::size_t>(k * n + j)];
          acc[static_cast<std::size_t>(j)] = sys.evaluate(row);
        }
        Element by_cols = sys.evaluate(acc);
        if (!sys.equal(by_rows, by_cols))
          return "rows give " + by_rows.str() + ", columns give " + by_cols.str();
        return std::string();
      });
}

namespace {

CheckResult swap_invariance(const PolyadicSystem& sys, const SweepOptions& opts,
                            Strategy strategy, bool adjacent_all, const char* name,
                            std::uint64_t seed) {
  Idx n = sys.arity();
  int width = static_cast<int>(n);

  auto swaps = [n, adjacent_all]() {
    std::vector<std::pair<Idx, Idx>> s;
    if (adjacent_all)
      for (Idx i = 0; i + 1 < n; ++i) s.emplace_back(i, i + 1);
    else
      s.emplace_back(0, n - 1);
    return s;
  }();

  if (sys.is_finite()) {
    bool exhaustive = resolve_exhaustive(sys, width, opts, strategy, name);
    FiniteEval fe = detail::finite_eval(sys);
    auto make_worker = [fe, swaps] {
      return [fe, swaps, buf = std::vector<Idx>()](const std::vector<Idx>& t) mutable {
        buf = t;
        Idx ref = fe(buf.data());
        for (auto [i, j] : swaps) {
          std::swap(buf[static_cast<std::size_t>(i)], buf[static_cast<std::size_t>(j)]);
          bool ok = fe(buf.data()) == ref;
          std::swap(buf[static_cast<std::size_t>(i)], buf[static_cast<std::size_t>(j)]);
          if (!ok) return false;
        }
        return true;
      };
    };
    auto note = [adjacent_all](const std::vector<Idx>&) {
      return std::string(adjacent_all ? "value changes under an adjacent transposition"
                                      : "value changes when first and last swap");
    };
    return run_finite_predicate(sys, width, opts, exhaustive, name, seed, make_worker,
                                note);
  }

  resolve_exhaustive(sys, width, opts, strategy, name);
  return run_numeric_predicate(sys, width, kSampledTuples, seed,
                               [&sys, &swaps](const Polyad& t) {
                                 Element ref = sys.evaluate(t);
                                 Polyad buf = t;
                                 for (auto [i, j] : swaps) {
                                   std::swap(buf[static_cast<std::size_t>(i)], buf[static_cast<std::size_t>(j)]);
                                   Element v = sys.evaluate(buf);
                                   std::swap(buf[static_cast<std::size_t>(i)], buf[static_cast<std::size_t>(j)]);
                                   if (!sys.equal(ref, v))
                                     return "swapping slots " + std::to_string(i) + "," +
                                            std::to_string(j) + " changes " + ref.str() +
                                            " to " + v.str();
                                 }
                                 return std::string();
                               });
}

}  // namespace

CommutativityReport check_commutativity(const PolyadicSystem& sys,
                                        const SweepOptions& opts, Strategy strategy) {
  CommutativityReport rep;
  rep.commutative =
      swap_invariance(sys, opts, strategy, true, "commutativity", 0xC0331117ULL);
  rep.semicommutative = swap_invariance(sys, opts, strategy, false, "semicommutativity",
                                        0x53331117ULL);
  return rep;
}

std::vector<CheckResult> check_cancellativity(const PolyadicSystem& sys,
                                              const SweepOptions& opts,
                                              Strategy strategy) {
  Idx n = sys.arity();
  std::vector<CheckResult> out;
  out.reserve(static_cast<std::size_t>(n));

  if (sys.is_finite()) {
    bool exhaustive =
        resolve_exhaustive(sys, static_cast<int>(n), opts, strategy, "cancellativity");
    Idx m = sys.order();
    FiniteEval fe = detail::finite_eval(sys);
    for (Idx pos = 0; pos < n; ++pos) {
      if (exhaustive)
        detail::tuple_space_size(m, static_cast<int>(n), opts.budget, "cancellativity");
      auto make_worker = [fe, n, m, pos] {
        return [fe, n, m, pos, seen = std::vector<char>(static_cast<std::size_t>(m)),
                buf = std::vector<Idx>(static_cast<std::size_t>(n))](
                   const std::vector<Idx>& ctx) mutable {
          std::fill(seen.begin(), seen.end(), 0);
          for (Idx j = 0, k = 0; j < n; ++j)
            if (j != pos) buf[static_cast<std::size_t>(j)] = ctx[static_cast<std::size_t>(k++)];
          for (Idx x = 0; x < m; ++x) {
            buf[static_cast<std::size_t>(pos)] = x;
            Idx v = fe(buf.data());
            if (seen[static_cast<std::size_t>(v)]) return false;  // two arguments collide
            seen[static_cast<std::size_t>(v)] = 1;
          }
          return true;
        };
      };
      auto note = [pos](const std::vector<Idx>&) {
        return "position " + std::to_string(pos) +
               ": two distinct arguments give the same product in this context";
      };
      CheckResult r = run_finite_predicate(sys, static_cast<int>(n - 1), opts, exhaustive,
                                           "cancellativity",
                                           0xCA9CE77EULL + static_cast<std::uint64_t>(pos),
                                           make_worker, note);
      r.checked *= static_cast<std::uint64_t>(m);
      out.push_back(std::move(r));
    }
    return out;
  }

  resolve_exhaustive(sys, static_cast<int>(n), opts, strategy, "cancellativity");
  for (Idx pos = 0; pos < n; ++pos) {
    CheckResult r = run_numeric_predicate(
        sys, static_cast<int>(n + 1), kSampledSolves,
        0xCA9CE77EULL + static_cast<std::uint64_t>(pos), [&sys, pos](const Polyad& t) {
          // t = n-1 context points plus two candidate arguments x, y.
          Polyad ctx(t.begin(), t.end() - 2);
          Element x = t[t.size() - 2], y = t[t.size() - 1];
          if (sys.equal(x, y)) return std::string();
          Polyad fx(ctx), fy(ctx);
          fx.insert(fx.begin() + pos, x);
          fy.insert(fy.begin() + pos, y);
          Element vx = sys.evaluate(fx), vy = sys.evaluate(fy);
          if (sys.equal(vx, vy))
            return "position " + std::to_string(pos) + ": x=" + x.str() +
                   " and y=" + y.str() + " give the same product " + vx.str();
          return std::string();
        });
    out.push_back(std::move(r));
  }
  return out;
}

ClassificationReport classify(const PolyadicSystem& sys, const SweepOptions& opts,
                              Strategy strategy) {
  ClassificationReport rep;
  rep.arity = sys.arity();
  if (sys.is_finite()) rep.order = sys.order();

  rep.associative = check_associativity(sys, opts, strategy);
  rep.solvable = check_solvability(sys, opts, strategy);
  rep.quasigroup = merge_all(rep.solvable, "position");

  rep.group.pass = rep.associative.pass && rep.quasigroup.pass;
  rep.group.checked = rep.associative.checked + rep.quasigroup.checked;
  rep.group.skipped = rep.associative.skipped + rep.quasigroup.skipped;
  rep.group.evidence = max_evidence(rep.associative.evidence, rep.quasigroup.evidence);
  if (!rep.associative.pass)
    rep.group.witness = rep.associative.witness;
  else if (!rep.quasigroup.pass)
    rep.group.witness = rep.quasigroup.witness;
  if (const auto* f = sys.closed_form()) {
    // The copula and q-product families carry a family-level group claim that
    // samples can only corroborate; q-addition is reported sample-by-sample.
    if (rep.group.pass && (f->family == Family::copula || f->family == Family::qprod))
      rep.group.evidence = Evidence::asserted;
  }

  rep.medial = check_mediality(sys, opts, strategy);
  CommutativityReport comm = check_commutativity(sys, opts, strategy);
  rep.commutative = comm.commutative;
  rep.semicommutative = comm.semicommutative;
  rep.cancellative = check_cancellativity(sys, opts, strategy);

  rep.idempotency.evidence = sys.is_finite() ? Evidence::exhaustive : Evidence::sampled;
  for (const Element& g : sys.carrier_sample()) {
    bool idem = false;
    try {
      idem = is_idempotent(sys, g);
    } catch (const DomainViolation&) {
      ++rep.idempotency.skipped;
      continue;
    }
    ++rep.idempotency.checked;
    if (idem) {
      if (sys.is_finite()) rep.idempotents.push_back(g);
    } else if (rep.idempotency.pass) {
      rep.idempotency.pass = false;
      rep.idempotency.witness =
          Witness{{g}, "g^<1> = " + sys.polyadic_power(g, 1).str() + " differs from g"};
    }
  }
  return rep;
}

Element querelement(const PolyadicSystem& sys, const Element& g) {
  sys.require_in_domain(g);
  Idx n = sys.arity();

  if (sys.is_finite()) {
    Idx m = sys.order();
    Polyad args(static_cast<std::size_t>(n), g);
    std::optional<Idx> found;
    for (Idx x = 0; x < m; ++x) {
      args.back() = Element::index(x);
      if (sys.evaluate(args).idx() == g.idx()) {
        if (found)
          throw NonUniqueSolution("querelement of " + g.str() + " is not unique (" +
                                  std::to_string(*found) + " and " + std::to_string(x) +
                                  " both work); the system is not an n-ary group");
        found = x;
      }
    }
    if (!found)
      throw NotQuerable("no querelement: mu[" + g.str() + "^" + std::to_string(n - 1) +
                        ", x] never returns " + g.str());
    return Element::index(*found);
  }

  const ClosedForm& f = *sys.closed_form();
  Element result = Element::real(0.0);
  switch (f.family) {
    case Family::qadd: {
      Scalar z = g.scalar();
      Scalar pw = 1.0;
      for (Idx i = 0; i < n - 1; ++i) pw *= z;
      Scalar den = 1.0 + f.hbar * pw;
      double scale = std::max(1.0, std::abs(f.hbar * pw));
      if (std::abs(den) < kSingularGuard * scale) {
        if (std::abs(static_cast<double>(n - 2)) * std::abs(z) < kSingularGuard)
          throw NonUniqueSolution("querelement of " + g.str() +
                                  " is not unique at this singular point");
        throw NotQuerable("querelement of " + g.str() +
                          ": denominator 1 + hbar*g^{n-1} vanishes");
      }
      result = Element::complex(-static_cast<double>(n - 2) * z / den);
      break;
    }
    case Family::copula:
      result = g;  // every element is its own querelement in this family
      break;
    case Family::qprod: {
      double acc = 3.0 - std::pow(g.real_value(), f.hbar);
      if (!(acc > 0.0))
        throw NotQuerable("querelement of " + g.str() +
                          ": bracket 3 - g^hbar is not positive");
      result = Element::real(std::pow(acc, 1.0 / f.hbar));
      break;
    }
  }
  sys.require_in_domain(result);
  Polyad args(static_cast<std::size_t>(n), g);
  args.back() = result;
  Element back = sys.evaluate(args);
  if (!sys.equal(back, g))
    throw NotQuerable("querelement formula for " + g.str() + " fails validation: mu gives " +
                      back.str());
  return result;
}

Element querpower(const PolyadicSystem& sys, const Element& g, Idx k) {
  if (k < 0) throw InvalidParams("querpower: k must be non-negative");
  Element acc = g;
  for (Idx i = 0; i < k; ++i) acc = querelement(sys, acc);
  return acc;
}

Element negative_power(const PolyadicSystem& sys, const Element& g, Idx ell) {
  if (ell < 1) throw InvalidParams("negative_power: ell must be at least 1");
  sys.require_in_domain(g);
  Idx n = sys.arity();
  Idx total = ell * (n - 1) + 1;

  if (sys.is_finite()) {
    Idx m = sys.order();
    Polyad args(static_cast<std::size_t>(total), g);
    std::optional<Idx> found;
    for (Idx x = 0; x < m; ++x) {
      args.back() = Element::index(x);
      if (sys.iterated_product(ell, args).idx() == g.idx()) {
        if (found)
          throw NonUniqueSolution("negative power of " + g.str() + " is not unique");
        found = x;
      }
    }
    if (!found)
      throw NoSolution("g^<-" + std::to_string(ell) + "> of " + g.str() +
                       " does not exist");
    return Element::index(*found);
  }

  // The last fold application is mu[g^<ell-1>, g^{n-2}, x]; invert it.
  Element acc = sys.polyadic_power(g, ell - 1);
  Polyad ctx;
  ctx.reserve(static_cast<std::size_t>(n - 1));
  ctx.push_back(acc);
  ctx.insert(ctx.end(), static_cast<std::size_t>(n - 2), g);
  auto x = solve_at_closed(sys, n - 1, ctx, g);
  if (!x)
    throw NoSolution("g^<-" + std::to_string(ell) + "> of " + g.str() +
                     " leaves the carrier");
  Polyad full(static_cast<std::size_t>(total), g);
  full.back() = *x;
  Element got = sys.iterated_product(ell, full);
  if (!sys.equal(got, g))
    throw NoSolution("negative power validation failed: mu^ell gives " + got.str() +
                     " instead of " + g.str());
  return *x;
}

Element power_signed(const PolyadicSystem& sys, const Element& g, Idx ell) {
  if (ell >= 0) return sys.polyadic_power(g, ell);
  return negative_power(sys, g, -ell);
}

CheckResult verify_querpower_identity(const PolyadicSystem& sys, const Element& g,
                                      Idx k_max) {
  if (k_max < 0) throw InvalidParams("verify_querpower_identity: k_max must be >= 0");
  CheckResult res;
  res.evidence = Evidence::exhaustive;
  Idx base = 2 - sys.arity();
  Element qp = g;
  for (Idx k = 0; k <= k_max; ++k) {
    Element rhs = power_signed(sys, g, -heine(k, base));
    ++res.checked;
    if (!sys.equal(qp, rhs)) {
      res.pass = false;
      res.witness = Witness{{g}, "k=" + std::to_string(k) + ": quer^k(g)=" + qp.str() +
                                     " but g^<-[[k]]_{2-n}> = " + rhs.str()};
      return res;
    }
    if (k < k_max) qp = querelement(sys, qp);
  }
  return res;
}

bool is_neutral(const PolyadicSystem& sys, const Element& g, const Polyad& polyad) {
  Idx n = sys.arity();
  Idx len = static_cast<Idx>(polyad.size());
  if (len <= 0 || len % (n - 1) != 0)
    throw ArityMismatch("is_neutral: polyad length must be a positive multiple of n-1");
  Idx k = len / (n - 1);
  for (Idx pos = 0; pos <= len; ++pos) {
    Polyad args;
    args.reserve(static_cast<std::size_t>(len + 1));
    args.insert(args.end(), polyad.begin(), polyad.begin() + pos);
    args.push_back(g);
    args.insert(args.end(), polyad.begin() + pos, polyad.end());
    Element v = k == 1 ? sys.evaluate(args) : sys.iterated_product(k, args);
    if (!sys.equal(v, g)) return false;
  }
  return true;
}

std::vector<Polyad> neutral_polyads(const PolyadicSystem& sys, const SweepOptions& opts) {
  if (!sys.is_finite())
    throw InvalidParams("neutral_polyads: enumeration needs a finite carrier");
  Idx n = sys.arity();
  Idx m = sys.order();
  detail::tuple_space_size(m, static_cast<int>(n), opts.budget, "neutral_polyads");

  FiniteEval fe = detail::finite_eval(sys);
  std::vector<Polyad> out;
  std::vector<Idx> cand(static_cast<std::size_t>(n - 1), 0);
  std::vector<Idx> buf(static_cast<std::size_t>(n));
  do {
    bool good = true;
    for (Idx g = 0; g < m && good; ++g) {
      for (Idx pos = 0; pos < n && good; ++pos) {
        for (Idx j = 0, k = 0; j < n; ++j)
          buf[static_cast<std::size_t>(j)] =
              j == pos ? g : cand[static_cast<std::size_t>(k++)];
        if (fe(buf.data()) != g) good = false;
      }
    }
    if (good) out.push_back(to_polyad(cand));
  } while (detail::next_tuple(cand, m));
  return out;
}

Polyad polyadic_inverse(const PolyadicSystem& sys, const Element& g) {
  Idx n = sys.arity();
  if (n < 3)
    throw InvalidParams("polyadic_inverse: defined for arity >= 3 "
                        "(binary inverses live on retracts)");
  Polyad inv = repeated(g, n - 3);
  inv.push_back(querelement(sys, g));

  auto check_probe = [&](const Element& h) {
    Polyad left;
    left.reserve(static_cast<std::size_t>(n));
    left.push_back(g);
    left.insert(left.end(), inv.begin(), inv.end());
    left.push_back(h);
    Polyad right;
    right.reserve(static_cast<std::size_t>(n));
    right.push_back(h);
    right.insert(right.end(), inv.begin(), inv.end());
    right.push_back(g);
    return sys.equal(sys.evaluate(left), h) && sys.equal(sys.evaluate(right), h);
  };

  for (const Element& h : sys.carrier_sample()) {
    if (!check_probe(h))
      throw NotAGroup("inverse polyad of " + g.str() + " fails neutrality at h=" +
                      h.str());
  }
  return inv;
}

CheckResult verify_dornte(const PolyadicSystem& sys, const SweepOptions&) {
  Idx n = sys.arity();
  CheckResult res;
  res.evidence = sys.is_finite() ? Evidence::exhaustive : Evidence::sampled;
  for (const Element& g : sys.carrier_sample()) {
    Element q;
    try {
      q = querelement(sys, g);
    } catch (const NotQuerable&) {
      ++res.skipped;
      continue;
    } catch (const DomainViolation&) {
      ++res.skipped;
      continue;
    }
    for (Idx pos = 0; pos < n; ++pos) {
      Polyad args(static_cast<std::size_t>(n), g);
      args[static_cast<std::size_t>(pos)] = q;
      ++res.checked;
      if (!sys.equal(sys.evaluate(args), g)) {
        res.pass = false;
        res.witness = Witness{args, "quer(" + g.str() + ")=" + q.str() + " at slot " +
                                        std::to_string(pos) +
                                        " does not reproduce g"};
        return res;
      }
    }
  }
  return res;
}

bool is_idempotent(const PolyadicSystem& sys, const Element& g, Idx ell) {
  return sys.equal(sys.polyadic_power(g, ell), g);
}

}  // namespace polyadic
