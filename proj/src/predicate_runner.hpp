#ifndef POLYADIC_SRC_PREDICATE_RUNNER_HPP
#define POLYADIC_SRC_PREDICATE_RUNNER_HPP

#include <string>
#include <vector>

#include "polyadic/analysis.hpp"
#include "polyadic/detail/sweep.hpp"
#include "polyadic/errors.hpp"
#include "polyadic/system.hpp"

namespace polyadic::detail {

inline constexpr std::uint64_t kSampledTuples = 20000;  // per sampled predicate
inline constexpr std::uint64_t kSampledSolves = 4000;   // per-position sampled solves
inline constexpr double kSingularGuard = 1e-12;  // relative singular-denominator cutoff

inline Polyad to_polyad(const std::vector<Idx>& t) {
  Polyad p;
  p.reserve(t.size());
  for (Idx v : t) p.push_back(Element::index(v));
  return p;
}

inline std::string join_polyad(const Polyad& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += p[i].str();
  }
  return s + ")";
}

inline bool space_within(Idx base, int width, std::uint64_t budget) {
  std::uint64_t space = 1;
  for (int i = 0; i < width; ++i) {
    if (base > 1 && space > budget / static_cast<std::uint64_t>(base)) return false;
    space *= static_cast<std::uint64_t>(base);
    if (space > budget) return false;
  }
  return true;
}

/// Whether this predicate runs exhaustively; throws for contradictory requests.
inline bool resolve_exhaustive(const PolyadicSystem& sys, int width,
                               const SweepOptions& opts, Strategy strategy,
                               const char* name) {
  if (!sys.is_finite()) {
    if (strategy == Strategy::exhaustive)
      throw InvalidParams(std::string(name) +
                          ": closed-form carriers cannot be swept exhaustively");
    return false;
  }
  switch (strategy) {
    case Strategy::exhaustive:
      return true;  // the sweep itself enforces the budget
    case Strategy::sampled:
      return false;
    case Strategy::auto_:
      return space_within(sys.order(), width, opts.budget);
  }
  return true;
}

inline Element sample_point(const ClosedForm& f, Rng& rng) {
  switch (f.family) {
    case Family::qadd:
      if (f.allow_complex)
        return Element::complex(
            Scalar(-1.5 + 3.0 * rng.uniform(), -1.5 + 3.0 * rng.uniform()));
      return Element::real(-2.0 + 4.0 * rng.uniform());
    case Family::copula:
      return Element::real(0.01 + 0.98 * rng.uniform());
    case Family::qprod:
      return Element::real(1.0 + 2.0 * rng.uniform());
  }
  return Element::real(0.0);
}

/// Runs a finite predicate either exhaustively or on random index tuples.
/// make_worker() yields a per-thread bool(const std::vector<Idx>&);
/// note(t) renders the failure note for a witness tuple.
template <class MakeWorker, class NoteFn>
CheckResult run_finite_predicate(const PolyadicSystem& sys, int width,
                                 const SweepOptions& opts, bool exhaustive,
                                 const char* name, std::uint64_t seed,
                                 MakeWorker&& make_worker, NoteFn&& note) {
  CheckResult res;
  Idx m = sys.order();
  if (exhaustive) {
    auto out = sweep_tuples(m, width, opts, name, make_worker);
    res.evidence = Evidence::exhaustive;
    if (out.first_fail) {
      auto t = unrank_tuple(*out.first_fail, m, width);
      res.pass = false;
      res.checked = *out.first_fail + 1;
      res.witness = Witness{to_polyad(t), note(t)};
    } else {
      res.checked = out.space;
    }
    return res;
  }
  res.evidence = Evidence::sampled;
  auto worker = make_worker();
  Rng rng(seed);
  std::vector<Idx> t(static_cast<std::size_t>(width));
  for (std::uint64_t trial = 0; trial < kSampledTuples; ++trial) {
    for (auto& v : t) v = static_cast<Idx>(rng.pick(static_cast<std::size_t>(m)));
    ++res.checked;
    if (!worker(t)) {
      res.pass = false;
      res.witness = Witness{to_polyad(t), note(t)};
      break;
    }
  }
  return res;
}

/// Sampled predicate over closed-form tuples with domain-violation skipping.
/// pred(t) returns an empty string on pass, else the failure note.
template <class Pred>
CheckResult run_numeric_predicate(const PolyadicSystem& sys, int width,
                                  std::uint64_t trials, std::uint64_t seed,
                                  Pred&& pred) {
  const ClosedForm& f = *sys.closed_form();
  CheckResult res;
  res.evidence = Evidence::sampled;
  Rng rng(seed);
  Polyad t(static_cast<std::size_t>(width));
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    for (auto& g : t) g = sample_point(f, rng);
    try {
      std::string why = pred(t);
      ++res.checked;
      if (!why.empty()) {
        res.pass = false;
        res.witness = Witness{t, why};
        break;
      }
    } catch (const DomainViolation&) {
      ++res.skipped;
    }
  }
  return res;
}

inline Evidence max_evidence(Evidence a, Evidence b) {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

}  // namespace polyadic::detail

#endif  // POLYADIC_SRC_PREDICATE_RUNNER_HPP
