#ifndef POLYADIC_DETAIL_SWEEP_HPP
#define POLYADIC_DETAIL_SWEEP_HPP

#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "polyadic/element.hpp"
#include "polyadic/errors.hpp"
#include "polyadic/options.hpp"

namespace polyadic::detail {

/// Number of tuples in {0..base-1}^width, or throws SweepBudgetExceeded when
/// it does not fit the budget (also covers 64-bit overflow of the count).
inline std::uint64_t tuple_space_size(Idx base, int width, std::uint64_t budget,
                                      const char* what) {
  std::uint64_t space = 1;
  for (int i = 0; i < width; ++i) {
    if (base > 0 && space > budget / static_cast<std::uint64_t>(base) + 1)
      throw SweepBudgetExceeded(std::string(what) + ": tuple space exceeds budget of " +
                                std::to_string(budget) + " tuples");
    space *= static_cast<std::uint64_t>(base);
  }
  if (space > budget)
    throw SweepBudgetExceeded(std::string(what) + ": tuple space of " +
                              std::to_string(space) + " exceeds budget of " +
                              std::to_string(budget) + " tuples");
  return space;
}

/// Advance t through {0..base-1}^width in row-major order (last index fastest).
/// Returns false after the last tuple wraps back to all-zeros.
inline bool next_tuple(std::vector<Idx>& t, Idx base) {
  for (std::size_t i = t.size(); i-- > 0;) {
    if (++t[i] < base) return true;
    t[i] = 0;
  }
  return false;
}

/// Digits of rank in base `base`, row-major (last index fastest).
inline std::vector<Idx> unrank_tuple(std::uint64_t rank, Idx base, int width) {
  std::vector<Idx> t(static_cast<std::size_t>(width), 0);
  for (std::size_t i = t.size(); i-- > 0;) {
    t[i] = static_cast<Idx>(rank % static_cast<std::uint64_t>(base));
    rank /= static_cast<std::uint64_t>(base);
  }
  return t;
}

struct SweepOutcome {
  std::uint64_t space = 0;
  std::optional<std::uint64_t> first_fail;  // lowest-rank failing tuple
};

/// Exhaustively sweep {0..base-1}^width with a per-thread worker.
///
/// `make_worker()` is invoked once per thread and must return a callable
/// `bool(const std::vector<Idx>&)` (true = tuple satisfies the predicate);
/// this lets workers own scratch buffers without sharing.  The returned
/// witness is deterministic: the failing tuple of lowest rank, regardless of
/// thread count.  Threads beyond the first are used only when the space is
/// large enough to amortize their startup.
template <class WorkerFactory>
SweepOutcome sweep_tuples(Idx base, int width, const SweepOptions& opt,
                          const char* what, WorkerFactory&& make_worker) {
  SweepOutcome out;
  out.space = tuple_space_size(base, width, opt.budget, what);
  if (out.space == 0) return out;

  constexpr std::uint64_t kNoFail = std::numeric_limits<std::uint64_t>::max();
  int jobs = opt.jobs > 0 ? opt.jobs : 1;
  if (static_cast<std::uint64_t>(jobs) > out.space) jobs = static_cast<int>(out.space);
  if (out.space < 4096) jobs = 1;

  std::atomic<std::uint64_t> best{kNoFail};

  auto run_block = [&](std::uint64_t lo, std::uint64_t hi) {
    auto worker = make_worker();
    std::vector<Idx> t = unrank_tuple(lo, base, width);
    for (std::uint64_t r = lo; r < hi; ++r) {
      if ((r & 0x3FF) == 0 && best.load(std::memory_order_relaxed) < r) return;
      if (!worker(t)) {
        std::uint64_t cur = best.load(std::memory_order_relaxed);
        while (r < cur && !best.compare_exchange_weak(cur, r, std::memory_order_relaxed)) {
        }
        return;
      }
      next_tuple(t, base);
    }
  };

  if (jobs == 1) {
    run_block(0, out.space);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    std::uint64_t chunk = out.space / static_cast<std::uint64_t>(jobs);
    std::uint64_t extra = out.space % static_cast<std::uint64_t>(jobs);
    std::uint64_t lo = 0;
    for (int j = 0; j < jobs; ++j) {
      std::uint64_t hi = lo + chunk + (static_cast<std::uint64_t>(j) < extra ? 1 : 0);
      pool.emplace_back(run_block, lo, hi);
      lo = hi;
    }
    for (auto& th : pool) th.join();
  }

  if (best.load() != kNoFail) out.first_fail = best.load();
  return out;
}

/// splitmix64: tiny deterministic generator for sampled (non-exhaustive)
/// numeric checks.  Fixed seeds keep sampled evidence reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform index in {0, ..., n-1}.
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(next() % n); }

 private:
  std::uint64_t s_;
};

}  // namespace polyadic::detail

#endif  // POLYADIC_DETAIL_SWEEP_HPP
