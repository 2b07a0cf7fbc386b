#ifndef POLYADIC_SRC_FINITE_EVAL_HPP
#define POLYADIC_SRC_FINITE_EVAL_HPP

#include "polyadic/errors.hpp"
#include "polyadic/system.hpp"

namespace polyadic::detail {

/// Unboxed evaluation kernel for finite systems, used inside sweeps where
/// per-call Element construction and validation would dominate.  Arguments
/// must already be valid indices; the kernel does no checking.  Holds a raw
/// pointer into the system's table, so the system must outlive it.
struct FiniteEval {
  Idx m = 0;
  Idx n = 0;
  Idx c = 0;                   // derived-modular constant
  const Idx* table = nullptr;  // null => derived-modular kernel

  Idx operator()(const Idx* a) const {
    if (table == nullptr) {
      Idx s = c;
      for (Idx i = 0; i < n; ++i) s += a[i];
      return s % m;
    }
    Idx ix = 0;
    for (Idx i = 0; i < n; ++i) ix = ix * m + a[i];
    return table[static_cast<std::size_t>(ix)];
  }
};

inline FiniteEval finite_eval(const PolyadicSystem& sys) {
  if (const auto* d = sys.derived()) return {d->m, d->n, d->c, nullptr};
  if (const auto* t = sys.table()) return {t->m, t->n, 0, t->entries.data()};
  throw InvalidParams("finite evaluation kernel requested for a closed-form system");
}

}  // namespace polyadic::detail

#endif  // POLYADIC_SRC_FINITE_EVAL_HPP
