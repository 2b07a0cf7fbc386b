#ifndef POLYADIC_HEINE_HPP
#define POLYADIC_HEINE_HPP

#include "polyadic/element.hpp"
#include "polyadic/errors.hpp"

namespace polyadic {

namespace detail {

inline Idx checked_add(Idx a, Idx b) {
  Idx r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer addition overflow");
  return r;
}

inline Idx checked_mul(Idx a, Idx b) {
  Idx r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer multiplication overflow");
  return r;
}

}  // namespace detail

/// Heine number [[k]]_q = (q^k - 1)/(q - 1) = 1 + q + ... + q^{k-1}, computed
/// exactly over the integers by the recurrence [[k]] = q*[[k-1]] + 1 so that
/// negative bases work too ([[k]]_{-2} = 0, 1, -1, 3, -5, ...).  [[k]]_1 = k.
inline Idx heine(Idx k, Idx q) {
  if (k < 0) throw InvalidParams("heine: k must be non-negative");
  Idx acc = 0;
  for (Idx i = 0; i < k; ++i) acc = detail::checked_add(detail::checked_mul(q, acc), 1);
  return acc;
}

/// Integer power base^e for e >= 0, overflow-checked.
inline Idx ipow(Idx base, Idx e) {
  if (e < 0) throw InvalidParams("ipow: exponent must be non-negative");
  Idx acc = 1;
  for (Idx i = 0; i < e; ++i) acc = detail::checked_mul(acc, base);
  return acc;
}

/// Canonical residue of x modulo m in {0, ..., m-1} (m > 0), correct for
/// negative x.
inline Idx mod(Idx x, Idx m) {
  Idx r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace polyadic

#endif  // POLYADIC_HEINE_HPP
