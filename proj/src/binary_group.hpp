#ifndef POLYADIC_SRC_BINARY_GROUP_HPP
#define POLYADIC_SRC_BINARY_GROUP_HPP

#include <string>
#include <vector>

#include "polyadic/analysis.hpp"
#include "polyadic/errors.hpp"
#include "polyadic/system.hpp"

namespace polyadic::detail {

struct BinaryGroupData {
  Idx m = 0;
  Idx e = 0;                 // identity
  std::vector<Idx> inverse;  // two-sided inverse per element
};

/// Validates that an m x m Cayley table is a group (associative, identity,
/// two-sided inverses) and returns the identity and inverse table.
inline BinaryGroupData validate_binary_group(const CayleyTable& t,
                                             const SweepOptions& opts) {
  if (t.n != 2) throw InvalidParams("binary group validation needs an arity-2 table");
  PolyadicSystem sys(t);  // validates shape and entry range
  Idx m = t.m;
  auto bt = [&](Idx x, Idx y) { return t.entries[static_cast<std::size_t>(x * m + y)]; };

  CheckResult assoc = check_associativity(sys, opts, Strategy::exhaustive);
  if (!assoc.pass)
    throw NotAGroup("binary table is not associative (" +
                    (assoc.witness ? assoc.witness->note : std::string()) + ")");

  BinaryGroupData data;
  data.m = m;
  Idx e = -1;
  for (Idx cand = 0; cand < m && e < 0; ++cand) {
    bool ok = true;
    for (Idx g = 0; g < m && ok; ++g) ok = bt(cand, g) == g && bt(g, cand) == g;
    if (ok) e = cand;
  }
  if (e < 0) throw NotAGroup("binary table has no identity element");
  data.e = e;

  data.inverse.assign(static_cast<std::size_t>(m), -1);
  for (Idx g = 0; g < m; ++g) {
    for (Idx x = 0; x < m; ++x)
      if (bt(g, x) == e && bt(x, g) == e) {
        data.inverse[static_cast<std::size_t>(g)] = x;
        break;
      }
    if (data.inverse[static_cast<std::size_t>(g)] < 0)
      throw NotAGroup("element " + std::to_string(g) + " has no two-sided inverse");
  }
  return data;
}

}  // namespace polyadic::detail

#endif  // POLYADIC_SRC_BINARY_GROUP_HPP
