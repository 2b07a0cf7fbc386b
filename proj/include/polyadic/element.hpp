#ifndef POLYADIC_ELEMENT_HPP
#define POLYADIC_ELEMENT_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "polyadic/errors.hpp"

namespace polyadic {

using Idx = std::int64_t;
using Scalar = std::complex<double>;

/// One element of a polyadic system's carrier: either an index into a finite
/// carrier {0, ..., m-1} or a numeric scalar for closed-form carriers.
/// Immutable value type; which alternative is valid depends on the system the
/// element is used with, and systems validate on use.
class Element {
 public:
  Element() : v_(Idx{0}) {}

  static Element index(Idx i) { return Element(i); }
  static Element real(double x) { return Element(Scalar(x, 0.0)); }
  static Element complex(Scalar z) { return Element(z); }
  static Element complex(double re, double im) { return Element(Scalar(re, im)); }

  bool is_index() const { return std::holds_alternative<Idx>(v_); }
  bool is_scalar() const { return std::holds_alternative<Scalar>(v_); }

  Idx idx() const {
    if (!is_index()) throw DomainViolation("element is not a finite-carrier index");
    return std::get<Idx>(v_);
  }

  Scalar scalar() const {
    if (!is_scalar()) throw DomainViolation("element is not a numeric scalar");
    return std::get<Scalar>(v_);
  }

  /// Scalar value asserted real; throws if the imaginary part is non-zero.
  double real_value() const {
    Scalar z = scalar();
    if (z.imag() != 0.0)
      throw DomainViolation("element has a non-zero imaginary part");
    return z.real();
  }

  /// Exact structural equality (index vs index, scalar vs scalar bitwise-==).
  /// Tolerance-aware comparison lives on PolyadicSystem::equal.
  friend bool operator==(const Element& a, const Element& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

  std::string str() const;

 private:
  explicit Element(Idx i) : v_(i) {}
  explicit Element(Scalar z) : v_(z) {}
  std::variant<Idx, Scalar> v_;
};

/// A finite sequence of elements fed to a product.
using Polyad = std::vector<Element>;

/// k copies of g.
inline Polyad repeated(const Element& g, Idx k) {
  if (k < 0) throw InvalidParams("repetition count must be non-negative");
  return Polyad(static_cast<std::size_t>(k), g);
}

/// Concatenation helper used when assembling polyads from segments.
inline Polyad concat(std::initializer_list<Polyad> parts) {
  Polyad out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace polyadic

#endif  // POLYADIC_ELEMENT_HPP
