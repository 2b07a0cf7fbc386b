#include <doctest.h>

#include <cmath>
#include <complex>

#include "polyadic/heine.hpp"
#include "polyadic/system.hpp"

using namespace polyadic;

TEST_CASE("heine numbers: known values") {
  // base 3: 0, 1, 4, 13, 40
  CHECK(heine(0, 3) == 0);
  CHECK(heine(1, 3) == 1);
  CHECK(heine(2, 3) == 4);
  CHECK(heine(3, 3) == 13);
  CHECK(heine(4, 3) == 40);
  // base -2: 0, 1, -1, 3, -5, 11
  Idx expect_m2[] = {0, 1, -1, 3, -5, 11};
  for (Idx k = 0; k <= 5; ++k) CHECK(heine(k, -2) == expect_m2[k]);
  // base -1 alternates 0, 1
  for (Idx k = 0; k <= 8; ++k) CHECK(heine(k, -1) == (k % 2));
  // base 1 degenerates to k itself
  for (Idx k = 0; k <= 12; ++k) CHECK(heine(k, 1) == k);
}

TEST_CASE("heine numbers: recurrence [[k]] = q*[[k-1]] + 1") {
  for (Idx q = -3; q <= 5; ++q)
    for (Idx k = 1; k <= 12; ++k) CHECK(heine(k, q) == q * heine(k - 1, q) + 1);
}

TEST_CASE("heine numbers: overflow raises instead of wrapping") {
  CHECK_THROWS_AS(heine(63, 3), OverflowError);
  CHECK_THROWS_AS(ipow(3, 63), OverflowError);
}

TEST_CASE("ipow and canonical mod") {
  CHECK(ipow(-2, 0) == 1);
  CHECK(ipow(-2, 3) == -8);
  CHECK(ipow(-3, 4) == 81);
  CHECK(mod(-1, 5) == 4);
  CHECK(mod(-7, 5) == 3);
  CHECK(mod(12, 5) == 2);
}

TEST_CASE("element basics") {
  Element i = Element::index(3);
  CHECK(i.is_index());
  CHECK(i.idx() == 3);
  CHECK_THROWS_AS(i.scalar(), DomainViolation);

  Element x = Element::real(2.5);
  CHECK(x.is_scalar());
  CHECK(x.real_value() == 2.5);
  CHECK_THROWS_AS(x.idx(), DomainViolation);

  Element z = Element::complex(1.0, -2.0);
  CHECK(z.scalar() == Scalar(1.0, -2.0));
  CHECK_THROWS_AS(z.real_value(), DomainViolation);

  CHECK(Element::index(2) == Element::index(2));
  CHECK(Element::index(2) != Element::real(2.0));
  CHECK(Element::real(2.0) == Element::real(2.0));
}

TEST_CASE("derived modular evaluation") {
  PolyadicSystem sys(DerivedModular{5, 3, 2});
  CHECK(sys.arity() == 3);
  CHECK(sys.order() == 5);
  CHECK(sys.is_finite());
  Element v = sys.evaluate({Element::index(1), Element::index(2), Element::index(3)});
  CHECK(v.idx() == 3);  // 1+2+3+2 = 8 = 3 mod 5
  CHECK_THROWS_AS(sys.evaluate({Element::index(0), Element::index(1)}), ArityMismatch);
  CHECK_THROWS_AS(sys.evaluate({Element::index(0), Element::index(1), Element::index(7)}),
                  DomainViolation);
}

TEST_CASE("cayley table layout: last index fastest") {
  // binary subtraction mod 3: entry(a,b) = a - b
  CayleyTable t;
  t.n = 2;
  t.m = 3;
  for (Idx a = 0; a < 3; ++a)
    for (Idx b = 0; b < 3; ++b) t.entries.push_back(mod(a - b, 3));
  PolyadicSystem sys(std::move(t));
  CHECK(sys.evaluate({Element::index(2), Element::index(1)}).idx() == 1);
  CHECK(sys.evaluate({Element::index(0), Element::index(2)}).idx() == 1);
}

TEST_CASE("cayley table validation") {
  CayleyTable t;
  t.n = 2;
  t.m = 2;
  t.entries = {0, 1, 1};  // wrong size
  CHECK_THROWS_AS(PolyadicSystem{std::move(t)}, InvalidParams);

  CayleyTable u;
  u.n = 2;
  u.m = 2;
  u.entries = {0, 1, 1, 5};  // entry out of range
  CHECK_THROWS_AS(PolyadicSystem{std::move(u)}, InvalidParams);
}

TEST_CASE("iterated product consumes ell*(n-1)+1 arguments") {
  for (Idx n = 2; n <= 4; ++n) {
    PolyadicSystem sys(DerivedModular{7, n, 1});
    for (Idx ell = 1; ell <= 5; ++ell) {
      Polyad args(static_cast<std::size_t>(ell * (n - 1) + 1), Element::index(1));
      Element v = sys.iterated_product(ell, args);
      // closed form: sum of args + ell*c
      CHECK(v.idx() == mod(ell * (n - 1) + 1 + ell, 7));
      Polyad bad(args.size() + 1, Element::index(1));
      CHECK_THROWS_AS(sys.iterated_product(ell, bad), ArityMismatch);
    }
  }
}

TEST_CASE("left-nested fold equals right-nested fold on associative systems") {
  for (Idx n : {3, 4}) {
    PolyadicSystem sys(DerivedModular{6, n, 2});
    Idx ell = 3;
    Polyad args;
    for (Idx i = 0; i < ell * (n - 1) + 1; ++i)
      args.push_back(Element::index(mod(2 * i + 1, 6)));
    Element left = sys.iterated_product(ell, args);
    // right-nested: fold the LAST n arguments first
    Polyad work = args;
    while (work.size() > 1) {
      Polyad tail(work.end() - n, work.end());
      work.erase(work.end() - n, work.end());
      work.push_back(sys.evaluate(tail));
    }
    CHECK(left == work[0]);
  }
}

TEST_CASE("polyadic power: ell = 0 returns g itself") {
  PolyadicSystem sys(DerivedModular{5, 3, 2});
  for (Idx g = 0; g < 5; ++g)
    CHECK(sys.polyadic_power(Element::index(g), 0).idx() == g);
  PolyadicSystem q(ClosedForm{Family::qprod, 3, 0.5, false, 1e-9});
  CHECK(q.polyadic_power(Element::real(1.7), 0).real_value() == 1.7);
}

TEST_CASE("derived modular power closed form, exhaustive") {
  for (Idx m = 2; m <= 7; ++m)
    for (Idx n = 2; n <= 5; ++n)
      for (Idx c = 0; c < m; c += (m > 3 ? 2 : 1))
        for (Idx ell = 0; ell <= 6; ++ell) {
          PolyadicSystem sys(DerivedModular{m, n, c});
          for (Idx g = 0; g < m; ++g) {
            Idx expect = mod((ell * (n - 1) + 1) * g + ell * c, m);
            CHECK(sys.polyadic_power(Element::index(g), ell).idx() == expect);
          }
        }
}

TEST_CASE("reduced product: frozen slots") {
  PolyadicSystem sys(DerivedModular{7, 4, 1});
  // freeze positions 1 and 3 at values 2 and 5; feed (3, 4) into slots 0, 2
  Element v = sys.reduced_product({Element::index(2), Element::index(5)}, {1, 3},
                                  {Element::index(3), Element::index(4)});
  CHECK(v.idx() == mod(3 + 2 + 4 + 5 + 1, 7));
  CHECK_THROWS_AS(sys.reduced_product({Element::index(2), Element::index(5)}, {1, 1},
                                      {Element::index(3), Element::index(4)}),
                  PositionOverlap);
  // at most n-2 frozen slots
  CHECK_THROWS_AS(
      sys.reduced_product({Element::index(0), Element::index(0), Element::index(0)},
                          {0, 1, 2}, {Element::index(3)}),
      InvalidParams);
}

TEST_CASE("closed form parameter validation") {
  CHECK_THROWS_AS(PolyadicSystem(ClosedForm{Family::qadd, 3, 0.0, false, 1e-9}),
                  InvalidParams);
  CHECK_THROWS_AS(PolyadicSystem(ClosedForm{Family::qprod, 3, 1.5, false, 1e-9}),
                  InvalidParams);
  CHECK_THROWS_AS(PolyadicSystem(ClosedForm{Family::qprod, 4, 0.5, false, 1e-9}),
                  InvalidParams);
  CHECK_THROWS_AS(PolyadicSystem(ClosedForm{Family::copula, 4, 0.0, false, 1e-9}),
                  InvalidParams);
  CHECK_THROWS_AS(PolyadicSystem(ClosedForm{Family::qadd, 3, 1.0, false, 0.0}),
                  InvalidParams);
}

TEST_CASE("q-addition evaluation and domain") {
  PolyadicSystem sys(ClosedForm{Family::qadd, 3, 0.5, false, 1e-9});
  Element v = sys.evaluate({Element::real(1.0), Element::real(2.0), Element::real(3.0)});
  CHECK(v.real_value() == doctest::Approx(6.0 + 0.5 * 6.0).epsilon(1e-12));
  CHECK_FALSE(sys.in_domain(Element::index(0)));
  CHECK_FALSE(sys.in_domain(Element::complex(1.0, 1.0)));  // complex not allowed

  PolyadicSystem c(ClosedForm{Family::qadd, 3, 0.5, true, 1e-9});
  CHECK(c.in_domain(Element::complex(1.0, 1.0)));
  Element w = c.evaluate(
      {Element::complex(0.0, 1.0), Element::complex(0.0, 1.0), Element::complex(0.0, 1.0)});
  // 3i + 0.5 * i^3 = 3i - 0.5i = 2.5i
  CHECK(std::abs(w.scalar() - Scalar(0.0, 2.5)) < 1e-12);
}

TEST_CASE("q-addition iterated power matches the affine closed form") {
  // x_k = A^k (g - p) + p, A = 1 + hbar g^{n-1}, p = -((n-1)/hbar) g^{2-n}
  for (Idx n : {2, 3, 4}) {
    PolyadicSystem sys(ClosedForm{Family::qadd, n, 0.7, false, 1e-9});
    for (double g : {-1.8, -0.9, -0.3, 0.4, 1.1, 1.9}) {
      double A = 1.0 + 0.7 * std::pow(g, static_cast<double>(n - 1));
      double p = -(static_cast<double>(n - 1) / 0.7) * std::pow(g, static_cast<double>(2 - n));
      for (Idx k = 0; k <= 8; ++k) {
        double closed = std::pow(A, static_cast<double>(k)) * (g - p) + p;
        double engine = sys.polyadic_power(Element::real(g), k).real_value();
        CHECK(std::abs(engine - closed) <=
              1e-10 * std::max({1.0, std::abs(engine), std::abs(closed)}));
      }
    }
  }
}

TEST_CASE("copula evaluation and the 0/0 = 0 convention") {
  PolyadicSystem sys(ClosedForm{Family::copula, 3, 0.0, false, 1e-9});
  // generic interior point
  double g = 0.3, h = 0.4, u = 0.6;
  double num = g * (1 - h) * u;
  double den = num + (1 - g) * h * (1 - u);
  CHECK(sys.evaluate({Element::real(g), Element::real(h), Element::real(u)}).real_value() ==
        doctest::Approx(num / den).epsilon(1e-12));
  // both zero: convention value 0
  CHECK(sys.evaluate({Element::real(0.0), Element::real(0.0), Element::real(0.5)})
            .real_value() == 0.0);
  CHECK(sys.evaluate({Element::real(1.0), Element::real(1.0), Element::real(0.5)})
            .real_value() == 0.0);
  CHECK_FALSE(sys.in_domain(Element::real(1.2)));
  CHECK_FALSE(sys.in_domain(Element::real(-0.1)));
}

TEST_CASE("q-product evaluation and domain") {
  PolyadicSystem sys(ClosedForm{Family::qprod, 3, 0.5, false, 1e-9});
  double g = 2.0, t = 3.0, u = 1.5;
  double expect = std::pow(std::sqrt(2.0) + std::sqrt(3.0) + std::sqrt(1.5) - 3.0, 2.0);
  CHECK(sys.evaluate({Element::real(g), Element::real(t), Element::real(u)}).real_value() ==
        doctest::Approx(expect).epsilon(1e-12));
  // arguments below 1 pull the bracket negative: 3 * 0.5^0.5 - 3 < 0
  CHECK_THROWS_AS(
      sys.evaluate({Element::real(0.5), Element::real(0.5), Element::real(0.5)}),
      DomainViolation);
  CHECK_FALSE(sys.in_domain(Element::real(-1.0)));
}

TEST_CASE("equality tolerance semantics") {
  PolyadicSystem sys(ClosedForm{Family::qadd, 3, 1.0, false, 1e-9});
  CHECK(sys.equal(Element::real(1.0), Element::real(1.0 + 5e-10)));
  CHECK_FALSE(sys.equal(Element::real(1.0), Element::real(1.0 + 5e-9)));
  // relative: large magnitudes widen the window
  CHECK(sys.equal(Element::real(1e6), Element::real(1e6 + 1e-4)));

  PolyadicSystem fin(DerivedModular{5, 3, 0});
  CHECK(fin.equal(Element::index(2), Element::index(2)));
  CHECK_FALSE(fin.equal(Element::index(2), Element::index(3)));
}

TEST_CASE("element rendering uses 12 significant digits") {
  CHECK(Element::index(7).str() == "7");
  CHECK(Element::real(0.25).str() == "0.25");
  CHECK(Element::real(1.0 / 3.0).str() == "0.333333333333");
}
