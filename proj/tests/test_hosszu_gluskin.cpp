#include <doctest.h>

#include <cmath>

#include "polyadic/chain.hpp"
#include "polyadic/gallery.hpp"
#include "polyadic/heine.hpp"

using namespace polyadic;

namespace {

CayleyTable cyclic_addition(Idx m) {
  CayleyTable t;
  t.n = 2;
  t.m = m;
  for (Idx a = 0; a < m; ++a)
    for (Idx b = 0; b < m; ++b) t.entries.push_back(mod(a + b, m));
  return t;
}

std::vector<Idx> identity_perm(Idx m) {
  std::vector<Idx> p(static_cast<std::size_t>(m));
  for (Idx i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

}  // namespace

TEST_CASE("admissible deformation parameters") {
  SUBCASE("ternary: odd q only, ell_e always integral") {
    auto qs = enumerate_q(3, 9);
    REQUIRE(qs.size() == 10);  // q = 0..9
    for (const auto& v : qs) {
      CHECK(v.admissible == (v.q % 2 == 1));
      if (v.admissible) {
        CHECK(v.ell_phi == (v.q + 1) / 2);
        CHECK(v.ell_e_integral);
        CHECK(v.ell_e == (heine(3, v.q) - 1) / 2);
      }
    }
    CHECK_FALSE(qs[0].admissible);  // ell_phi(0) = 1/2 is not an integer
  }
  SUBCASE("arity 4: q = 1 mod 3") {
    auto qs = enumerate_q(4, 9);
    std::vector<Idx> admissible, lphi;
    for (const auto& v : qs)
      if (v.admissible) {
        admissible.push_back(v.q);
        lphi.push_back(v.ell_phi);
        CHECK(v.ell_e_integral);
      }
    CHECK(admissible == std::vector<Idx>{1, 4, 7});
    CHECK(lphi == std::vector<Idx>{1, 3, 5});
  }
  SUBCASE("bad arity") { CHECK_THROWS_AS(enumerate_q(1, 5), InvalidParams); }
}

TEST_CASE("binary retract of a ternary derived group") {
  PolyadicSystem sys(DerivedModular{5, 3, 2});
  BinaryRetract r = build_retract(sys, Element::index(0));
  CHECK(r.identity().idx() == 0);
  CHECK(r.identity_quer().idx() == 3);  // quer(0) solves 0+0+x+2 = 0
  REQUIRE(r.identity_inverse().size() == 1);  // n - 2
  CHECK(r.identity_inverse()[0].idx() == 3);
  // g * h = mu[g, quer(e), h] = g + 3 + h + 2 = g + h mod 5
  REQUIRE(r.cached());
  for (Idx g = 0; g < 5; ++g) {
    for (Idx h = 0; h < 5; ++h) {
      CHECK(r.star(Element::index(g), Element::index(h)).idx() == mod(g + h, 5));
      CHECK(r.star_table()[static_cast<std::size_t>(g * 5 + h)] == mod(g + h, 5));
    }
    CHECK(r.inverse(Element::index(g)).idx() == mod(-g, 5));
  }
}

TEST_CASE("retract construction fails loudly off the group class") {
  // q-addition is not associative; the identity laws break at the chosen e
  PolyadicSystem qa(ClosedForm{Family::qadd, 3, 1.0, false, 1e-9});
  CHECK_THROWS_AS(build_retract(qa, Element::real(1.0)), IdentityLawFailed);

  // subtraction mod 3: e = 0 is only a right identity
  CayleyTable t;
  t.n = 2;
  t.m = 3;
  for (Idx a = 0; a < 3; ++a)
    for (Idx b = 0; b < 3; ++b) t.entries.push_back(mod(a - b, 3));
  PolyadicSystem sub(std::move(t));
  CHECK_THROWS_AS(build_retract(sub, Element::index(0)), IdentityLawFailed);
}

TEST_CASE("deformed chain data at q = 3 over Z5") {
  PolyadicSystem sys(DerivedModular{5, 3, 2});
  ChainDecomposition d = build_chain(build_retract(sys, Element::index(0)), 3);
  CHECK(d.q() == 3);
  CHECK(d.ell_phi() == 2);
  CHECK(d.ell_e() == 6);
  CHECK(d.b().idx() == 2);  // 0^<6> = 13*0 + 12 mod 5
  CHECK(d.a().idx() == 3);  // phi(e)
  for (Idx g = 0; g < 5; ++g) {
    CHECK(d.phi(Element::index(g)).idx() == mod(g + 3, 5));
    // [[2]]_3 = 4 applications shift by 12 = 2 mod 5
    CHECK(d.iterate_phi(Element::index(g), 4).idx() == mod(g + 2, 5));
  }
  REQUIRE(d.exponent_tables().size() == 3);
  for (Idx g = 0; g < 5; ++g) {
    CHECK(d.exponent_tables()[0][static_cast<std::size_t>(g)] == g);
    CHECK(d.exponent_tables()[1][static_cast<std::size_t>(g)] == mod(g + 3, 5));
    CHECK(d.exponent_tables()[2][static_cast<std::size_t>(g)] == mod(g + 2, 5));
  }
  // M_3[g,h,u] = g * phi(h) * phi^4(u) * b reproduces mu
  for (Idx g = 0; g < 5; ++g)
    for (Idx h = 0; h < 5; ++h)
      for (Idx u = 0; u < 5; ++u) {
        Polyad args = {Element::index(g), Element::index(h), Element::index(u)};
        CHECK(d.chain_evaluate(args) == sys.evaluate(args));
      }
}

TEST_CASE("quasi-endomorphism laws of the deformed map") {
  PolyadicSystem sys(DerivedModular{5, 3, 2});
  ChainDecomposition d = build_chain(build_retract(sys, Element::index(0)), 3);
  CheckResult qe = check_quasi_endomorphism(d);
  CHECK(qe.pass);
  CHECK(qe.evidence == Evidence::exhaustive);
  CHECK(qe.checked == 25);
  CHECK(check_quasi_fixed_point(d).pass);
  CHECK(check_quasi_conjugation(d).pass);
}

TEST_CASE("classical chain at q = 1: automorphism, fixed points, conjugation") {
  PolyadicSystem sys(DerivedModular{5, 3, 2});
  ChainDecomposition d = build_chain(build_retract(sys, Element::index(0)), 1);
  CHECK(d.ell_phi() == 1);
  CHECK(d.ell_e() == 1);
  CHECK(d.b().idx() == 2);  // 0^<1> = 3*0 + 2
  for (Idx g = 0; g < 5; ++g) CHECK(d.phi(Element::index(g)).idx() == g);
  CHECK(d.a().idx() == 0);  // phi(e) = e: a true endomorphism
  CHECK(check_fixed_points(d, 3).pass);
  CHECK(check_conjugation(d, 3).pass);
  for (Idx g = 0; g < 5; ++g)
    for (Idx h = 0; h < 5; ++h)
      for (Idx u = 0; u < 5; ++u) {
        Polyad args = {Element::index(g), Element::index(h), Element::index(u)};
        CHECK(d.chain_evaluate(args) == sys.evaluate(args));
      }
}

TEST_CASE("invariance sweep over all admissible q up to 9") {
  PolyadicSystem sys(DerivedModular{5, 3, 2});
  InvarianceReport rep = verify_invariance(sys, Element::index(0), 9);
  CHECK(rep.e.idx() == 0);
  REQUIRE(rep.entries.size() == 5);  // q = 1, 3, 5, 7, 9
  std::vector<Idx> qs, bs;
  for (const auto& entry : rep.entries) {
    CHECK_FALSE(entry.skipped_entry());
    CHECK(entry.result.pass);
    CHECK(entry.result.checked == 125);
    REQUIRE(entry.b.has_value());
    qs.push_back(entry.q.q);
    bs.push_back(entry.b->idx());
  }
  CHECK(qs == std::vector<Idx>{1, 3, 5, 7, 9});
  // b_q = e^<ell_e(q)> = 2*ell_e mod 5 with ell_e = 1, 6, 15, 28, 45
  CHECK(bs == std::vector<Idx>{2, 2, 0, 1, 0});
  CHECK(rep.all_pass());
  CHECK(rep.total_checked() == 625);
}

TEST_CASE("invariance across every identity choice and several moduli") {
  for (Idx m : {3, 4, 6})
    for (Idx c = 0; c < m; ++c) {
      PolyadicSystem sys(DerivedModular{m, 3, c});
      for (Idx e = 0; e < m; ++e) {
        InvarianceReport rep = verify_invariance(sys, Element::index(e), 5);
        CHECK(rep.all_pass());
      }
    }
}

TEST_CASE("q-product chain against its closed-form references") {
  PolyadicSystem sys(ClosedForm{Family::qprod, 3, 0.5, false, 1e-9});
  Element e = Element::real(2.0);
  BinaryRetract r = build_retract(sys, e);
  // quer(2) = (3 - sqrt 2)^2
  CHECK(r.identity_quer().real_value() ==
        doctest::Approx(std::pow(3.0 - std::sqrt(2.0), 2.0)).epsilon(1e-9));
  const double gs[] = {1.2, 1.7, 2.3, 2.8};
  for (double g : gs)
    for (double t : gs)
      CHECK(r.star(Element::real(g), Element::real(t)).real_value() ==
            doctest::Approx(qprod_star_reference(0.5, 2.0, g, t)).epsilon(1e-9));

  ChainDecomposition d3 = build_chain(r, 3);
  CHECK(d3.b().real_value() == doctest::Approx(qprod_b3_reference(0.5, 2.0)).epsilon(1e-9));
  CHECK(d3.b().real_value() == doctest::Approx(0.148052809392).epsilon(1e-9));
  for (double g : gs) {
    CHECK(d3.phi(Element::real(g)).real_value() ==
          doctest::Approx(qprod_phi3_reference(0.5, 2.0, g)).epsilon(1e-9));
    CHECK(d3.iterate_phi(Element::real(g), 3).real_value() ==
          doctest::Approx(qprod_phi3_reference(0.5, 2.0, g, 3)).epsilon(1e-9));
  }
  // chain reproduces mu on points whose brackets stay positive
  Polyad args = {Element::real(2.0), Element::real(2.4), Element::real(2.9)};
  CHECK(sys.equal(d3.chain_evaluate(args), sys.evaluate(args)));

  ChainDecomposition d1 = build_chain(r, 1);
  CHECK(d1.b().real_value() == doctest::Approx(1.54415587728).epsilon(1e-9));
  CHECK(sys.equal(d1.chain_evaluate(args), sys.evaluate(args)));
}

TEST_CASE("copula chain: involutive automorphism and chain invariance") {
  PolyadicSystem sys(ClosedForm{Family::copula, 3, 0.0, false, 1e-9});
  BinaryRetract r = build_retract(sys, Element::real(0.5));
  CHECK(r.identity_quer().real_value() == doctest::Approx(0.5).epsilon(1e-12));  // self-quer
  ChainDecomposition d = build_chain(r, 1);
  CHECK(d.phi(Element::real(0.3)).real_value() == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(d.phi(Element::real(0.3)).real_value() ==
        doctest::Approx(copula_phi_reference(0.5, 0.3)).epsilon(1e-12));
  for (double g : {0.1, 0.25, 0.4, 0.55, 0.8, 0.95}) {
    // phi is an involution
    CHECK(d.iterate_phi(Element::real(g), 2).real_value() == doctest::Approx(g).epsilon(1e-9));
    CHECK(d.phi(Element::real(g)).real_value() ==
          doctest::Approx(copula_phi_reference(0.5, g)).epsilon(1e-12));
  }
  InvarianceReport rep = verify_invariance(sys, Element::real(0.5), 3);
  REQUIRE(rep.entries.size() == 2);
  CHECK(rep.all_pass());
}

TEST_CASE("reverse construction rebuilds the derived ternary group") {
  PolyadicSystem built =
      reverse_construct(cyclic_addition(5), identity_perm(5), 2, 3);
  PolyadicSystem expect(DerivedModular{5, 3, 2});
  CHECK(built.arity() == 3);
  CHECK(built.order() == 5);
  for (Idx g = 0; g < 5; ++g)
    for (Idx h = 0; h < 5; ++h)
      for (Idx u = 0; u < 5; ++u) {
        Polyad args = {Element::index(g), Element::index(h), Element::index(u)};
        CHECK(built.evaluate(args) == expect.evaluate(args));
      }
}

TEST_CASE("reverse construction with a genuine automorphism") {
  // phi(g) = 2g on Z5 has order 4; with b = 0, phi^{n-1} = conjugation by b
  // requires phi^{n-1} = id, so n - 1 must be a multiple of 4: n = 5 works.
  std::vector<Idx> phi = {0, 2, 4, 1, 3};
  PolyadicSystem built = reverse_construct(cyclic_addition(5), phi, 0, 5);
  CHECK(built.arity() == 5);
  // mu[g] = g1 + 2 g2 + 4 g3 + 3 g4 + g5 mod 5
  Polyad args = {Element::index(1), Element::index(1), Element::index(1),
                 Element::index(1), Element::index(1)};
  CHECK(built.evaluate(args).idx() == mod(1 + 2 + 4 + 3 + 1, 5));
  ClassificationReport rep = classify(built);
  CHECK(rep.group.pass);
}

TEST_CASE("reverse construction hypothesis failures carry witnesses") {
  // (b1): doubling on Z7 squares to 4g != g, but conjugation in an abelian
  // group is the identity
  std::vector<Idx> doubling = {0, 2, 4, 6, 1, 3, 5};
  CHECK_THROWS_AS(reverse_construct(cyclic_addition(7), doubling, 0, 3),
                  HypothesisFailed);
  // (b2): negation on Z5 is an involution, but phi(b) != b for b = 1
  std::vector<Idx> negation = {0, 4, 3, 2, 1};
  CHECK_THROWS_AS(reverse_construct(cyclic_addition(5), negation, 1, 3),
                  HypothesisFailed);
  // non-bijective map
  std::vector<Idx> collapse = {0, 0, 1, 2, 3};
  CHECK_THROWS_AS(reverse_construct(cyclic_addition(5), collapse, 0, 3),
                  InvalidParams);
  // binary table that is not a group
  CayleyTable sub;
  sub.n = 2;
  sub.m = 3;
  for (Idx a = 0; a < 3; ++a)
    for (Idx b = 0; b < 3; ++b) sub.entries.push_back(mod(a - b, 3));
  CHECK_THROWS_AS(reverse_construct(sub, identity_perm(3), 0, 3), NotAGroup);
}

TEST_CASE("extended homotopy maps") {
  PolyadicSystem sys(DerivedModular{5, 3, 2});
  ChainDecomposition d = build_chain(build_retract(sys, Element::index(0)), 3);
  ExtendedHomotopyMaps maps(std::move(d));
  CHECK(maps.count() == 4);
  for (Idx g = 0; g < 5; ++g) {
    CHECK(maps.apply(1, Element::index(g)).idx() == g);
    CHECK(maps.apply(2, Element::index(g)).idx() == mod(g + 3, 5));
    CHECK(maps.apply(3, Element::index(g)).idx() == mod(g + 2, 5));
    CHECK(maps.apply(4, Element::index(g)).idx() == mod(3 * g + 2, 5));  // g^<6>
  }
  // psi_{n+1}(e) is the distinguished element
  CHECK(maps.apply(4, Element::index(0)) == maps.decomposition().b());
  CheckResult v = maps.verify();
  CHECK(v.pass);
  CHECK(v.checked == 125);
  CHECK_THROWS_AS(maps.apply(0, Element::index(1)), InvalidParams);
  CHECK_THROWS_AS(maps.apply(5, Element::index(1)), InvalidParams);
}

TEST_CASE("inadmissible q is rejected") {
  PolyadicSystem sys(DerivedModular{5, 3, 2});
  BinaryRetract r = build_retract(sys, Element::index(0));
  CHECK_THROWS_AS(build_chain(r, 2), QMismatch);
  CHECK_THROWS_AS(build_chain(r, 0), QMismatch);
  CHECK_THROWS_AS(build_chain(r, -1), QMismatch);
}
