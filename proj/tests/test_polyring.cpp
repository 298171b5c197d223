#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace testsupport;

namespace {

const Field* Q = Field::rationals();

Poly P(const char* s, const Field* F = Field::rationals()) { return parse_poly(s, F); }

std::vector<Scalar> rand_point(const Field* F, Rng& g, int n = 3) {
  std::vector<Scalar> pt;
  for (int i = 0; i < n; ++i) pt.push_back(rand_scalar(F, g, -5, 5));
  return pt;
}

WeightVector w(std::initializer_list<const char*> xs) { return WeightVector{qns(xs)}; }

int mult_sum(const BinaryRoots& r) {
  int s = 0;
  for (const auto& x : r.roots) s += x.mult;
  return s;
}

}  // namespace

TEST_CASE("products") {
  CHECK(P("y") * P("x+z^2") == P("x*y+y*z^2"));
  const Field* F2 = Field::finite(2);
  CHECK(P("x-y", F2).pow(3) == P("x^3+x^2*y+x*y^2+y^3", F2));
  CHECK(P("z*x+y^2").pow(2) == P("z^2*x^2+2*z*x*y^2+y^4"));
  CHECK(P("z*x+y^2", F2).pow(2) == P("z^2*x^2+y^4", F2));
}

TEST_CASE("substitution") {
  CHECK(P("x+y*z").subst({P("x"), P("y"), P("z")}) == P("x+y*z"));
  CHECK(P("x*y+z").subst({P("y"), P("x"), P("z")}) == P("x*y+z"));
  CHECK(P("x+y^2").subst({P("z+x*y"), P("y+x"), P("x")}) == P("z+x*y+(y+x)^2"));
}

TEST_CASE("homogeneous parts") {
  CHECK(P("x*y^2+y*(z^2+3*z+5)+z").homogeneous_part(3) == P("x*y^2+y*z^2"));
  CHECK(P("x+y*z+z*x^2").homogeneous_part(2) == P("y*z"));
  CHECK(P("5").homogeneous_part(0) == P("5"));
  Rng g(10);
  for (int i = 0; i < 200; ++i) {
    Poly p = rand_poly(Q, g, 4);
    Poly sum(Q, 3);
    std::size_t terms = 0;
    for (int d = 0; d <= 4; ++d) {
      Poly h = p.homogeneous_part(d);
      for (const auto& t : h.terms()) CHECK(Monomial{t.e}.degree() == static_cast<unsigned>(d));
      terms += h.size();
      sum += h;
    }
    CHECK(sum == p);
    CHECK(terms == p.size());  // disjoint supports
  }
}

TEST_CASE("weighted degrees") {
  WeightVector mu = w({"1", "3", "1+sqrt(2)"});
  CHECK(*mu_degree(P("x*z^2"), mu) == QuadNum::parse("3+2*sqrt(2)"));
  CHECK(*mu_degree(P("y*z"), mu) == QuadNum::parse("4+sqrt(2)"));
  CHECK_FALSE(mu_degree(Poly(Q, 3), mu).has_value());
  CHECK(mu_part(P("x+y*z+x*z^2"), mu, QuadNum::parse("3+2*sqrt(2)")) == P("x*z^2"));
  CHECK(mu_part(parse_poly("x+y", Q, 2), WeightVector{{1, 1}}, 2).is_zero());
}

TEST_CASE("weighted degree properties") {
  Rng g(11);
  for (int i = 0; i < 300; ++i) {
    Poly p = rand_poly(Q, g, 3), q = rand_poly(Q, g, 3);
    if (p.is_zero() || q.is_zero()) continue;
    WeightVector ones{{1, 1, 1}};
    CHECK(*mu_degree(p, ones) == QuadNum(p.degree()));
    WeightVector mu{{QuadNum(1 + static_cast<long>(g() % 4)), QuadNum::parse("sqrt(3)"), QuadNum(0, 1, 2, 3) + 1}};
    CHECK(mu.positive());
    auto dp = *mu_degree(p, mu);
    CHECK(*mu_degree(p * q, mu) == dp + *mu_degree(q, mu));
    CHECK_FALSE(mu_part(p, mu, dp).is_zero());
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  Rng g(12);
  for (const Field* F : {Q, Field::finite(5), Field::finite(2, 2)}) {
    for (int i = 0; i < 200; ++i) {
      Poly p = rand_poly(F, g, 3), q = rand_poly(F, g, 3);
      auto pt = rand_point(F, g);
      CHECK((p * q).eval(pt) == p.eval(pt) * q.eval(pt));
      CHECK((p + q).eval(pt) == p.eval(pt) + q.eval(pt));
      std::vector<Poly> im = {rand_poly(F, g, 2), rand_poly(F, g, 2), rand_poly(F, g, 2)};
      std::vector<Scalar> ipt = {im[0].eval(pt), im[1].eval(pt), im[2].eval(pt)};
      CHECK(p.subst(im).eval(pt) == p.eval(ipt));
    }
  }
}

TEST_CASE("partial derivatives") {
  CHECK(P("x^2", Field::finite(2)).derivative(0).is_zero());
  CHECK(P("x*y^2+y*z^2+z").derivative(1) == P("2*x*y+z^2"));
  CHECK(P("7").derivative(2).is_zero());
  Rng g(13);
  for (int i = 0; i < 200; ++i) {
    Poly p = rand_poly(Q, g, 3), q = rand_poly(Q, g, 3);
    for (int v = 0; v < 3; ++v) CHECK((p * q).derivative(v) == p.derivative(v) * q + p * q.derivative(v));
  }
}

TEST_CASE("exact division and gcd") {
  Rng g(14);
  for (int i = 0; i < 100; ++i) {
    Poly a = rand_poly(Q, g, 2), b = rand_poly(Q, g, 2), c = rand_poly(Q, g, 2);
    if (c.is_zero() || a.is_zero()) continue;
    auto d = divide_exact(a * c, c);
    REQUIRE(d);
    CHECK(*d == a);
    Poly h = poly_gcd(a * c, b * c);
    if (!b.is_zero()) CHECK(divide_exact(h, c.monic()).has_value());
  }
  CHECK_FALSE(divide_exact(P("x^2+1"), P("x+1")).has_value());
}

TEST_CASE("binary form roots") {
  BinaryRoots r = binary_form_roots(P("y*z^2"), 1, 2);
  REQUIRE(r.roots.size() == 2);
  CHECK(r.roots[0].a.is_zero());
  CHECK(r.roots[0].mult == 1);
  CHECK(r.roots[1].b.is_zero());
  CHECK(r.roots[1].mult == 2);

  BinaryRoots c = binary_form_roots(P("y^3"), 1, 2);
  REQUIRE(c.roots.size() == 1);
  CHECK(c.roots[0].mult == 3);
  CHECK(c.roots[0].a.is_zero());

  const Field* F2 = Field::finite(2);
  Poly f = P("y^2+y*z+z^2", F2);
  CHECK(rational_binary_roots(f, 1, 2).roots.empty());
  BinaryRoots e = binary_form_roots(f, 1, 2);
  CHECK(e.field->order() == 4);
  REQUIRE(e.roots.size() == 2);
  CHECK(mult_sum(e) == 2);
  for (const auto& x : e.roots) {
    CHECK(x.b.is_one());
    CHECK(f.embed(e.field).eval({Scalar(e.field, 0L), x.a, x.b}).is_zero());
  }
  CHECK_THROWS_AS(binary_form_roots(P("y^2+z^2"), 1, 2), FieldExtensionNeeded);
}

TEST_CASE("root multiplicities sum to the degree") {
  Rng g(15);
  const Field* F5 = Field::finite(5);
  for (int i = 0; i < 200; ++i) {
    int k = 1 + static_cast<int>(g() % 3);
    Poly f = Poly::constant(rand_nonzero(F5, g), 3);
    for (int j = 0; j < k; ++j) f *= rand_form(F5, g, 1, 6u);
    if (f.is_zero()) continue;
    BinaryRoots r = binary_form_roots(f, 1, 2);
    CHECK(mult_sum(r) == k);
    // irreducible quadratic or cubic factors force an extension
    Poly q = rand_form(F5, g, 2, 6u) * rand_form(F5, g, 1, 6u);
    if (q.is_zero()) continue;
    BinaryRoots s = binary_form_roots(q, 1, 2);
    CHECK(mult_sum(s) == 3);
  }
}

TEST_CASE("parse inverts str") {
  Rng g(16);
  for (const Field* F : {Q, Field::finite(3), Field::finite(2, 3)}) {
    for (int i = 0; i < 200; ++i) {
      Poly p = rand_poly(F, g, 3);
      if (F == Q) p = p.scaled(Scalar(Q, mpq_class(1 + static_cast<long>(g() % 5), 1 + static_cast<long>(g() % 7))));
      CHECK(parse_poly(p.str(), F) == p);
    }
  }
}

TEST_CASE("parse errors carry offsets") {
  try {
    parse_poly_tuple("(x+, y, z)", Q);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.offset == 3);
  }
  CHECK_THROWS_AS(parse_poly("x y", Q), ParseError);
  CHECK_THROWS_AS(parse_poly("g", Q), ParseError);
  CHECK(parse_poly("g^2+g+1", Field::finite(2, 2)).is_zero());
}
