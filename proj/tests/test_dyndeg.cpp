#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace testsupport;

namespace {

const Field* Q = Field::rationals();

PolyMap M(const char* s, const Field* F = Field::rationals()) { return PolyMap::parse(s, F); }
QuadNum N(const char* s) { return QuadNum::parse(s); }

PolyMap conjugate(const PolyMap& f, const AffineMap& a) {
  return compose(a.to_polymap(), compose(f, invert_affine(a).to_polymap()));
}

bool in_lambda3(const QuadNum& v) {
  auto all = lambda3();
  return std::find(all.begin(), all.end(), v) != all.end();
}

}  // namespace

TEST_CASE("weighted degree of a map") {
  QuadNum t = N("1+sqrt(2)");
  PolyMap f = M("(z, y+x*z+z^3, x+y*z+x*z^2)");
  WeightVector mu{{1, 3, t}};
  CHECK(*mu_degree_of_map(f, mu) == t);
  CHECK(mu_leading_part_of_map(f, mu) == M("(z, z^3, x*z^2)"));
  CHECK(*mu_degree_of_map(PolyMap::identity(Q, 3), WeightVector{{2, N("sqrt(3)"), 7}}) == QuadNum(1));
  QuadNum s = N("(3+sqrt(5))/2");
  CHECK(*mu_degree_of_map(M("(y+x*z, z, x+y*z+x*z^2)"), WeightVector{{1, s - 2, s - 1}}) == s);
  CHECK(mu_leading_part_of_map(M("(x+2*y+1, z, y)"), WeightVector{{1, 1, 1}}) == M("(x+2*y, z, y)"));
  CHECK(*mu_degree_of_map(M("(x, y*z, z)"), WeightVector{{1, 1, 0}}) == QuadNum(1));
  CHECK_FALSE(mu_degree_of_map(M("(x, y, x+z)"), WeightVector{{1, 1, 0}}).has_value());
}

TEST_CASE("map degree is invariant under scaling the weights") {
  Rng g(50);
  for (int i = 0; i < 100; ++i) {
    PolyMap f = rand_tame_deg3(Q, g);
    WeightVector mu{{QuadNum(1 + static_cast<long>(g() % 3)), N("1+sqrt(5)"), N("(1+sqrt(5))/2")}};
    QuadNum s(mpq_class(1 + static_cast<long>(g() % 7), 1 + static_cast<long>(g() % 5)));
    WeightVector smu{{s * mu.w[0], s * mu.w[1], s * mu.w[2]}};
    CHECK(mu_degree_of_map(f, smu) == mu_degree_of_map(f, mu));
    CHECK(mu_leading_part_of_map(f, smu) == mu_leading_part_of_map(f, mu));
  }
}

TEST_CASE("certificates") {
  QuadNum t = N("1+sqrt(2)");
  CertifyResult m = certify(M("(z, z^3, x*z^2)"), WeightVector{{1, 3, t}});
  REQUIRE(m.certificate);
  CHECK(m.certificate->evidence == DynDegCertificate::Evidence::MonomialMap);
  CHECK(m.certificate->theta == t);
  CHECK(m.certificate->exponent_matrix == std::vector<std::vector<int>>{{0, 0, 1}, {0, 0, 3}, {1, 0, 2}});
  CHECK(m.certificate->proven());

  CertifyResult d = certify(M("(x^2+z, z, x^2*z+z^2)"), WeightVector{{1, 1, 2}});
  REQUIRE(d.certificate);
  CHECK(d.certificate->evidence == DynDegCertificate::Evidence::DominantLeadingPart);
  CHECK(d.certificate->theta == QuadNum(2));
  CHECK(d.certificate->projection == std::vector<int>{0, 2});

  CertifyResult tri = certify(M("(x+y, y+z, z)"), WeightVector{{1, 1, 1}});
  CHECK_FALSE(tri.certificate);
  CHECK_FALSE(tri.reason.empty());

  // in characteristic 2 dominance is not used
  CertifyResult p = certify(M("(x^2+z, z, x^2*z+z^2)", Field::finite(2)), WeightVector{{1, 1, 2}}, 6);
  if (p.certificate) CHECK(p.certificate->evidence == DynDegCertificate::Evidence::BoundedIteration);
}

TEST_CASE("the leading part of a certified map is its weighted top slice") {
  for (const auto& row : example_table()) {
    PolyMap f = M(row.map);
    LambdaValue v = lambda_deg3(f);
    if (!v.certificate) continue;
    const DynDegCertificate& c = *v.certificate;
    CHECK(*mu_degree_of_map(v.analysed, c.mu) == c.theta);
    CHECK(mu_leading_part_of_map(v.analysed, c.mu) == c.leading_part);
    if (c.evidence == DynDegCertificate::Evidence::MonomialMap) {
      REQUIRE(c.exponent_matrix.size() == 3);
      for (int i = 0; i < 3; ++i) {
        REQUIRE(c.leading_part[i].size() == 1);
        const Exps& e = c.leading_part[i].leading().e;
        for (int j = 0; j < 3; ++j) CHECK(c.exponent_matrix[i][j] == static_cast<int>(e[j]));
      }
    }
  }
}

TEST_CASE("shift maps") {
  CHECK(lambda_shift(1, 1, 1) == N("(1+sqrt(5))/2"));
  CHECK(lambda_shift(0, 1, 2) == N("sqrt(2)"));
  CHECK(lambda_shift(0, 3, 3) == QuadNum(3));
  CHECK(lambda_shift(2, 0, 0) == QuadNum(2));
  CHECK_THROWS_AS(lambda_shift(0, 0, 3), ZeroValue);
  CHECK(shift_map(Q, 1, 2, 3) == M("(z+x*y^2, y+x^3, x)"));
  for (unsigned a = 0; a <= 3; ++a)
    for (unsigned b = 0; a + b <= 3; ++b)
      for (unsigned c = 1; c <= 3; ++c) {
        if (a == 0 && b == 0) continue;
        QuadNum l = lambda_shift(a, b, c);
        CHECK(l * l == QuadNum(static_cast<long>(a)) * l + QuadNum(static_cast<long>(b * c)));
        CHECK(l.sign() > 0);
        LambdaValue v = lambda_deg3(shift_map(Q, a, b, c));
        CHECK(v.value == l);
        // affine shift maps are answered before the formula is consulted
        if (shift_map(Q, a, b, c).degree() > 1) CHECK(v.provenance == LambdaValue::Provenance::ClosedFormula);
      }
}

TEST_CASE("dynamical degree examples") {
  CHECK(lambda_deg3(M("(z, y+x*z+z^3, x+y*z+x*z^2)")).value == N("1+sqrt(2)"));
  CHECK(lambda_deg3(M("(y+x*z, z, x+y*z+x*z^2)")).value == N("(3+sqrt(5))/2"));
  CHECK(lambda_deg3(M("(x+y*z+x^2*z, y+x^2, z)")).value == QuadNum(2));
  CHECK(lambda_deg3(M("(2*x+y, z-x, y)")).value == QuadNum(1));
  CHECK(lambda_deg3(M("(x+y^2+z^3, y+z^2, z)")).value == QuadNum(1));
}

TEST_CASE("table rows agree over several fields") {
  for (const Field* F : {Q, Field::finite(5), Field::finite(7)})
    for (const auto& row : example_table()) {
      INFO(row.map << " over " << F->name());
      LambdaValue v = lambda_deg3(M(row.map, F));
      CHECK(v.provenance != LambdaValue::Provenance::UpperBoundOnly);
      CHECK(v.value == N(row.lambda));
    }
}

TEST_CASE("dynamical degree is a conjugation invariant") {
  Rng g(51);
  for (const auto& row : example_table()) {
    PolyMap f = M(row.map);
    for (int i = 0; i < 3; ++i) {
      PolyMap h = conjugate(f, rand_affine(Q, g, 3));
      INFO(h.str());
      LambdaValue v = lambda_deg3(h);
      CHECK(v.provenance != LambdaValue::Provenance::UpperBoundOnly);
      CHECK(v.value == N(row.lambda));
    }
  }
}

TEST_CASE("decided values lie in the cubic set and under the Fekete bound") {
  Rng g(52);
  int decided = 0;
  for (int i = 0; i < 30; ++i) {
    PolyMap f = rand_tame_deg3(Q, g);
    LambdaValue v = lambda_deg3(f, 4);
    INFO(f.str());
    if (v.provenance == LambdaValue::Provenance::UpperBoundOnly) continue;
    ++decided;
    CHECK(in_lambda3(v.value));
    try {
      Estimate e = estimate(f, 3);
      CHECK(QuadNum(e.fekete.hi) >= v.value);
    } catch (const BudgetExceeded&) {
    }
  }
  CHECK(decided >= 25);
}

TEST_CASE("certificates agree with the Fekete bound") {
  for (const auto& row : example_table()) {
    LambdaValue v = lambda_deg3(M(row.map));
    if (!v.certificate) continue;
    Estimate e = estimate(M(row.map), 8);
    INFO(row.map);
    CHECK(QuadNum(e.fekete.hi) >= v.certificate->theta);
  }
}

TEST_CASE("estimates") {
  Estimate id = estimate(PolyMap::identity(Q, 3), 5);
  CHECK(id.degrees == std::vector<int>{1, 1, 1, 1, 1});
  CHECK(id.fekete.hi == 1);
  CHECK(id.ratio == 1);

  QuadNum gold = N("(1+sqrt(5))/2");
  Estimate s = estimate(shift_map(Q, 1, 1, 1), 10);
  RationalInterval gi = enclose(gold, 1000000);
  CHECK(s.fekete.hi >= gi.lo);
  CHECK(s.fekete.hi <= gi.hi * mpq_class(105, 100));
  std::vector<int> head(s.degrees.begin(), s.degrees.begin() + 8);
  CHECK(head == iterate_degrees(shift_map(Q, 1, 1, 1), 8));

  Estimate e = estimate_from_degrees({3, 8, 21, 55});
  CHECK(e.ratio == mpq_class(55, 21));
  CHECK(e.fekete.hi * e.fekete.hi * e.fekete.hi * e.fekete.hi >= 55);  // minimum at r = 4
  CHECK(e.fekete_r == 4);
}

TEST_CASE("bracketed degrees match full expansion") {
  // small budget forces the degree bracket after a few exact iterates
  PolyMap f = M("(y+x*z, z, x+z*(y+x*z))");
  std::vector<int> exact = iterate_degrees(f, 5);
  Estimate e = estimate(f, 5, 200);
  CHECK(e.degrees == exact);
  CHECK(e.expanded < 5);
}

TEST_CASE("dynamical degree sets in low degree") {
  auto values = [](int d) {
    std::vector<QuadNum> v;
    for (const auto& e : enumerate_lambda_set(d, Q)) v.push_back(e.value);
    return v;
  };
  CHECK(values(1) == qns({"1"}));
  CHECK(values(2) == qns({"1", "sqrt(2)", "(1+sqrt(5))/2", "2"}));
  for (const auto& e : enumerate_lambda_set(2, Q)) {
    CHECK(e.representative.degree() == 2);
    CHECK(lambda_deg3(e.representative).value == e.value);
  }
}
