#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace testsupport;

namespace {

const Field* Q = Field::rationals();

Poly P(const char* s, const Field* F = Field::rationals()) { return parse_poly(s, F); }

bool has_point(const PivotSet& ps, long a, long b, long c) {
  PPoint want = {Scalar(ps.field, a), Scalar(ps.field, b), Scalar(ps.field, c)};
  return std::find(ps.points.begin(), ps.points.end(), want) != ps.points.end();
}

// f o witness reproduces the normal form and the witness is invertible.
void check_round_trip(const Poly& f, const PlaneVerdict& v) {
  REQUIRE(v.is_plane);
  CHECK(mat_rank(v.witness.A) == 3);
  CHECK(affine_subst(f.embed(v.field), v.witness.A, v.witness.t) == v.normal_form);
  AffineMap inv = invert_affine(v.witness);
  CHECK(affine_subst(v.normal_form, inv.A, inv.t) == f.embed(v.field));
}

Poly transform(const Poly& f, const AffineMap& a) { return affine_subst(f, a.A, a.t); }

}  // namespace

TEST_CASE("pivot points") {
  CHECK(has_point(pivot_points(P("x*y^2+y*z^2+z")), 1, 0, 0));
  CHECK(has_point(pivot_points(P("x+y^2+z^3")), 1, 0, 0));
  CHECK(pivot_points(P("x^3+y^3+z^3-1")).points.empty());
  CHECK(pivot_points(P("x^3+y^3+z^3-1", Field::finite(5))).points.empty());
  CHECK_THROWS_AS(pivot_points(P("x^4+y")), DegreeTooHigh);
}

TEST_CASE("standard xp+q form") {
  for (const char* s : {"y+x^2+z^3", "x*(y+z^2)+z", "x*y^2+y*z^2+z", "z^2*y+x^3+y"}) {
    Poly f = P(s);
    StandardXpq r = to_standard_xpq(f);
    CHECK(r.p.degree_in(0) <= 0);
    CHECK(r.q.degree_in(0) <= 0);
    Poly x = X(r.p.field());
    CHECK(transform(f.embed(r.p.field()), r.witness) == x * r.p + r.q);
    CHECK(std::max(r.p.degree() + 1, r.q.degree()) == f.degree());
  }
  StandardXpq b = to_standard_xpq(P("x*(y+z^2)+z"));
  CHECK(b.p == P("y+z^2"));
  CHECK(b.q == P("z"));
  StandardXpq c = to_standard_xpq(P("x*y^2+y*z^2+z"));
  CHECK(c.p == P("y^2"));
  CHECK(c.q == P("y*z^2+z"));
  CHECK(b.witness.to_polymap() == PolyMap::identity(Q, 3));
  CHECK(to_standard_xpq(P("y+x^2+z^3")).p.is_constant());
  CHECK_THROWS_AS(to_standard_xpq(P("x^3+y^3+z^3-1")), NoPivot);
}

TEST_CASE("fibre criterion") {
  RussellResult a = russell_criterion(P("y"), P("z"));
  CHECK(a.yes);
  CHECK(a.a.is_zero());
  CHECK(a.r1 == P("1"));
  CHECK(a.r0.is_zero());
  RussellResult b = russell_criterion(P("y^2"), P("y*z^2+z"));
  CHECK(b.yes);
  CHECK(b.a == P("z^2"));
  CHECK(b.r1 == P("1"));
  CHECK(b.r0.is_zero());
  const Field* F3 = Field::finite(3);
  CHECK_FALSE(russell_criterion(P("y^3", F3), P("y+z^3", F3)).yes);
  CHECK_FALSE(russell_criterion(P("y^2-1"), P("z^2")).yes);
}

TEST_CASE("fibre criterion decompositions re-expand") {
  Rng g(30);
  Poly y = Y(Q), z = Z(Q), one = Poly::constant(Q, 3, 1);
  int yes = 0;
  for (int i = 0; i < 200; ++i) {
    long c = 1 + static_cast<long>(g() % 3);
    Poly rad = y * (y - one.scaled(Scalar(Q, c)));
    Poly p = y.pow(1 + g() % 2) * (y - one.scaled(Scalar(Q, c)));
    Poly q;
    if (i % 2) {
      q = rand_poly(Q, g, 3, 6u);
    } else {
      // built to pass: r1 = u*y + v is nonzero at both roots of p
      Poly r1;
      do r1 = y.scaled(rand_scalar(Q, g)) + Poly::constant(rand_scalar(Q, g), 3);
      while (r1.eval({Scalar(Q, 0L), Scalar(Q, 0L), Scalar(Q, 0L)}).is_zero() ||
             r1.eval({Scalar(Q, 0L), Scalar(Q, c), Scalar(Q, 0L)}).is_zero());
      q = rand_poly(Q, g, 1, 6u) * rad + z * r1 + rand_poly(Q, g, 1, 2u);
    }
    RussellResult r = russell_criterion(p, q);
    if (i % 2 == 0) CHECK(r.yes);
    if (!r.yes) continue;
    ++yes;
    CHECK(r.a * rad + z * r.r1 + r.r0 == q);
    CHECK(r.r1.degree_in(1) < 2);
    CHECK(r.r0.degree_in(1) < 2);
    CHECK(r.r1.degree_in(2) <= 0);
    CHECK(r.r0.degree_in(2) <= 0);
  }
  CHECK(yes >= 100);
}

TEST_CASE("plane verdict examples") {
  PlaneVerdict b = is_plane_deg3(P("x*(y+z^2)+z"));
  CHECK(b.is_plane);
  CHECK(b.kase == PlaneCase::B);
  check_round_trip(P("x*(y+z^2)+z"), b);

  PlaneVerdict r = is_plane_deg3(P("x*(z^2-2*z-3)"));
  CHECK_FALSE(r.is_plane);
  CHECK(r.reason == "reducible");
  CHECK_FALSE(is_plane_deg3(P("x*(z^2+1)")).is_plane);

  PlaneVerdict a = is_plane_deg3(P("x+y^2+z^3"));
  CHECK(a.is_plane);
  CHECK(a.kase == PlaneCase::A);
  check_round_trip(P("x+y^2+z^3"), a);

  CHECK_FALSE(is_plane_deg3(P("y+z^3+y^3*x", Field::finite(3))).is_plane);
  CHECK_FALSE(is_plane_deg3(P("x*(x*y+z^2)+2*x-y+5")).is_plane);
  CHECK_FALSE(is_plane_deg3(P("x^2+y^2+z^2-1")).is_plane);
  CHECK_FALSE(is_plane_deg3(P("x*y-1")).is_plane);
  CHECK(is_plane_deg3(P("x*y^2+y*(z^2+2*z-7)+z")).kase == PlaneCase::C);
}

TEST_CASE("witnesses round trip on disguised normal forms") {
  Rng g(31);
  for (const Field* F : {Q, Field::finite(5), Field::finite(2)}) {
    Poly x = X(F), y = Y(F), z = Z(F);
    for (int i = 0; i < 40; ++i) {
      Poly base;
      switch (i % 3) {
        case 0: base = x + rand_form(F, g, 2, 6u) + rand_form(F, g, 3, 6u); break;
        case 1: base = x * y + y * (z * z + (y * z).scaled(rand_scalar(F, g))) + z; break;
        default:
          base = x * y * y + y * (z * z + z.scaled(rand_scalar(F, g)) + Poly::constant(rand_scalar(F, g), 3)) + z;
      }
      Poly f = transform(base, rand_affine(F, g, 3)).scaled(rand_nonzero(F, g));
      PlaneVerdict v = is_plane_deg3(f);
      INFO(f.str());
      check_round_trip(f, v);
    }
  }
}

TEST_CASE("quadratic variables reduce to x + quadratic form") {
  Rng g(32);
  for (const Field* F : {Q, Field::finite(3)}) {
    Poly x = X(F), y = Y(F), z = Z(F);
    for (int i = 0; i < 40; ++i) {
      Poly base = x + (i % 2 ? y * y : y * z);
      Poly f = transform(base, rand_affine(F, g, 3));
      PlaneVerdict v = is_plane_deg3(f);
      REQUIRE(v.is_plane);
      CHECK(v.kase == PlaneCase::A);
      Poly r = v.normal_form - X(v.field);
      CHECK(r.homogeneous_part(2) == r);
      CHECK_FALSE(r.is_zero());
      CHECK(r.degree_in(0) <= 0);
    }
  }
}

TEST_CASE("negative verdicts survive affine changes") {
  Rng g(33);
  std::vector<Poly> no = {P("x*(z^2-2*z-3)"), P("x*(x*y+z^2)+2*x-y+5"), P("x^2+y^2+z^2-1"), P("x*y-1"),
                          P("x^3+y^3+z^3-1"), P("x*y*z-1"), P("x^2*y+z^2-1")};
  for (const auto& f : no) {
    REQUIRE_FALSE(is_plane_deg3(f).is_plane);
    for (int i = 0; i < 10; ++i) {
      Poly h = transform(f, rand_affine(Q, g, 3));
      INFO(h.str());
      CHECK_FALSE(is_plane_deg3(h).is_plane);
    }
  }
}

TEST_CASE("first components of tame automorphisms over F5 are planes") {
  Rng g(34);
  const Field* F5 = Field::finite(5);
  for (int i = 0; i < 100; ++i) {
    PolyMap psi = rand_tame_deg3(F5, g);
    INFO(psi.str());
    check_round_trip(psi[0], is_plane_deg3(psi[0]));
  }
}

TEST_CASE("variable completion") {
  Rng g(35);
  for (const char* s : {"x+y^2+z^3", "x*(y+z^2)+z", "x*y^2+y*(z^2+z+1)+z", "y+x^2*z+x^3"}) {
    Poly f = P(s);
    VariableWitness w = variable_witness(f);
    const Field* F = w.map.field();
    CHECK(w.map[0] == f.embed(F));
    CHECK(compose(w.map, w.inverse) == PolyMap::identity(F, 3));
    CHECK(compose(w.inverse, w.map) == PolyMap::identity(F, 3));
    if (w.word) CHECK(eval_tame_word(*w.word) == w.map);
  }
  CHECK(variable_witness(P("x+y^2+z^3")).map == PolyMap::parse("(x+y^2+z^3, y, z)", Q));
  CHECK_THROWS_AS(variable_witness(P("x*y-1")), std::invalid_argument);
}
