#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace testsupport;

namespace {

// 512-bit floating evaluation, independent of QuadNum arithmetic.
mpf_class approx512(const QuadNum& x) {
  mpf_class r(0, 512), d(x.radicand(), 512);
  r = (mpf_class(x.a(), 512) + mpf_class(x.b(), 512) * sqrt(d)) / mpf_class(x.c(), 512);
  return r;
}

const mpf_class kTol("1e-120", 512);

QuadNum rand_qn(Rng& g, long D) {
  auto r = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); };
  return QuadNum(r(-20, 20), r(-6, 6), r(1, 7), D);
}

// Reference multiplication in F_p[g]/(m) on digit vectors, low to high.
std::vector<std::uint64_t> ref_mul(const Field* F, std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  std::uint64_t p = F->characteristic();
  int k = F->degree();
  std::vector<std::uint64_t> prod(2 * k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  const auto& m = F->modulus();
  for (int d = 2 * k - 1; d >= k; --d) {
    std::uint64_t c = prod[d];
    if (!c) continue;
    for (int i = 0; i <= k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - c) * m[i]) % p;
  }
  prod.resize(k);
  return prod;
}

std::vector<std::uint64_t> digits(const Field* F, std::uint64_t v) {
  std::vector<std::uint64_t> d(F->degree());
  for (auto& x : d) x = v % F->characteristic(), v /= F->characteristic();
  return d;
}

std::uint64_t undigits(const Field* F, const std::vector<std::uint64_t>& d) {
  std::uint64_t v = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * F->characteristic() + *it;
  return v;
}

}  // namespace

TEST_CASE("quadratic number arithmetic examples") {
  auto q = [](const char* s) { return QuadNum::parse(s); };
  CHECK(qn_add(q("1+sqrt(2)"), q("1+sqrt(2)")) == q("2+2*sqrt(2)"));
  CHECK(qn_add(q("(1+sqrt(5))/2"), q("(1-sqrt(5))/2")) == QuadNum(1));
  CHECK(qn_add(q("(3+sqrt(5))/2"), QuadNum(0)) == q("(3+sqrt(5))/2"));
  CHECK(qn_mul(q("1+sqrt(2)"), q("1+sqrt(2)")) == q("3+2*sqrt(2)"));
  CHECK(qn_mul(q("(3+sqrt(5))/2"), q("(3+sqrt(5))/2")) == q("(7+3*sqrt(5))/2"));
  CHECK(qn_mul(q("(1+sqrt(17))/2"), q("(1+sqrt(17))/2")) == q("(9+sqrt(17))/2"));
  CHECK(qn_cmp(q("sqrt(2)"), q("(1+sqrt(5))/2")) == std::strong_ordering::less);
  CHECK(qn_cmp(QuadNum(3), q("1+sqrt(3)")) == std::strong_ordering::greater);
  CHECK(qn_cmp(QuadNum(2), QuadNum(2)) == std::strong_ordering::equal);
}

TEST_CASE("canonical form") {
  CHECK(QuadNum(2, 2, 4, 8) == QuadNum::parse("(1+2*sqrt(2))/2"));
  CHECK(QuadNum(3, 1, 1, 4) == QuadNum(5));
  CHECK(QuadNum(1, 0, -2, 7) == QuadNum(mpq_class(-1, 2)));
  CHECK(QuadNum::sqrt_of(12) == QuadNum(0, 2, 1, 3));
  CHECK(QuadNum::sqrt_of(9).is_integer());
  CHECK_THROWS_AS(QuadNum(0).inverse(), ZeroValue);
}

TEST_CASE("arithmetic agrees with a 512-bit evaluation") {
  Rng g(1);
  for (long D : {2L, 3L, 5L, 13L, 17L}) {
    for (int i = 0; i < 200; ++i) {
      QuadNum x = rand_qn(g, D), y = rand_qn(g, D);
      mpf_class fx = approx512(x), fy = approx512(y);
      CHECK(abs(approx512(x + y) - (fx + fy)) < kTol);
      CHECK(abs(approx512(x - y) - (fx - fy)) < kTol);
      CHECK(abs(approx512(x * y) - fx * fy) < kTol);
      if (y != QuadNum(0)) {
        CHECK(abs(approx512(x / y) - fx / fy) < kTol);
        CHECK(y * y.inverse() == QuadNum(1));
      }
      CHECK(approx512(x.conjugate()) == approx512(QuadNum(x.a(), -x.b(), x.c(), x.radicand())));
    }
  }
}

TEST_CASE("comparison agrees with a 512-bit evaluation, across fields") {
  Rng g(2);
  const long Ds[] = {2, 3, 5, 6, 13, 17};
  for (int i = 0; i < 2000; ++i) {
    QuadNum x = rand_qn(g, Ds[g() % 6]), y = rand_qn(g, Ds[g() % 6]);
    mpf_class diff = approx512(x) - approx512(y);
    auto c = qn_cmp(x, y);
    if (x == y) {
      CHECK(c == std::strong_ordering::equal);
    } else {
      // distinct values of this size differ far above the tolerance
      REQUIRE(abs(diff) > kTol);
      CHECK(c == (diff < 0 ? std::strong_ordering::less : std::strong_ordering::greater));
    }
  }
}

TEST_CASE("mixing two quadratic fields in arithmetic is refused") {
  CHECK_THROWS_AS(QuadNum::sqrt_of(2) + QuadNum::sqrt_of(3), MixedField);
  CHECK(QuadNum::sqrt_of(2) + QuadNum(1) == QuadNum::parse("1+sqrt(2)"));
}

TEST_CASE("each dynamical degree of a cubic automorphism satisfies its minimal polynomial") {
  // lambda^2 = p*lambda + q, hand-derived from the closed forms
  struct Row {
    const char* v;
    long p, q;
  };
  const Row rows[] = {{"sqrt(2)", 0, 2},          {"(1+sqrt(5))/2", 1, 1}, {"sqrt(3)", 0, 3},
                      {"(1+sqrt(13))/2", 1, 3},   {"1+sqrt(2)", 2, 1},     {"sqrt(6)", 0, 6},
                      {"(1+sqrt(17))/2", 1, 4},   {"1+sqrt(3)", 2, 2},     {"(3+sqrt(5))/2", 3, -1}};
  for (const auto& r : rows) {
    QuadNum l = QuadNum::parse(r.v);
    CHECK(qn_mul(l, l) == qn_add(qn_mul(QuadNum(r.p), l), QuadNum(r.q)));
    CHECK_FALSE(l.is_rational());
  }
  for (long n : {1L, 2L, 3L}) CHECK(QuadNum::parse(std::to_string(n)).is_integer());
  auto all = lambda3();
  CHECK(all.size() == 12);
  std::sort(all.begin(), all.end());
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  CHECK(all.front() == QuadNum(1));
  CHECK(all.back() == QuadNum(3));
}

TEST_CASE("order is translation invariant and total") {
  Rng g(3);
  for (int i = 0; i < 500; ++i) {
    long D = (g() % 2) ? 5 : 13;
    QuadNum x = rand_qn(g, D), y = rand_qn(g, D), z = rand_qn(g, D);
    if (qn_cmp(x, y) == std::strong_ordering::less)
      CHECK(qn_cmp(qn_add(x, z), qn_add(y, z)) == std::strong_ordering::less);
    // trichotomy and transitivity
    int lt = (x < y) + (x == y) + (x > y);
    CHECK(lt == 1);
    if (x < y && y < z) CHECK(x < z);
  }
}

TEST_CASE("parse inverts str") {
  Rng g(4);
  const long Ds[] = {2, 3, 5, 7};
  for (int i = 0; i < 500; ++i) {
    QuadNum x = rand_qn(g, Ds[g() % 4]);
    CHECK(QuadNum::parse(x.str()) == x);
  }
  CHECK(QuadNum::parse("(3+sqrt(5))/2").str() == "(3+sqrt(5))/2");
  CHECK_THROWS_AS(QuadNum::parse("1+"), ParseError);
}

TEST_CASE("root enclosures are sound and tight") {
  for (long v : {2L, 3L, 8L, 21L, 55L, 6765L}) {
    for (unsigned k : {1u, 2u, 3u, 7u}) {
      RationalInterval I = kth_root_interval(mpq_class(v), k, 1000);
      mpq_class lo = I.lo, hi = I.hi, lp = 1, hp = 1;
      for (unsigned i = 0; i < k; ++i) lp *= lo, hp *= hi;
      CHECK(lp <= v);
      CHECK(hp >= v);
      CHECK(hi - lo <= mpq_class(1, 1000));
    }
  }
  for (const auto& l : lambda3()) {
    RationalInterval I = enclose(l, 1000000);
    mpf_class a = approx512(l);
    CHECK(mpf_class(I.lo, 512) <= a);
    CHECK(a <= mpf_class(I.hi, 512));
  }
}

TEST_CASE("finite field multiplication matches schoolbook reduction") {
  for (auto [p, k] : {std::pair{2, 2}, {2, 3}, {3, 2}, {5, 2}, {2, 4}, {7, 1}}) {
    const Field* F = Field::finite(p, k);
    CHECK(F->order() == static_cast<std::uint64_t>(std::pow(p, k)));
    // modulus has no root in F_p, so it is irreducible for k <= 3
    if (k <= 3 && k > 1)
      for (std::uint64_t t = 0; t < static_cast<std::uint64_t>(p); ++t) {
        std::uint64_t acc = 0, pw = 1;
        for (auto c : F->modulus()) acc = (acc + c * pw) % p, pw = pw * t % p;
        CHECK(acc != 0);
      }
    for (std::uint64_t a = 0; a < F->order(); ++a)
      for (std::uint64_t b = 0; b < F->order(); ++b)
        CHECK(F->mul(a, b) == undigits(F, ref_mul(F, digits(F, a), digits(F, b))));
  }
}

TEST_CASE("finite field axioms by exhaustion") {
  for (auto [p, k] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
    const Field* F = Field::finite(p, k);
    std::uint64_t q = F->order();
    for (std::uint64_t a = 0; a < q; ++a) {
      Scalar sa = Scalar::from_code(F, a);
      CHECK((sa + (-sa)).is_zero());
      if (a) CHECK((sa * sa.inverse()).is_one());
      CHECK(sa.pow(q) == sa);
      for (std::uint64_t b = 0; b < q; ++b)
        for (std::uint64_t c = 0; c < q; ++c) {
          Scalar sb = Scalar::from_code(F, b), sc = Scalar::from_code(F, c);
          CHECK(sa * (sb + sc) == sa * sb + sa * sc);
          CHECK((sa * sb) * sc == sa * (sb * sc));
        }
    }
  }
}

TEST_CASE("field embeddings are ring homomorphisms") {
  const Field* F4 = Field::finite(2, 2);
  const Field* F16 = F4->extension(2);
  CHECK(F16->order() == 16);
  CHECK(F4->embeds_into(F16));
  CHECK_FALSE(Field::finite(2, 3)->embeds_into(F16));
  for (std::uint64_t a = 0; a < 4; ++a)
    for (std::uint64_t b = 0; b < 4; ++b) {
      Scalar sa = Scalar::from_code(F4, a), sb = Scalar::from_code(F4, b);
      CHECK((sa * sb).embed(F16) == sa.embed(F16) * sb.embed(F16));
      CHECK((sa + sb).embed(F16) == sa.embed(F16) + sb.embed(F16));
    }
}
