#pragma once

// Random generators shared by the unit tests and the acceptance suite.
// Every generator draws from an explicit engine so runs are reproducible.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "affc/dyndeg.hpp"
#include "affc/errors.hpp"
#include "affc/text.hpp"

namespace testsupport {

using namespace affc;
using Rng = std::mt19937_64;

inline Scalar rand_scalar(const Field* F, Rng& g, long lo = -3, long hi = 3) {
  if (F->is_rational()) return Scalar(F, std::uniform_int_distribution<long>(lo, hi)(g));
  return Scalar::from_code(F, g() % F->order());
}

inline Scalar rand_nonzero(const Field* F, Rng& g) {
  for (;;) {
    Scalar s = rand_scalar(F, g);
    if (!s.is_zero()) return s;
  }
}

inline Poly X(const Field* F) { return Poly::var(F, 3, 0); }
inline Poly Y(const Field* F) { return Poly::var(F, 3, 1); }
inline Poly Z(const Field* F) { return Poly::var(F, 3, 2); }

// Random form of degree d in the variables whose bits are set in `mask`.
inline Poly rand_form(const Field* F, Rng& g, int d, unsigned mask = 7u) {
  Poly out(F, 3);
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b) {
      Exps e{};
      e[0] = a, e[1] = b, e[2] = d - a - b;
      bool ok = true;
      for (int i = 0; i < 3; ++i)
        if (e[i] && !(mask >> i & 1u)) ok = false;
      if (ok) out += Poly::monomial(e, rand_scalar(F, g), 3);
    }
  return out;
}

inline Poly rand_poly(const Field* F, Rng& g, int max_deg, unsigned mask = 7u) {
  Poly out(F, 3);
  for (int d = 0; d <= max_deg; ++d) out += rand_form(F, g, d, mask);
  return out;
}

inline AffineMap rand_affine(const Field* F, Rng& g, int n) {
  for (;;) {
    AffineMap a = AffineMap::identity(F, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a.A[i][j] = rand_scalar(F, g, -2, 2);
      a.t[i] = rand_scalar(F, g, -2, 2);
    }
    if (mat_rank(a.A) == n) return a;
  }
}

// a(x, z) homogeneous quadratic, not in k[z].
inline Poly rand_a2(const Field* F, Rng& g) {
  Poly x = X(F), z = Z(F);
  for (;;) {
    Scalar c0 = rand_scalar(F, g), c1 = rand_scalar(F, g), c2 = rand_scalar(F, g);
    if (c0.is_zero() && c1.is_zero()) continue;
    return (x * x).scaled(c0) + (x * z).scaled(c1) + (z * z).scaled(c2);
  }
}

inline Poly zpow(const Field* F, unsigned k) { return Z(F).pow(k); }

inline PolyMap star_map(const Field* F, const Poly& a, const Poly& r) {
  Poly x = X(F), y = Y(F), z = Z(F);
  return PolyMap({x + y * z + z * a, y + a + r, z});
}

// Template instance of a family with random parameters respecting its side
// conditions; see the family list in classify.hpp.
inline PolyMap family_instance(int family, const Field* F, Rng& g) {
  Poly x = X(F), y = Y(F), z = Z(F);
  auto s = [&] { return rand_scalar(F, g); };
  auto yz_form = [&](int d) { return rand_form(F, g, d, 6u); };
  switch (family) {
    case 1: return PolyMap({x + yz_form(2) + yz_form(3)});
    case 2: {
      Poly r2;
      do r2 = yz_form(2);
      while (r2.degree_in(2) <= 0);
      return PolyMap({x * y + y * r2 + z});
    }
    case 3: return PolyMap({x * y * y + y * (z * z + z.scaled(s()) + Poly::constant(s(), 3)) + z});
    case 4:
      return PolyMap({x + yz_form(2) + yz_form(3), y + (z * z).scaled(s()) + zpow(F, 3).scaled(s())});
    case 5: {
      Poly a = rand_a2(F, g);
      return PolyMap({y * z + z * a + x, y + a + z.scaled(s()) + (z * z).scaled(s()) + zpow(F, 3).scaled(s())});
    }
    case 6: return PolyMap({y * z + z * rand_a2(F, g) + x, z});
    case 7: return PolyMap({x * y * y + y * (z * z + z.scaled(s()) + Poly::constant(s(), 3)) + z, y});
    case 8: return PolyMap({x + z * z + y.pow(3), y + x * x});
    case 9: return PolyMap({x + z * z + y.pow(3), z + x.pow(3)});
    case 10:
      return PolyMap({x + yz_form(2) + yz_form(3), y + (z * z).scaled(s()) + zpow(F, 3).scaled(s()), z});
    case 11: {
      Poly a = rand_a2(F, g);
      return PolyMap({y * z + z * a + x, y + a + (z * z).scaled(s()) + zpow(F, 3).scaled(s()), z});
    }
  }
  throw std::invalid_argument("no such family");
}

inline const Field* family_field(int family) {
  if (family == 8) return Field::finite(2);
  if (family == 9) return Field::finite(3);
  return Field::rationals();
}

// Random automorphism of degree <= 3 built from affine and triangular letters.
inline PolyMap rand_tame_deg3(const Field* F, Rng& g) {
  Poly x = X(F), y = Y(F), z = Z(F);
  for (;;) {
    PolyMap core;
    if (g() % 2) {
      core = PolyMap({x.scaled(rand_nonzero(F, g)) + rand_poly(F, g, 3, 6u),
                      y.scaled(rand_nonzero(F, g)) + rand_poly(F, g, 3, 4u), z.scaled(rand_nonzero(F, g))});
    } else {
      core = star_map(F, rand_a2(F, g), (z * z).scaled(rand_scalar(F, g)) + zpow(F, 3).scaled(rand_scalar(F, g)));
    }
    PolyMap f = apply_equivalence(rand_affine(F, g, 3), core, rand_affine(F, g, 3));
    if (f.degree() <= 3) return f;
  }
}

inline bool same_set(std::vector<QuadNum> a, std::vector<QuadNum> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

inline std::vector<QuadNum> qns(std::initializer_list<const char*> xs) {
  std::vector<QuadNum> out;
  for (const char* s : xs) out.push_back(QuadNum::parse(s));
  return out;
}

// The twelve rows of the dynamical-degree example table with their values.
struct TableRow {
  const char* map;
  const char* lambda;
};
inline const std::vector<TableRow>& example_table() {
  static const std::vector<TableRow> rows = {
      {"(x+y*z+x*z^2, y+x*z, z)", "1"},
      {"(x+y*z+x^2*z, y+x^2, z)", "2"},
      {"(x+y*z+x*z^2, z, y+x*z+z^3)", "3"},
      {"(z, y+x*z+z^3, x+y*z+x*z^2)", "1+sqrt(2)"},
      {"(z, y+x^2+z^3, x+y*z+x^2*z)", "(1+sqrt(13))/2"},
      {"(x+y*z+z*x^2, z, y+x^2)", "1+sqrt(3)"},
      {"(x+y*z+x*z^2, z, y+x*z)", "1+sqrt(2)"},
      {"(y+x*z+z^2, z, x+y*z+x*z^2)", "1+sqrt(3)"},
      {"(y+x*z, z, x+y*z+x*z^2)", "(3+sqrt(5))/2"},
      {"(y+x^2+z^2, z, x+y*z+x^2*z)", "(1+sqrt(17))/2"},
      {"(y+x^2, z, x+y*z+x^2*z)", "2"},
      {"(z, y+x*z, x+y*z+x*z^2)", "1+sqrt(2)"},
  };
  return rows;
}

inline std::vector<QuadNum> lambda3() {
  return qns({"1", "sqrt(2)", "(1+sqrt(5))/2", "sqrt(3)", "2", "(1+sqrt(13))/2", "1+sqrt(2)", "sqrt(6)",
              "(1+sqrt(17))/2", "1+sqrt(3)", "(3+sqrt(5))/2", "3"});
}

}  // namespace testsupport
