#pragma once

// Single-polynomial reduction steps shared by the plane checker and the
// system classifier. Not installed.

#include <string>
#include <vector>

#include "affc/planecheck.hpp"

namespace affc::detail {

constexpr int X = 0, Y = 1, Z = 2;

struct Rejected {
  std::string reason, detail;
};

// g = f o W. Every source change is applied to `others` as well, so a whole
// system can ride along while one component is reduced.
struct Work {
  const Field* F;
  Poly g;
  AffineMap W;
  std::vector<Poly> others;
  // Degree-two normalization to x + y^2 or x + y*z; it mixes y and z.
  bool cosmetic = true;

  Poly v(int i) const { return Poly::var(F, 3, i); }
  Poly c(const Scalar& s) const { return Poly::constant(s, 3); }
  Poly c(long s) const { return Poly::constant(F, 3, s); }
  Scalar s(long n) const { return Scalar(F, n); }

  void sub(const std::vector<Poly>& img);
  Poly p() const { return g.coeff_in(X, 1); }
  Poly q() const { return g.coeff_in(X, 0); }
};

Scalar coef(const Poly& p, std::uint32_t ex, std::uint32_t ey, std::uint32_t ez);
bool only_vars(const Poly& p, unsigned mask);

void line_to_z(Work& w, const ProjRoot& r);
void line_to_y(Work& w, const Poly& l);

// g = c*x + h(y,z), c constant: ends at x + h2 + h3.
PlaneCase finish_a(Work& w);
// g = x*y + y*b(y,z) + z.
PlaneCase normalize_xy(Work& w);
// g = q(y,z).
PlaneCase reduce_curve(Work& w);
// g = x*p(y) + q(y,z), p nonconstant. Every substitution maps y into k[y].
PlaneCase reduce_ky(Work& w);
// g = x*p(y) + q(y,z) with p = y^2 up to scaling and translation of y:
// stops at x*y^2 + y*s(z) + z, fixing y.
void reduce_ky_double(Work& w);
// p = c*l^2 + (linear form independent of l) + const, root the zero of l:
// ends at x*(y + z^2) + z.
void reduce_parabola_core(Work& w, const ProjRoot& root);
// g = x*p + q with p of degree <= 2 in y, z.
PlaneCase reduce(Work& w);

}  // namespace affc::detail
