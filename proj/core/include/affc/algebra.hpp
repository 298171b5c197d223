#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "affc/poly.hpp"
#include "affc/upoly.hpp"

namespace affc {

// Quotient a/b when b divides a exactly.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
// Monic greatest common divisor; zero only when both inputs are zero.
Poly poly_gcd(const Poly& a, const Poly& b);
// Sylvester resultant in x_v with formal degrees da, db (defaults: actual
// degrees in x_v).
Poly resultant(const Poly& a, const Poly& b, int v, int da = -1, int db = -1);

// Conversion between polynomials in a single variable x_v and UPoly.
UPoly to_upoly(const Poly& p, int v);
Poly from_upoly(const UPoly& u, int n, int v);

// Dense linear algebra over a field.
using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;
Mat identity_matrix(const Field* F, int n);
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_vec(const Mat& a, const Vec& v);
int mat_rank(Mat m);
Scalar mat_det(Mat m);
std::optional<Mat> mat_inverse(Mat m);
// Basis of {v : m v = 0}; `cols` is needed when m has no rows.
std::vector<Vec> mat_kernel(Mat m, const Field* F, int cols);
std::optional<Vec> mat_solve(Mat a, Vec b);
Mat mat_embed(const Mat& m, const Field* big);

// Projective roots [a:b] of a binary form in x_i, x_j meaning (x_i, x_j) = (a, b),
// normalized so b = 1 or (a, b) = (1, 0). Finite roots come first in Scalar
// order, then [1:0].
struct ProjRoot {
  Scalar a, b;
  int mult = 1;
};
struct BinaryRoots {
  const Field* field = nullptr;
  std::vector<ProjRoot> roots;
  UPoly residual{Field::rationals()};  // rootless factor of p(t, 1); constant when split
};
// Roots inside the coefficient field; never throws.
BinaryRoots rational_binary_roots(const Poly& p, int i, int j);
// Complete root list: over Q raises FieldExtensionNeeded when the residual
// is nonconstant, over F_q extends the field until the form splits.
BinaryRoots binary_form_roots(const Poly& p, int i, int j);

// Smallest extension of F_q (as a field) over which u splits; F itself if it
// already does. Raises FieldExtensionNeeded over Q for nonconstant u.
const Field* splitting_field(const UPoly& u);
const Field* common_extension(const Field* a, const Field* b);

// Linear factors (degree-1 polynomials, monic) with multiplicities over the
// coefficient field of f, and the cofactor.
struct LinearFactors {
  std::vector<std::pair<Poly, int>> factors;
  Poly cofactor;
};
LinearFactors linear_factors(const Poly& f);
// Over F_q: an extension over which f acquires a linear factor whenever it has
// one over the algebraic closure (deg f <= 3). Q is returned unchanged.
const Field* linear_factor_field(const Poly& f);
// Irreducible over the coefficient field, for 1 <= deg f <= 3.
bool irreducible_small(const Poly& f);

// Polynomial image of the affine change x -> m x + t (variables as column vector).
Poly affine_subst(const Poly& p, const Mat& m, const Vec& t);

std::string minpoly_str(const UPoly& u);

}  // namespace affc
