#pragma once

#include <string>
#include <utility>
#include <vector>

#include "affc/field.hpp"

namespace affc {

// Dense univariate polynomial over a Field, coefficients low to high, no
// trailing zeros.
class UPoly {
 public:
  explicit UPoly(const Field* F) : F_(F) {}
  UPoly(const Field* F, std::vector<Scalar> c);
  static UPoly constant(const Scalar& c);
  static UPoly x(const Field* F);
  // c*x + d
  static UPoly linear(const Scalar& c, const Scalar& d);

  const Field* field() const { return F_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(int i) const;
  const Scalar& lc() const { return c_.back(); }
  const std::vector<Scalar>& coeffs() const { return c_; }

  UPoly monic() const;
  UPoly derivative() const;
  Scalar eval(const Scalar& t) const;
  UPoly embed(const Field* big) const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly scaled(const Scalar& s) const;
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  std::string str(const std::string& var = "t") const;

 private:
  void trim();
  const Field* F_;
  std::vector<Scalar> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly ugcd(UPoly a, UPoly b);  // monic, or zero when both are zero
UPoly powmod(const UPoly& base, const mpz_class& e, const UPoly& m);

// Roots in the coefficient field with multiplicities, sorted by Scalar order,
// plus the cofactor without roots in the field.
struct LinearSplit {
  std::vector<std::pair<Scalar, int>> roots;
  UPoly residual;
};
LinearSplit split_linear(const UPoly& f);
std::vector<Scalar> distinct_roots(const UPoly& f);

// Over F_q: least m such that the rootless cofactor splits over F_{q^m}.
int splitting_degree(const UPoly& residual);

// Monic product of the distinct irreducible factors; handles p-th powers in
// characteristic p.
UPoly radical(const UPoly& f);

// All x in F with x^n = a.
std::vector<Scalar> nth_roots(const Scalar& a, unsigned n);

}  // namespace affc
