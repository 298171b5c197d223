#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "affc/field.hpp"
#include "affc/quadnum.hpp"

namespace affc {

inline constexpr int kMaxVars = 8;
using Exps = std::array<std::uint32_t, kMaxVars>;

struct Monomial {
  Exps e{};
  unsigned degree() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic order with x1 > x2 > ...; true when a is larger.
bool grlex_greater(const Exps& a, const Exps& b);

struct Term {
  Exps e;
  Scalar c;
};

// Sparse polynomial in n <= kMaxVars variables. Terms are unique, nonzero
// and sorted by decreasing graded-lex order.
class Poly {
 public:
  Poly() : F_(Field::rationals()), n_(3) {}
  Poly(const Field* F, int n);
  static Poly constant(const Scalar& c, int n);
  static Poly constant(const Field* F, int n, long c);
  static Poly var(const Field* F, int n, int i);
  static Poly monomial(const Exps& e, const Scalar& c, int n);
  static Poly from_terms(const Field* F, int n, std::vector<Term> terms);

  const Field* field() const { return F_; }
  int nvars() const { return n_; }
  const std::vector<Term>& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  int degree() const;  // -1 for zero
  int degree_in(int i) const;
  // Bitmask of variables that occur.
  unsigned support() const;
  Scalar coeff(const Exps& e) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }
  Poly scaled(const Scalar& s) const;
  Poly pow(unsigned k) const;
  friend bool operator==(const Poly& a, const Poly& b);

  Poly homogeneous_part(int d) const;
  Poly derivative(int i) const;
  // Coefficient of x_i^k viewing the polynomial in x_i over the other variables.
  Poly coeff_in(int i, unsigned k) const;
  Scalar eval(const std::vector<Scalar>& pt) const;
  Poly embed(const Field* big) const;
  // Same polynomial in a ring with m >= highest used variable index + 1 variables.
  Poly with_nvars(int m) const;
  // Exact substitution x_i -> images[i]; images share a ring.
  Poly subst(const std::vector<Poly>& images) const;
  Poly monic() const;  // leading coefficient 1 (zero stays zero)
  const Term& leading() const { return t_.front(); }

  std::string str() const;

 private:
  void canonicalize();
  const Field* F_;
  int n_;
  std::vector<Term> t_;
};

Poly poly_mul(const Poly& p, const Poly& q);
Poly poly_subst(const Poly& p, const std::vector<Poly>& images);
Poly homogeneous_part(const Poly& p, int d);
Poly partial_derivative(const Poly& p, int i);

// Weight vector for mu-degrees; entries are QuadNums.
struct WeightVector {
  std::vector<QuadNum> w;
  bool positive() const;
};

// max over terms of sum e_j mu_j; nullopt encodes minus infinity (zero polynomial).
std::optional<QuadNum> mu_degree(const Poly& p, const WeightVector& mu);
Poly mu_part(const Poly& p, const WeightVector& mu, const QuadNum& r);
QuadNum monomial_weight(const Exps& e, const WeightVector& mu);

std::string var_name(int n, int i);

}  // namespace affc
