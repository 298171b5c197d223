#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace affc {

// Coefficient field: Q, or F_{p^k} = F_p[g]/(m(g)) with m the least monic
// irreducible of degree k in the order of its coefficient vector read from
// the top. Fields are interned; compare by pointer.
class Field {
 public:
  static const Field* rationals();
  static const Field* finite(std::uint64_t p, int k = 1);

  bool is_rational() const { return p_ == 0; }
  std::uint64_t characteristic() const { return p_; }
  int degree() const { return k_; }
  std::uint64_t order() const { return q_; }  // 0 for Q
  // Monic defining polynomial over F_p, low to high, size degree()+1.
  const std::vector<std::uint64_t>& modulus() const { return mod_; }
  std::string name() const;

  // F_{p^(k*m)}.
  const Field* extension(int m) const;
  // Image of the element with code v under the fixed embedding into `big`.
  std::uint64_t embed_code(std::uint64_t v, const Field* big) const;
  bool embeds_into(const Field* big) const;

  // Arithmetic on encodings sum d_i p^i of F_{p^k} elements.
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t pow(std::uint64_t a, mpz_class e) const;
  std::string code_str(std::uint64_t v) const;

  Field(std::uint64_t p, int k);

 private:
  std::vector<std::uint64_t> digits(std::uint64_t v) const;
  std::uint64_t undigits(const std::vector<std::uint64_t>& d) const;
  std::uint64_t mul_slow(std::uint64_t a, std::uint64_t b) const;

  std::uint64_t p_ = 0;
  int k_ = 1;
  std::uint64_t q_ = 0;
  std::vector<std::uint64_t> mod_;
  std::vector<std::uint32_t> log_, exp_;  // filled when 1 < q <= 2^16 and k > 1
};

class Scalar {
 public:
  Scalar() : F_(Field::rationals()) {}
  explicit Scalar(const Field* F) : F_(F) {}
  Scalar(const Field* F, long v);
  Scalar(const Field* F, const mpq_class& v);
  static Scalar from_code(const Field* F, std::uint64_t code);

  const Field* field() const { return F_; }
  bool is_zero() const { return F_->is_rational() ? q_ == 0 : v_ == 0; }
  bool is_one() const { return F_->is_rational() ? q_ == 1 : v_ == 1; }
  const mpq_class& rat() const { return q_; }
  std::uint64_t code() const { return v_; }

  Scalar operator-() const;
  Scalar inverse() const;  // throws NotInvertible on zero
  Scalar pow(const mpz_class& e) const;
  Scalar embed(const Field* big) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b);
  Scalar& operator-=(const Scalar& b);
  Scalar& operator*=(const Scalar& b);
  // *this += a * b
  void add_product(const Scalar& a, const Scalar& b);

  friend bool operator==(const Scalar& a, const Scalar& b);
  // Total order used for deterministic tie-breaking: numeric on Q, by code on F_q.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  std::string str() const;
  // True when str() needs parentheses as a factor.
  bool compound() const;

 private:
  const Field* F_;
  mpq_class q_;
  std::uint64_t v_ = 0;
};

// i-th element of the deterministic sequence 0, 1, 2, ... used for generic
// choices: codes on F_q, integers on Q. False once F_q is exhausted.
bool sequence_element(const Field* F, std::uint64_t i, Scalar& out);

}  // namespace affc
