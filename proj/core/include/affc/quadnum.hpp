#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace affc {

// Exact element (a + b*sqrt(D))/c of a real quadratic field.
// Canonical: c > 0, gcd(a, b, c) = 1, D squarefree, b = 0 <=> D = 0, D != 1.
class QuadNum {
 public:
  QuadNum() : a_(0), b_(0), c_(1), d_(0) {}
  QuadNum(long v) : a_(v), b_(0), c_(1), d_(0) {}  // NOLINT: implicit by design
  explicit QuadNum(const mpz_class& v) : a_(v), b_(0), c_(1), d_(0) {}
  explicit QuadNum(const mpq_class& v);
  QuadNum(mpz_class a, mpz_class b, mpz_class c, mpz_class d);

  static QuadNum sqrt_of(const mpz_class& n);  // n >= 0
  static QuadNum parse(std::string_view text);

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  const mpz_class& c() const { return c_; }
  const mpz_class& radicand() const { return d_; }

  bool is_rational() const { return b_ == 0; }
  bool is_integer() const { return b_ == 0 && c_ == 1; }
  mpq_class rational() const;  // requires is_rational()
  int sign() const;

  QuadNum operator-() const;
  QuadNum conjugate() const;
  QuadNum inverse() const;  // throws ZeroValue on 0

  friend QuadNum operator+(const QuadNum& x, const QuadNum& y);
  friend QuadNum operator-(const QuadNum& x, const QuadNum& y);
  friend QuadNum operator*(const QuadNum& x, const QuadNum& y);
  friend QuadNum operator/(const QuadNum& x, const QuadNum& y);
  QuadNum& operator+=(const QuadNum& y) { return *this = *this + y; }
  QuadNum& operator-=(const QuadNum& y) { return *this = *this - y; }
  QuadNum& operator*=(const QuadNum& y) { return *this = *this * y; }

  friend bool operator==(const QuadNum& x, const QuadNum& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }
  friend std::strong_ordering operator<=>(const QuadNum& x, const QuadNum& y);

  // floor(value * scale), exact.
  mpz_class floor_scaled(const mpz_class& scale) const;
  double approx() const;
  std::string str() const;

 private:
  void normalize();
  mpz_class a_, b_, c_, d_;
};

QuadNum qn_add(const QuadNum& x, const QuadNum& y);
QuadNum qn_mul(const QuadNum& x, const QuadNum& y);
std::strong_ordering qn_cmp(const QuadNum& x, const QuadNum& y);

// Sign of A + B*sqrt(D1) + C*sqrt(D2) for non-negative D1, D2.
int sign_of_two_radicals(const mpz_class& A, const mpz_class& B, const mpz_class& D1,
                         const mpz_class& C, const mpz_class& D2);

// Closed interval with rational endpoints; lo = hi when the value is exact.
struct RationalInterval {
  mpq_class lo, hi;
  std::string str() const;
};
// Enclosure of v^(1/k), v >= 0, with endpoints in (1/den)Z.
RationalInterval kth_root_interval(const mpq_class& v, unsigned k, const mpz_class& den);
// Enclosure of x with endpoints in (1/den)Z.
RationalInterval enclose(const QuadNum& x, const mpz_class& den);

}  // namespace affc
