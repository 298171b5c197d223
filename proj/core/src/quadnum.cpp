#include "affc/quadnum.hpp"

#include <cctype>
#include <cmath>

#include "affc/errors.hpp"

namespace affc {

namespace {

// n = k^2 * s with s squarefree; returns (k, s).
std::pair<mpz_class, mpz_class> split_square(mpz_class n) {
  mpz_class k = 1, s = 1;
  if (n == 0) return {0, 0};
  for (mpz_class p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
    unsigned e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) k *= p;
    if (e % 2) s *= p;
  }
  s *= n;
  return {k, s};
}

int sign_z(const mpz_class& v) { return mpz_sgn(v.get_mpz_t()); }

// Sign of A + B*sqrt(D), D >= 0.
int sign_one(const mpz_class& A, const mpz_class& B, const mpz_class& D) {
  int sa = sign_z(A), sb = (D == 0) ? 0 : sign_z(B);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  mpz_class lhs = A * A, rhs = B * B * D;
  if (lhs > rhs) return sa;
  if (lhs < rhs) return sb;
  return 0;
}

}  // namespace

QuadNum::QuadNum(const mpq_class& v) : a_(v.get_num()), b_(0), c_(v.get_den()), d_(0) {}

QuadNum::QuadNum(mpz_class a, mpz_class b, mpz_class c, mpz_class d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (c_ == 0) throw ZeroValue("QuadNum with zero denominator");
  if (d_ < 0) throw MixedField("negative radicand");
  auto [k, s] = split_square(d_);
  b_ *= k;
  d_ = s;
  normalize();
}

void QuadNum::normalize() {
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
  }
  if (b_ == 0 || d_ == 0) {
    b_ = 0;
    d_ = 0;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
  if (g != 1 && g != 0) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

QuadNum QuadNum::sqrt_of(const mpz_class& n) {
  if (n < 0) throw MixedField("square root of a negative integer");
  return QuadNum(0, 1, 1, n);
}

mpq_class QuadNum::rational() const {
  mpq_class q(a_, c_);
  q.canonicalize();
  return q;
}

int QuadNum::sign() const { return sign_one(a_, b_, d_); }

QuadNum QuadNum::operator-() const {
  QuadNum r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadNum QuadNum::conjugate() const {
  QuadNum r = *this;
  r.b_ = -r.b_;
  return r;
}

static const mpz_class& common_radicand(const QuadNum& x, const QuadNum& y) {
  if (x.is_rational()) return y.radicand();
  if (y.is_rational() || x.radicand() == y.radicand()) return x.radicand();
  throw MixedField("operands in different quadratic fields: sqrt(" + x.radicand().get_str() +
                   ") vs sqrt(" + y.radicand().get_str() + ")");
}

QuadNum operator+(const QuadNum& x, const QuadNum& y) {
  const mpz_class& d = common_radicand(x, y);
  QuadNum r;
  r.a_ = x.a_ * y.c_ + y.a_ * x.c_;
  r.b_ = x.b_ * y.c_ + y.b_ * x.c_;
  r.c_ = x.c_ * y.c_;
  r.d_ = d;
  r.normalize();
  return r;
}

QuadNum operator-(const QuadNum& x, const QuadNum& y) { return x + (-y); }

QuadNum operator*(const QuadNum& x, const QuadNum& y) {
  const mpz_class& d = common_radicand(x, y);
  QuadNum r;
  r.a_ = x.a_ * y.a_ + x.b_ * y.b_ * d;
  r.b_ = x.a_ * y.b_ + x.b_ * y.a_;
  r.c_ = x.c_ * y.c_;
  r.d_ = d;
  r.normalize();
  return r;
}

QuadNum QuadNum::inverse() const {
  mpz_class n = a_ * a_ - b_ * b_ * d_;
  if (n == 0) throw ZeroValue("inverse of zero");
  QuadNum r;
  r.a_ = c_ * a_;
  r.b_ = -c_ * b_;
  r.c_ = n;
  r.d_ = d_;
  r.normalize();
  return r;
}

QuadNum operator/(const QuadNum& x, const QuadNum& y) { return x * y.inverse(); }

int sign_of_two_radicals(const mpz_class& A, const mpz_class& B, const mpz_class& D1,
                         const mpz_class& C, const mpz_class& D2) {
  int su = sign_one(A, B, D1);
  int sv = (D2 == 0) ? 0 : sign_z(C);
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  // Compare u^2 = A^2 + B^2 D1 + 2AB sqrt(D1) against v^2 = C^2 D2.
  int s = sign_one(A * A + B * B * D1 - C * C * D2, 2 * A * B, D1);
  if (s > 0) return su;
  if (s < 0) return sv;
  return 0;
}

std::strong_ordering operator<=>(const QuadNum& x, const QuadNum& y) {
  int s = sign_of_two_radicals(x.a_ * y.c_ - y.a_ * x.c_, x.b_ * y.c_, x.d_, -y.b_ * x.c_, y.d_);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

QuadNum qn_add(const QuadNum& x, const QuadNum& y) { return x + y; }
QuadNum qn_mul(const QuadNum& x, const QuadNum& y) { return x * y; }
std::strong_ordering qn_cmp(const QuadNum& x, const QuadNum& y) { return x <=> y; }

mpz_class QuadNum::floor_scaled(const mpz_class& scale) const {
  mpz_class s = b_ * scale;
  mpz_class f = 0;
  if (s != 0) {
    mpz_class sq = s * s * d_, r;
    mpz_sqrt(r.get_mpz_t(), sq.get_mpz_t());
    if (s > 0) {
      f = r;
    } else {
      f = -r;
      if (r * r != sq) f -= 1;
    }
  }
  mpz_class n = a_ * scale + f, q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), c_.get_mpz_t());
  return q;
}

double QuadNum::approx() const {
  return (a_.get_d() + b_.get_d() * std::sqrt(d_.get_d())) / c_.get_d();
}

std::string QuadNum::str() const {
  if (b_ == 0) {
    if (c_ == 1) return a_.get_str();
    return a_.get_str() + "/" + c_.get_str();
  }
  std::string rad = "sqrt(" + d_.get_str() + ")";
  mpz_class ab = abs(b_);
  std::string bterm = (ab == 1) ? rad : ab.get_str() + "*" + rad;
  std::string num;
  if (a_ == 0) {
    num = (b_ < 0 ? "-" : "") + bterm;
  } else {
    num = a_.get_str() + (b_ < 0 ? "-" : "+") + bterm;
  }
  if (c_ == 1) return num;
  return "(" + num + ")/" + c_.get_str();
}

namespace {

class QnParser {
 public:
  explicit QnParser(std::string_view s) : s_(s) {}

  QuadNum run() {
    QuadNum v = expr();
    skip();
    if (i_ != s_.size()) fail("end of input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) {
    throw ParseError(i_, expected, "quadratic number: expected " + expected + " at offset " +
                                       std::to_string(i_));
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  QuadNum expr() {
    QuadNum v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }
  QuadNum term() {
    QuadNum v = factor();
    for (;;) {
      if (eat('*')) {
        v = v * factor();
      } else if (eat('/')) {
        std::size_t at = i_;
        QuadNum d = factor();
        if (d.sign() == 0) {
          i_ = at;
          fail("nonzero divisor");
        }
        v = v / d;
      } else {
        return v;
      }
    }
  }
  QuadNum factor() {
    skip();
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    if (eat('(')) {
      QuadNum v = expr();
      if (!eat(')')) fail("')'");
      return v;
    }
    if (s_.substr(i_, 4) == "sqrt") {
      i_ += 4;
      if (!eat('(')) fail("'('");
      skip();
      mpz_class n = integer();
      if (!eat(')')) fail("')'");
      return QuadNum::sqrt_of(n);
    }
    return QuadNum(integer());
  }
  mpz_class integer() {
    skip();
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("integer");
    return mpz_class(std::string(s_.substr(st, i_ - st)));
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

QuadNum QuadNum::parse(std::string_view text) { return QnParser(text).run(); }

std::string RationalInterval::str() const {
  if (lo == hi) return "[" + lo.get_str() + "]";
  return "[" + lo.get_str() + ", " + hi.get_str() + "]";
}

RationalInterval kth_root_interval(const mpq_class& v, unsigned k, const mpz_class& den) {
  mpz_class dk;
  mpz_pow_ui(dk.get_mpz_t(), den.get_mpz_t(), k);
  mpq_class w = v * mpq_class(dk);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), w.get_num_mpz_t(), w.get_den_mpz_t());
  mpz_class m;
  mpz_root(m.get_mpz_t(), fl.get_mpz_t(), k);
  mpz_class mk;
  mpz_pow_ui(mk.get_mpz_t(), m.get_mpz_t(), k);
  RationalInterval r;
  r.lo = mpq_class(m, den);
  r.lo.canonicalize();
  if (mpq_class(mk) == w) {
    r.hi = r.lo;
  } else {
    r.hi = mpq_class(m + 1, den);
    r.hi.canonicalize();
  }
  return r;
}

RationalInterval enclose(const QuadNum& x, const mpz_class& den) {
  mpz_class f = x.floor_scaled(den);
  RationalInterval r;
  r.lo = mpq_class(f, den);
  r.lo.canonicalize();
  if (x.is_rational() && x.rational() == r.lo) {
    r.hi = r.lo;
  } else {
    r.hi = mpq_class(f + 1, den);
    r.hi.canonicalize();
  }
  return r;
}

}  // namespace affc
