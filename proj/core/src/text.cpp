#include "affc/text.hpp"

#include <cctype>

#include "affc/errors.hpp"

namespace affc {

namespace {

class Parser {
 public:
  Parser(std::string_view s, const Field* F, int n) : s_(s), F_(F), n_(n) {}

  Poly single() {
    Poly p = expr();
    skip();
    if (i_ != s_.size()) fail("operator or end of input");
    return p;
  }

  std::vector<Poly> tuple() {
    skip();
    if (!eat('(')) fail("'('");
    std::vector<Poly> out;
    out.push_back(expr());
    for (;;) {
      if (eat(',')) {
        out.push_back(expr());
      } else if (eat(')')) {
        break;
      } else {
        fail("',' or ')'");
      }
    }
    skip();
    if (i_ != s_.size()) fail("end of input");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) {
    skip();
    throw ParseError(i_, expected,
                     "parse error at offset " + std::to_string(i_) + ": expected " + expected);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    bool neg = false;
    for (;;) {
      if (eat('-'))
        neg = !neg;
      else if (!eat('+'))
        break;
    }
    Poly acc = power();
    while (eat('*')) acc *= power();
    return neg ? -acc : acc;
  }

  Poly power() {
    Poly base = atom();
    if (eat('^')) {
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("exponent");
      std::string digits(s_.substr(st, i_ - st));
      if (digits.size() > 6) {
        i_ = st;
        fail("exponent below 10^6");
      }
      base = base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Poly atom() {
    skip();
    if (i_ >= s_.size()) fail("term");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Poly p = expr();
      if (!eat(')')) fail("')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      std::size_t save = i_;
      skip();
      if (i_ < s_.size() && s_[i_] == '/') {
        ++i_;
        skip();
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("denominator");
        std::size_t at = i_;
        mpz_class den = integer();
        if (den == 0) {
          i_ = at;
          fail("nonzero denominator");
        }
        mpq_class q(num, den);
        q.canonicalize();
        try {
          return Poly::constant(Scalar(F_, q), n_);
        } catch (const NotInvertible&) {
          i_ = at;
          fail("denominator prime to the characteristic");
        }
      }
      i_ = save;
      return Poly::constant(Scalar(F_, mpq_class(num)), n_);
    }
    if (c == 'g' && !F_->is_rational() && F_->degree() > 1) {
      ++i_;
      return Poly::constant(Scalar::from_code(F_, F_->characteristic()), n_);
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      std::size_t st = i_;
      ++i_;
      int idx = -1;
      if (c == 'x' && i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        std::size_t ds = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::string d(s_.substr(ds, i_ - ds));
        idx = (d.size() > 2) ? 1000 : std::stoi(d) - 1;
      } else if (n_ <= 3) {
        idx = (c == 'x') ? 0 : (c == 'y' ? 1 : 2);
      }
      if (idx < 0 || idx >= n_) {
        i_ = st;
        fail("variable of a " + std::to_string(n_) + "-variable ring");
      }
      return Poly::var(F_, n_, idx);
    }
    fail("term");
  }

  mpz_class integer() {
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    return mpz_class(std::string(s_.substr(st, i_ - st)));
  }

  std::string_view s_;
  const Field* F_;
  int n_;
  std::size_t i_ = 0;
};

std::string monomial_str(const Exps& e, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) {
    if (!e[i]) continue;
    if (!s.empty()) s += "*";
    s += var_name(n, i);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

}  // namespace

Poly parse_poly(std::string_view text, const Field* F, int nvars) {
  return Parser(text, F, nvars).single();
}

std::vector<Poly> parse_poly_tuple(std::string_view text, const Field* F, int nvars) {
  return Parser(text, F, nvars).tuple();
}

std::string format_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& t : p.terms()) {
    std::string cs = t.c.str();
    bool neg = cs[0] == '-';
    if (neg) cs.erase(0, 1);
    if (t.c.compound()) cs = "(" + cs + ")";
    std::string m = monomial_str(t.e, p.nvars());
    if (!s.empty() || neg) s += neg ? "-" : "+";
    if (m.empty())
      s += cs;
    else if (cs == "1")
      s += m;
    else
      s += cs + "*" + m;
  }
  return s;
}

std::string format_tuple(const std::vector<Poly>& ps) {
  std::string s = "(";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) s += ", ";
    s += format_poly(ps[i]);
  }
  return s + ")";
}

std::string Poly::str() const { return format_poly(*this); }

}  // namespace affc
