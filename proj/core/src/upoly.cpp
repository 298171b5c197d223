#include "affc/upoly.hpp"

#include <algorithm>
#include <numeric>

#include "affc/errors.hpp"

namespace affc {

UPoly::UPoly(const Field* F, std::vector<Scalar> c) : F_(F), c_(std::move(c)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::constant(const Scalar& c) { return UPoly(c.field(), {c}); }

UPoly UPoly::x(const Field* F) { return UPoly(F, {Scalar(F), Scalar(F, 1)}); }

UPoly UPoly::linear(const Scalar& c, const Scalar& d) { return UPoly(c.field(), {d, c}); }

Scalar UPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return Scalar(F_);
  return c_[i];
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(lc().inverse());
}

UPoly UPoly::scaled(const Scalar& s) const {
  std::vector<Scalar> r;
  r.reserve(c_.size());
  for (const auto& v : c_) r.push_back(v * s);
  return UPoly(F_, r);
}

UPoly UPoly::derivative() const {
  std::vector<Scalar> r;
  for (int i = 1; i <= degree(); ++i) r.push_back(c_[i] * Scalar(F_, static_cast<long>(i)));
  return UPoly(F_, r);
}

Scalar UPoly::eval(const Scalar& t) const {
  Scalar r(F_);
  for (int i = degree(); i >= 0; --i) r = r * t + c_[i];
  return r;
}

UPoly UPoly::embed(const Field* big) const {
  std::vector<Scalar> r;
  for (const auto& v : c_) r.push_back(v.embed(big));
  return UPoly(big, r);
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()), Scalar(a.F_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return UPoly(a.F_, r);
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()), Scalar(a.F_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
  return UPoly(a.F_, r);
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly(a.F_);
  std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, Scalar(a.F_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(a.F_, r);
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    std::string cs = c_[i].str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (c_[i].compound()) cs = "(" + cs + ")";
    if (!s.empty() || neg) s += neg ? "-" : "+";
    std::string mono = (i == 0) ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (mono.empty())
      s += cs;
    else if (cs == "1")
      s += mono;
    else
      s += cs + "*" + mono;
  }
  return s;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw NotInvertible("division by zero polynomial");
  const Field* F = a.field();
  std::vector<Scalar> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {UPoly(F), a};
  std::vector<Scalar> q(a.degree() - db + 1, Scalar(F));
  Scalar inv = b.lc().inverse();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i].is_zero()) continue;
    Scalar t = r[i] * inv;
    q[i - db] = t;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.coeffs()[j];
  }
  return {UPoly(F, q), UPoly(F, r)};
}

UPoly ugcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UPoly powmod(const UPoly& base, const mpz_class& e, const UPoly& m) {
  UPoly r = UPoly::constant(Scalar(base.field(), 1L));
  r = divmod(r, m).second;
  UPoly b = divmod(base, m).second;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = divmod(r * r, m).second;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = divmod(r * b, m).second;
  }
  return r;
}

namespace {

// Distinct roots over F_q of a polynomial that splits into distinct linear factors.
void split_distinct(const UPoly& g, std::vector<Scalar>& out) {
  const Field* F = g.field();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-(g.coeff(0) / g.coeff(1)));
    return;
  }
  std::uint64_t q = F->order();
  for (std::uint64_t i = 1;; ++i) {
    if (i >= q) throw std::logic_error("root splitting exhausted the field");
    Scalar a = Scalar::from_code(F, i);
    UPoly h(F);
    if (F->characteristic() == 2) {
      // Trace map t -> sum (a t)^(2^j), j < log2 q.
      UPoly at = UPoly(F, {Scalar(F), a});
      UPoly term = divmod(at, g).second, acc(F);
      int e = 0;
      for (std::uint64_t t = q; t > 1; t >>= 1) ++e;
      for (int j = 0; j < e; ++j) {
        acc = acc + term;
        term = divmod(term * term, g).second;
      }
      h = ugcd(acc, g);
    } else {
      UPoly xa = UPoly(F, {a, Scalar(F, 1L)});
      mpz_class e = (mpz_class(static_cast<unsigned long>(q)) - 1) / 2;
      UPoly pw = powmod(xa, e, g) - UPoly::constant(Scalar(F, 1L));
      h = ugcd(pw, g);
    }
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_distinct(h, out);
      split_distinct(divmod(g, h).first, out);
      return;
    }
  }
}

std::vector<Scalar> fq_roots(const UPoly& f) {
  const Field* F = f.field();
  std::vector<Scalar> out;
  if (f.degree() <= 0) return out;
  if (F->order() <= 1024) {
    for (std::uint64_t i = 0; i < F->order(); ++i) {
      Scalar t = Scalar::from_code(F, i);
      if (f.eval(t).is_zero()) out.push_back(t);
    }
    return out;
  }
  UPoly x = UPoly::x(F);
  UPoly xq = powmod(x, mpz_class(static_cast<unsigned long>(F->order())), f);
  UPoly g = ugcd(xq - x, f);
  split_distinct(g, out);
  std::sort(out.begin(), out.end());
  return out;
}

// Integer polynomial with the same roots as f over Q.
std::vector<mpz_class> clear_denominators(const UPoly& f) {
  mpz_class l = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rat().get_den_mpz_t());
  std::vector<mpz_class> r;
  for (const auto& c : f.coeffs()) {
    mpq_class v = c.rat() * l;
    r.push_back(v.get_num());
  }
  return r;
}

mpz_class zeval(const std::vector<mpz_class>& a, const mpz_class& t, const mpz_class& m) {
  mpz_class r = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    r = r * t + a[i];
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  }
  return r;
}

// Rational roots of a squarefree polynomial over Q by p-adic lifting and
// rational reconstruction; complete because every rational root u/v has
// |u| <= |a_0| and v | a_n.
std::vector<Scalar> q_roots_squarefree(const UPoly& f) {
  const Field* Q = f.field();
  std::vector<Scalar> out;
  if (f.degree() <= 0) return out;
  UPoly g = f;
  if (g.coeff(0).is_zero()) {
    out.push_back(Scalar(Q));
    g = divmod(g, UPoly::x(Q)).first;
  }
  if (g.degree() <= 0) return out;
  if (g.degree() == 1) {
    out.push_back(-(g.coeff(0) / g.coeff(1)));
    std::sort(out.begin(), out.end());
    return out;
  }
  auto a = clear_denominators(g);
  mpz_class an = abs(a.back()), a0 = abs(a.front());
  mpz_class bound = 2 * a0 * an + 1;
  std::vector<mpz_class> da;
  for (std::size_t i = 1; i < a.size(); ++i) da.push_back(a[i] * static_cast<unsigned long>(i));
  mpz_class p = 101;
  for (int attempt = 0; attempt < 200; ++attempt) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    if (mpz_divisible_p(a.back().get_mpz_t(), p.get_mpz_t())) continue;
    const Field* Fp = Field::finite(p.get_ui(), 1);
    std::vector<Scalar> c;
    for (auto& v : a) c.push_back(Scalar(Fp, mpq_class(v)));
    UPoly gp(Fp, c);
    if (ugcd(gp, gp.derivative()).degree() > 0) continue;
    for (const auto& r0 : fq_roots(gp)) {
      mpz_class r = static_cast<unsigned long>(r0.code());
      mpz_class m = p;
      while (m <= bound) {
        mpz_class m2 = m * m;
        mpz_class fv = zeval(a, r, m2), dv = zeval(da, r, m2), inv;
        if (mpz_invert(inv.get_mpz_t(), dv.get_mpz_t(), m2.get_mpz_t()) == 0) break;
        r = r - fv * inv;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m2.get_mpz_t());
        m = m2;
      }
      // Rational reconstruction of r mod m with numerator bound a0.
      mpz_class r0z = m, r1 = r, s0 = 0, s1 = 1;
      while (r1 > a0) {
        mpz_class qq = r0z / r1;
        mpz_class t = r0z - qq * r1;
        r0z = r1;
        r1 = t;
        t = s0 - qq * s1;
        s0 = s1;
        s1 = t;
      }
      if (s1 == 0) continue;
      mpq_class cand(r1, s1);
      cand.canonicalize();
      Scalar sc(Q, cand);
      if (g.eval(sc).is_zero()) out.push_back(sc);
      mpq_class candn(r1 - m, s1);
      candn.canonicalize();
      Scalar scn(Q, candn);
      if (r1 != 0 && g.eval(scn).is_zero()) out.push_back(scn);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  throw std::logic_error("no suitable prime for rational root search");
}

}  // namespace

std::vector<Scalar> distinct_roots(const UPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  if (f.field()->is_rational()) {
    UPoly sq = f;
    UPoly g = ugcd(f, f.derivative());
    if (g.degree() > 0) sq = divmod(f, g).first;
    return q_roots_squarefree(sq);
  }
  auto r = fq_roots(f);
  std::sort(r.begin(), r.end());
  return r;
}

LinearSplit split_linear(const UPoly& f) {
  LinearSplit s{{}, f};
  for (const auto& r : distinct_roots(f)) {
    UPoly lin = UPoly::linear(Scalar(f.field(), 1L), -r);
    int m = 0;
    for (;;) {
      auto [q, rem] = divmod(s.residual, lin);
      if (!rem.is_zero()) break;
      s.residual = q;
      ++m;
    }
    s.roots.push_back({r, m});
  }
  return s;
}

int splitting_degree(const UPoly& residual) {
  const Field* F = residual.field();
  if (F->is_rational()) throw std::invalid_argument("splitting degree over QQ");
  if (residual.degree() <= 0) return 1;
  // Distinct-degree factorisation; each detected factor is stripped with all its copies.
  UPoly g = residual.monic();
  int result = 1;
  UPoly x = UPoly::x(F);
  UPoly h = x;
  mpz_class q = static_cast<unsigned long>(F->order());
  for (int k = 1; g.degree() > 0; ++k) {
    h = powmod(h, q, g);
    UPoly c = ugcd(h - x, g);
    if (c.degree() > 0) {
      result = std::lcm(result, k);
      for (;;) {
        UPoly e = ugcd(g, c);
        if (e.degree() <= 0) break;
        g = divmod(g, e).first;
      }
      if (g.degree() > 0) h = divmod(h, g).second;
    }
  }
  return result;
}

namespace {

// g with g^p = f for f a polynomial in t^p over F_q.
UPoly frobenius_root(const UPoly& f) {
  const Field* F = f.field();
  std::uint64_t p = F->characteristic();
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(F->degree() - 1));
  std::vector<Scalar> c;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) c.push_back(f.coeff(i).pow(e));
  return UPoly(F, c);
}

}  // namespace

UPoly radical(const UPoly& f) {
  const Field* F = f.field();
  if (f.degree() <= 0) return UPoly::constant(Scalar(F, 1L));
  UPoly d = f.derivative();
  if (d.is_zero()) return radical(frobenius_root(f));
  UPoly g = ugcd(f, d);
  UPoly w = divmod(f, g).first.monic();
  UPoly rest = g;
  for (;;) {
    UPoly c = ugcd(rest, w);
    if (c.degree() <= 0) break;
    rest = divmod(rest, c).first;
  }
  if (rest.degree() <= 0) return w;
  return (w * radical(frobenius_root(rest.monic()))).monic();
}

std::vector<Scalar> nth_roots(const Scalar& a, unsigned n) {
  const Field* F = a.field();
  std::vector<Scalar> c(n + 1, Scalar(F));
  c[0] = -a;
  c[n] = Scalar(F, 1L);
  return distinct_roots(UPoly(F, c));
}

}  // namespace affc
