#include "affc/poly.hpp"

#include <algorithm>
#include <unordered_map>

#include "affc/errors.hpp"

namespace affc {

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto v : e) d += v;
  return d;
}

namespace {

unsigned exps_degree(const Exps& e) {
  unsigned d = 0;
  for (auto v : e) d += v;
  return d;
}

struct ExpsHash {
  std::size_t operator()(const Exps& e) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : e) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using Accum = std::unordered_map<Exps, Scalar, ExpsHash>;

void check_ring(const Poly& a, const Poly& b) {
  if (a.field() != b.field())
    throw RingMismatch("polynomials over " + a.field()->name() + " and " + b.field()->name());
  if (a.nvars() != b.nvars())
    throw RingMismatch("polynomials in " + std::to_string(a.nvars()) + " and " +
                       std::to_string(b.nvars()) + " variables");
}

Exps add_exps(const Exps& a, const Exps& b) {
  Exps r;
  for (int i = 0; i < kMaxVars; ++i) r[i] = a[i] + b[i];
  return r;
}

}  // namespace

bool grlex_greater(const Exps& a, const Exps& b) {
  unsigned da = exps_degree(a), db = exps_degree(b);
  if (da != db) return da > db;
  for (int i = 0; i < kMaxVars; ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

Poly::Poly(const Field* F, int n) : F_(F), n_(n) {
  if (n < 0 || n > kMaxVars) throw std::invalid_argument("variable count out of range");
}

Poly Poly::constant(const Scalar& c, int n) {
  Poly p(c.field(), n);
  if (!c.is_zero()) p.t_.push_back({Exps{}, c});
  return p;
}

Poly Poly::constant(const Field* F, int n, long c) { return constant(Scalar(F, c), n); }

Poly Poly::var(const Field* F, int n, int i) {
  if (i < 0 || i >= n) throw std::invalid_argument("variable index out of range");
  Exps e{};
  e[i] = 1;
  return monomial(e, Scalar(F, 1L), n);
}

Poly Poly::monomial(const Exps& e, const Scalar& c, int n) {
  Poly p(c.field(), n);
  if (!c.is_zero()) p.t_.push_back({e, c});
  return p;
}

Poly Poly::from_terms(const Field* F, int n, std::vector<Term> terms) {
  Poly p(F, n);
  p.t_ = std::move(terms);
  p.canonicalize();
  return p;
}

void Poly::canonicalize() {
  std::sort(t_.begin(), t_.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.e, b.e); });
  std::vector<Term> out;
  out.reserve(t_.size());
  for (std::size_t i = 0; i < t_.size();) {
    std::size_t j = i + 1;
    Scalar c = t_[i].c;
    while (j < t_.size() && t_[j].e == t_[i].e) c += t_[j++].c;
    if (!c.is_zero()) out.push_back({t_[i].e, std::move(c)});
    i = j;
  }
  t_ = std::move(out);
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && exps_degree(t_[0].e) == 0); }

Scalar Poly::constant_term() const {
  if (!t_.empty() && exps_degree(t_.back().e) == 0) return t_.back().c;
  return Scalar(F_);
}

int Poly::degree() const { return t_.empty() ? -1 : static_cast<int>(exps_degree(t_.front().e)); }

int Poly::degree_in(int i) const {
  int d = t_.empty() ? -1 : 0;
  for (const auto& t : t_) d = std::max(d, static_cast<int>(t.e[i]));
  return d;
}

unsigned Poly::support() const {
  unsigned m = 0;
  for (const auto& t : t_)
    for (int i = 0; i < n_; ++i)
      if (t.e[i]) m |= 1u << i;
  return m;
}

Scalar Poly::coeff(const Exps& e) const {
  for (const auto& t : t_)
    if (t.e == e) return t.c;
  return Scalar(F_);
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.t_) t.c = -t.c;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  check_ring(a, b);
  Poly r(a.F_, a.n_);
  r.t_.reserve(a.t_.size() + b.t_.size());
  std::size_t i = 0, j = 0;
  while (i < a.t_.size() || j < b.t_.size()) {
    if (j == b.t_.size() || (i < a.t_.size() && grlex_greater(a.t_[i].e, b.t_[j].e))) {
      r.t_.push_back(a.t_[i++]);
    } else if (i == a.t_.size() || grlex_greater(b.t_[j].e, a.t_[i].e)) {
      r.t_.push_back(b.t_[j++]);
    } else {
      Scalar c = a.t_[i].c + b.t_[j].c;
      if (!c.is_zero()) r.t_.push_back({a.t_[i].e, c});
      ++i;
      ++j;
    }
  }
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  check_ring(a, b);
  Poly r(a.F_, a.n_);
  if (a.is_zero() || b.is_zero()) return r;
  if (a.t_.size() * b.t_.size() <= 256) {
    r.t_.reserve(a.t_.size() * b.t_.size());
    for (const auto& s : a.t_)
      for (const auto& t : b.t_) r.t_.push_back({add_exps(s.e, t.e), s.c * t.c});
    r.canonicalize();
    return r;
  }
  Accum acc;
  acc.reserve(a.t_.size() * 2 + b.t_.size() * 2);
  for (const auto& s : a.t_) {
    for (const auto& t : b.t_) {
      Exps e = add_exps(s.e, t.e);
      auto [it, fresh] = acc.try_emplace(e, a.F_);
      it->second.add_product(s.c, t.c);
      (void)fresh;
    }
  }
  r.t_.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (!c.is_zero()) r.t_.push_back({e, std::move(c)});
  std::sort(r.t_.begin(), r.t_.end(),
            [](const Term& x, const Term& y) { return grlex_greater(x.e, y.e); });
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.F_ != b.F_ || a.n_ != b.n_ || a.t_.size() != b.t_.size()) return false;
  for (std::size_t i = 0; i < a.t_.size(); ++i)
    if (a.t_[i].e != b.t_[i].e || !(a.t_[i].c == b.t_[i].c)) return false;
  return true;
}

Poly Poly::scaled(const Scalar& s) const {
  Poly r(F_, n_);
  if (s.is_zero()) return r;
  r.t_ = t_;
  for (auto& t : r.t_) t.c *= s;
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly r = constant(F_, n_, 1);
  Poly b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

Poly Poly::homogeneous_part(int d) const {
  Poly r(F_, n_);
  for (const auto& t : t_)
    if (static_cast<int>(exps_degree(t.e)) == d) r.t_.push_back(t);
  return r;
}

Poly Poly::derivative(int i) const {
  Poly r(F_, n_);
  for (const auto& t : t_) {
    if (t.e[i] == 0) continue;
    Scalar c = t.c * Scalar(F_, static_cast<long>(t.e[i]));
    if (c.is_zero()) continue;
    Exps e = t.e;
    e[i] -= 1;
    r.t_.push_back({e, c});
  }
  r.canonicalize();
  return r;
}

Poly Poly::coeff_in(int i, unsigned k) const {
  Poly r(F_, n_);
  for (const auto& t : t_) {
    if (t.e[i] != k) continue;
    Exps e = t.e;
    e[i] = 0;
    r.t_.push_back({e, t.c});
  }
  r.canonicalize();
  return r;
}

Scalar Poly::eval(const std::vector<Scalar>& pt) const {
  Scalar s(F_);
  for (const auto& t : t_) {
    Scalar m = t.c;
    for (int i = 0; i < n_; ++i)
      if (t.e[i]) m *= pt[i].pow(mpz_class(static_cast<unsigned long>(t.e[i])));
    s += m;
  }
  return s;
}

Poly Poly::embed(const Field* big) const {
  if (big == F_) return *this;
  Poly r(big, n_);
  for (const auto& t : t_) r.t_.push_back({t.e, t.c.embed(big)});
  return r;
}

Poly Poly::with_nvars(int m) const {
  for (const auto& t : t_)
    for (int i = m; i < kMaxVars; ++i)
      if (t.e[i]) throw DimensionMismatch("variable x" + std::to_string(i + 1) + " out of range");
  Poly r(F_, m);
  r.t_ = t_;
  return r;
}

Poly Poly::subst(const std::vector<Poly>& images) const {
  if (static_cast<int>(images.size()) != n_)
    throw DimensionMismatch("substitution needs " + std::to_string(n_) + " images");
  if (images.empty()) return *this;
  const Field* F = images[0].field();
  int m = images[0].nvars();
  for (const auto& g : images) {
    if (g.field() != F || g.nvars() != m) throw RingMismatch("substitution images differ in ring");
  }
  if (F != F_) throw RingMismatch("substitution changes the coefficient field");
  std::vector<std::vector<Poly>> powers(n_);
  auto power = [&](int i, unsigned k) -> const Poly& {
    auto& v = powers[i];
    if (v.empty()) v.push_back(Poly::constant(F, m, 1));
    while (v.size() <= k) v.push_back(v.back() * images[i]);
    return v[k];
  };
  Accum acc;
  for (const auto& t : t_) {
    Poly prod = Poly::constant(t.c, m);
    for (int i = 0; i < n_; ++i)
      if (t.e[i]) prod = prod * power(i, t.e[i]);
    for (const auto& s : prod.t_) {
      auto it = acc.find(s.e);
      if (it == acc.end())
        acc.emplace(s.e, s.c);
      else
        it->second += s.c;
    }
  }
  Poly r(F, m);
  for (auto& [e, c] : acc)
    if (!c.is_zero()) r.t_.push_back({e, std::move(c)});
  std::sort(r.t_.begin(), r.t_.end(),
            [](const Term& x, const Term& y) { return grlex_greater(x.e, y.e); });
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(t_.front().c.inverse());
}

Poly poly_mul(const Poly& p, const Poly& q) { return p * q; }
Poly poly_subst(const Poly& p, const std::vector<Poly>& images) { return p.subst(images); }
Poly homogeneous_part(const Poly& p, int d) { return p.homogeneous_part(d); }
Poly partial_derivative(const Poly& p, int i) { return p.derivative(i); }

bool WeightVector::positive() const {
  for (const auto& v : w)
    if (v.sign() <= 0) return false;
  return true;
}

QuadNum monomial_weight(const Exps& e, const WeightVector& mu) {
  QuadNum s;
  for (std::size_t i = 0; i < mu.w.size(); ++i)
    if (e[i]) s += mu.w[i] * QuadNum(static_cast<long>(e[i]));
  return s;
}

std::optional<QuadNum> mu_degree(const Poly& p, const WeightVector& mu) {
  if (static_cast<int>(mu.w.size()) != p.nvars())
    throw DimensionMismatch("weight vector length differs from variable count");
  std::optional<QuadNum> best;
  for (const auto& t : p.terms()) {
    QuadNum v = monomial_weight(t.e, mu);
    if (!best || v > *best) best = v;
  }
  return best;
}

Poly mu_part(const Poly& p, const WeightVector& mu, const QuadNum& r) {
  std::vector<Term> keep;
  for (const auto& t : p.terms())
    if (monomial_weight(t.e, mu) == r) keep.push_back(t);
  return Poly::from_terms(p.field(), p.nvars(), keep);
}

std::string var_name(int n, int i) {
  if (n <= 3) return std::string(1, "xyz"[i]);
  return "x" + std::to_string(i + 1);
}

}  // namespace affc
