#include "affc/field.hpp"

#include <map>
#include <mutex>

#include "affc/errors.hpp"
#include "affc/upoly.hpp"

namespace affc {

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<std::uint64_t, int>, std::unique_ptr<Field>>& registry() {
  static std::map<std::pair<std::uint64_t, int>, std::unique_ptr<Field>> r;
  return r;
}

struct EmbeddingCache {
  std::mutex m;
  std::map<std::pair<const Field*, const Field*>, std::vector<std::uint64_t>> powers;
};

EmbeddingCache& embeddings() {
  static EmbeddingCache c;
  return c;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Lexicographically least monic irreducible of degree k over F_p, scanning the
// non-leading coefficients as a base-p counter whose top digit is most significant.
std::vector<std::uint64_t> least_irreducible(std::uint64_t p, int k) {
  const Field* Fp = Field::finite(p, 1);
  std::uint64_t total = ipow(p, k);
  for (std::uint64_t n = 0; n < total; ++n) {
    std::vector<std::uint64_t> c(k + 1);
    std::uint64_t t = n;
    for (int i = 0; i < k; ++i) {
      c[i] = t % p;
      t /= p;
    }
    c[k] = 1;
    if (c[0] == 0) continue;
    std::vector<Scalar> sc;
    for (auto v : c) sc.push_back(Scalar::from_code(Fp, v));
    UPoly f(Fp, sc);
    // Rabin: x^(p^k) = x mod f and gcd(x^(p^(k/r)) - x, f) = 1 for primes r | k.
    UPoly x = UPoly::x(Fp);
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
    if (!(divmod(powmod(x, pk, f) - x, f).second.is_zero())) continue;
    bool ok = true;
    for (int r = 2; r <= k && ok; ++r) {
      if (k % r) continue;
      bool prime = true;
      for (int s = 2; s * s <= r; ++s)
        if (r % s == 0) prime = false;
      if (!prime) continue;
      mpz_class e;
      mpz_ui_pow_ui(e.get_mpz_t(), p, k / r);
      UPoly g = ugcd(powmod(x, e, f) - x, f);
      if (g.degree() > 0) ok = false;
    }
    if (ok) return c;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

Field::Field(std::uint64_t p, int k) : p_(p), k_(k) {
  if (p == 0) {
    q_ = 0;
    return;
  }
  q_ = ipow(p, k);
  if (k == 1) {
    mod_ = {0, 1};
    return;
  }
  mod_ = least_irreducible(p, k);
  if (q_ <= (1u << 16)) {
    // Primitive element by search; tables make multiplication O(1).
    log_.assign(q_, 0);
    exp_.assign(2 * q_, 0);
    for (std::uint64_t cand = 2; cand < q_; ++cand) {
      std::uint64_t v = 1;
      std::uint64_t ord = 0;
      do {
        v = mul_slow(v, cand);
        ++ord;
      } while (v != 1 && ord < q_);
      if (ord != q_ - 1) continue;
      v = 1;
      for (std::uint64_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = static_cast<std::uint32_t>(v);
        exp_[i + q_ - 1] = static_cast<std::uint32_t>(v);
        log_[v] = static_cast<std::uint32_t>(i);
        v = mul_slow(v, cand);
      }
      break;
    }
  }
}

const Field* Field::rationals() {
  static Field Q(0, 1);
  return &Q;
}

const Field* Field::finite(std::uint64_t p, int k) {
  if (p < 2 || !mpz_probab_prime_p(mpz_class(static_cast<unsigned long>(p)).get_mpz_t(), 30))
    throw std::invalid_argument("characteristic must be prime: " + std::to_string(p));
  if (k < 1) throw std::invalid_argument("extension degree must be positive");
  long double qq = 1;
  for (int i = 0; i < k; ++i) qq *= static_cast<long double>(p);
  if (qq > 9.0e18L) throw std::invalid_argument("field too large");
  if (k > 1) finite(p, 1);
  {
    std::lock_guard<std::mutex> lk(registry_mutex());
    auto it = registry().find({p, k});
    if (it != registry().end()) return it->second.get();
  }
  // Build outside the lock: construction consults the prime field.
  auto f = std::make_unique<Field>(p, k);
  std::lock_guard<std::mutex> lk(registry_mutex());
  auto [it, inserted] = registry().emplace(std::make_pair(p, k), std::move(f));
  return it->second.get();
}

std::string Field::name() const {
  if (is_rational()) return "QQ";
  if (k_ == 1) return "GF(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")";
}

const Field* Field::extension(int m) const {
  if (is_rational()) throw FieldExtensionNeeded("(extension of QQ)", m);
  return finite(p_, k_ * m);
}

bool Field::embeds_into(const Field* big) const {
  if (big == this) return true;
  if (is_rational() || big->is_rational()) return false;
  return p_ == big->p_ && big->k_ % k_ == 0;
}

std::uint64_t Field::embed_code(std::uint64_t v, const Field* big) const {
  if (big == this) return v;
  if (!embeds_into(big)) throw MixedField("no embedding " + name() + " -> " + big->name());
  if (k_ == 1) return v;  // prime field sits inside every extension by digit 0
  std::vector<std::uint64_t> pw;
  {
    std::lock_guard<std::mutex> lk(embeddings().m);
    auto it = embeddings().powers.find({this, big});
    if (it != embeddings().powers.end()) pw = it->second;
  }
  if (pw.empty()) {
    std::vector<Scalar> c;
    for (auto d : mod_) c.push_back(Scalar::from_code(big, d));
    auto rs = distinct_roots(UPoly(big, c));
    if (rs.empty()) throw std::logic_error("defining polynomial has no root in extension");
    std::uint64_t rho = rs.front().code();
    pw.push_back(1);
    for (int i = 1; i < k_; ++i) pw.push_back(big->mul(pw.back(), rho));
    std::lock_guard<std::mutex> lk(embeddings().m);
    embeddings().powers[{this, big}] = pw;
  }
  auto d = digits(v);
  std::uint64_t r = 0;
  for (int i = 0; i < k_; ++i) {
    if (d[i]) r = big->add(r, big->mul(d[i], pw[i]));
  }
  return r;
}

std::vector<std::uint64_t> Field::digits(std::uint64_t v) const {
  std::vector<std::uint64_t> d(k_);
  for (int i = 0; i < k_; ++i) {
    d[i] = v % p_;
    v /= p_;
  }
  return d;
}

std::uint64_t Field::undigits(const std::vector<std::uint64_t>& d) const {
  std::uint64_t v = 0;
  for (int i = k_ - 1; i >= 0; --i) v = v * p_ + d[i];
  return v;
}

std::uint64_t Field::add(std::uint64_t a, std::uint64_t b) const {
  if (k_ == 1) {
    std::uint64_t s = a + b;
    return (s >= p_ || s < a) ? s - p_ : s;
  }
  auto da = digits(a), db = digits(b);
  for (int i = 0; i < k_; ++i) da[i] = (da[i] + db[i]) % p_;
  return undigits(da);
}

std::uint64_t Field::neg(std::uint64_t a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  auto da = digits(a);
  for (auto& x : da) x = x ? p_ - x : 0;
  return undigits(da);
}

std::uint64_t Field::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t Field::mul_slow(std::uint64_t a, std::uint64_t b) const {
  auto da = digits(a), db = digits(b);
  std::vector<std::uint64_t> prod(2 * k_ - 1, 0);
  for (int i = 0; i < k_; ++i) {
    if (!da[i]) continue;
    for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + mulmod(da[i], db[j], p_)) % p_;
  }
  for (int i = 2 * k_ - 2; i >= k_; --i) {
    std::uint64_t c = prod[i];
    if (!c) continue;
    for (int j = 0; j < k_; ++j) {
      std::uint64_t t = mulmod(c, mod_[j], p_);
      prod[i - k_ + j] = (prod[i - k_ + j] + p_ - t) % p_;
    }
    prod[i] = 0;
  }
  prod.resize(k_);
  return undigits(prod);
}

std::uint64_t Field::mul(std::uint64_t a, std::uint64_t b) const {
  if (a == 0 || b == 0) return 0;
  if (k_ == 1) return mulmod(a, b, p_);
  if (!log_.empty()) return exp_[log_[a] + log_[b]];
  return mul_slow(a, b);
}

std::uint64_t Field::pow(std::uint64_t a, mpz_class e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  std::uint64_t r = 1;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t Field::inv(std::uint64_t a) const {
  if (a == 0) throw NotInvertible("inverse of zero in " + name());
  if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, mpz_class(static_cast<unsigned long>(q_ - 2)));
}

std::string Field::code_str(std::uint64_t v) const {
  if (k_ == 1) return std::to_string(v);
  auto d = digits(v);
  std::string s;
  for (int i = k_ - 1; i >= 0; --i) {
    if (!d[i]) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) s += std::to_string(d[i]) + "*";
    s += (i == 1) ? "g" : "g^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

Scalar::Scalar(const Field* F, long v) : F_(F) {
  if (F->is_rational()) {
    q_ = v;
  } else {
    long long p = static_cast<long long>(F->characteristic());
    long long r = v % p;
    if (r < 0) r += p;
    v_ = static_cast<std::uint64_t>(r);
  }
}

Scalar::Scalar(const Field* F, const mpq_class& in) : F_(F) {
  mpq_class v = in;
  v.canonicalize();  // callers may pass an unreduced quotient
  if (F->is_rational()) {
    q_ = v;
    return;
  }
  mpz_class p = static_cast<unsigned long>(F->characteristic());
  mpz_class n, d;
  mpz_mod(n.get_mpz_t(), v.get_num_mpz_t(), p.get_mpz_t());
  mpz_mod(d.get_mpz_t(), v.get_den_mpz_t(), p.get_mpz_t());
  if (d == 0) throw NotInvertible("denominator divisible by the characteristic");
  std::uint64_t nn = n.get_ui(), dd = d.get_ui();
  v_ = F->mul(nn, F->inv(dd));
}

Scalar Scalar::from_code(const Field* F, std::uint64_t code) {
  Scalar s(F);
  s.v_ = code;
  return s;
}

// Integer fast paths skip the gcd normalisation of mpq arithmetic.
static bool integral(const mpq_class& q) { return mpz_cmp_ui(mpq_denref(q.get_mpq_t()), 1) == 0; }

static void check_same(const Scalar& a, const Scalar& b) {
  if (a.field() != b.field())
    throw MixedField("scalars over " + a.field()->name() + " and " + b.field()->name());
}

Scalar Scalar::operator-() const {
  Scalar r(F_);
  if (F_->is_rational())
    r.q_ = -q_;
  else
    r.v_ = F_->neg(v_);
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw NotInvertible("inverse of zero");
  Scalar r(F_);
  if (F_->is_rational())
    r.q_ = 1 / q_;
  else
    r.v_ = F_->inv(v_);
  return r;
}

Scalar Scalar::pow(const mpz_class& e) const {
  if (F_->is_rational()) {
    mpz_class ee = abs(e);
    if (!ee.fits_ulong_p()) throw std::overflow_error("exponent too large over QQ");
    mpq_class r;
    mpz_pow_ui(r.get_num_mpz_t(), q_.get_num_mpz_t(), ee.get_ui());
    mpz_pow_ui(r.get_den_mpz_t(), q_.get_den_mpz_t(), ee.get_ui());
    r.canonicalize();
    Scalar s(F_);
    s.q_ = (e < 0) ? mpq_class(1 / r) : r;
    return s;
  }
  return from_code(F_, F_->pow(v_, e));
}

Scalar Scalar::embed(const Field* big) const {
  if (big == F_) return *this;
  return from_code(big, F_->embed_code(v_, big));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  check_same(a, b);
  Scalar r(a.F_);
  if (a.F_->is_rational()) {
    if (integral(a.q_) && integral(b.q_))
      mpz_add(mpq_numref(r.q_.get_mpq_t()), mpq_numref(a.q_.get_mpq_t()), mpq_numref(b.q_.get_mpq_t()));
    else
      r.q_ = a.q_ + b.q_;
  }
  else
    r.v_ = a.F_->add(a.v_, b.v_);
  return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  check_same(a, b);
  Scalar r(a.F_);
  if (a.F_->is_rational()) {
    if (integral(a.q_) && integral(b.q_))
      mpz_sub(mpq_numref(r.q_.get_mpq_t()), mpq_numref(a.q_.get_mpq_t()), mpq_numref(b.q_.get_mpq_t()));
    else
      r.q_ = a.q_ - b.q_;
  }
  else
    r.v_ = a.F_->sub(a.v_, b.v_);
  return r;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  check_same(a, b);
  Scalar r(a.F_);
  if (a.F_->is_rational()) {
    if (integral(a.q_) && integral(b.q_))
      mpz_mul(mpq_numref(r.q_.get_mpq_t()), mpq_numref(a.q_.get_mpq_t()), mpq_numref(b.q_.get_mpq_t()));
    else
      r.q_ = a.q_ * b.q_;
  }
  else
    r.v_ = a.F_->mul(a.v_, b.v_);
  return r;
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

Scalar& Scalar::operator+=(const Scalar& b) {
  check_same(*this, b);
  if (F_->is_rational()) {
    if (integral(q_) && integral(b.q_))
      mpz_add(mpq_numref(q_.get_mpq_t()), mpq_numref(q_.get_mpq_t()), mpq_numref(b.q_.get_mpq_t()));
    else
      q_ += b.q_;
  }
  else
    v_ = F_->add(v_, b.v_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& b) {
  check_same(*this, b);
  if (F_->is_rational()) {
    if (integral(q_) && integral(b.q_))
      mpz_sub(mpq_numref(q_.get_mpq_t()), mpq_numref(q_.get_mpq_t()), mpq_numref(b.q_.get_mpq_t()));
    else
      q_ -= b.q_;
  }
  else
    v_ = F_->sub(v_, b.v_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& b) {
  check_same(*this, b);
  if (F_->is_rational()) {
    if (integral(q_) && integral(b.q_))
      mpz_mul(mpq_numref(q_.get_mpq_t()), mpq_numref(q_.get_mpq_t()), mpq_numref(b.q_.get_mpq_t()));
    else
      q_ *= b.q_;
  }
  else
    v_ = F_->mul(v_, b.v_);
  return *this;
}

void Scalar::add_product(const Scalar& a, const Scalar& b) {
  check_same(a, b);
  check_same(*this, a);
  if (F_->is_rational()) {
    if (integral(q_) && integral(a.q_) && integral(b.q_))
      mpz_addmul(mpq_numref(q_.get_mpq_t()), mpq_numref(a.q_.get_mpq_t()), mpq_numref(b.q_.get_mpq_t()));
    else
      q_ += a.q_ * b.q_;
  } else {
    v_ = F_->add(v_, F_->mul(a.v_, b.v_));
  }
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.F_ != b.F_) return false;
  return a.F_->is_rational() ? a.q_ == b.q_ : a.v_ == b.v_;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  check_same(a, b);
  if (a.F_->is_rational()) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  return a.v_ <=> b.v_;
}

std::string Scalar::str() const {
  if (F_->is_rational()) return q_.get_str();
  return F_->code_str(v_);
}

bool Scalar::compound() const {
  if (F_->is_rational() || F_->degree() == 1) return false;
  return str().find('+') != std::string::npos;
}

bool sequence_element(const Field* F, std::uint64_t i, Scalar& out) {
  if (F->is_rational()) {
    out = Scalar(F, static_cast<long>(i));
    return true;
  }
  if (i >= F->order()) return false;
  out = Scalar::from_code(F, i);
  return true;
}

}  // namespace affc
