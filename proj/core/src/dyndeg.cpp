#include "affc/dyndeg.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <random>

#include "affc/errors.hpp"

namespace affc {

namespace {

constexpr std::size_t kIterationTermBudget = 200000;

Exps ex(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  Exps e{};
  e[0] = a, e[1] = b, e[2] = c;
  return e;
}

bool is_zero_map(const PolyMap& g) {
  return std::all_of(g.components().begin(), g.components().end(), [](const Poly& p) { return p.is_zero(); });
}

// Some coordinate projection onto the variables in `mask` is equivariant and
// its induced map has a nonzero Jacobian determinant.
bool dominant_projection(const PolyMap& g, unsigned mask) {
  int n = g.target_dim();
  std::vector<int> idx(n, -1);
  int m = 0;
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1u) idx[i] = m++;
  const Field* F = g.field();
  std::vector<Poly> img;
  for (int i = 0; i < n; ++i) img.push_back(idx[i] >= 0 ? Poly::var(F, m, idx[i]) : Poly(F, m));
  std::vector<Poly> h;
  for (int i = 0; i < n; ++i) {
    if (idx[i] < 0) continue;
    if (g[i].support() & ~mask) return false;
    h.push_back(g[i].subst(img));
  }
  return !jacobian_det(PolyMap(h)).is_zero();
}

// The twelve dynamical degrees of cubic automorphisms of A^3.
std::vector<QuadNum> degree3_values() {
  std::vector<QuadNum> out;
  for (const char* s : {"1", "sqrt(2)", "(1+sqrt(5))/2", "sqrt(3)", "2", "(1+sqrt(13))/2", "1+sqrt(2)",
                        "sqrt(6)", "(1+sqrt(17))/2", "1+sqrt(3)", "(3+sqrt(5))/2", "3"})
    out.push_back(QuadNum::parse(s));
  return out;
}

// Weight vectors the case analysis uses for theta, then a grid in Q(theta).
std::vector<WeightVector> weight_candidates(const QuadNum& t) {
  std::vector<std::vector<QuadNum>> raw = {{1, 3, t},     {t + 1, 1, t}, {2, 1, t}, {1, t - 2, t - 1},
                                           {1, 1, t},     {1, 2, t},     {1, 1, 1}};
  std::vector<QuadNum> grid = {1, 2, 3, QuadNum(mpq_class(1, 2)), QuadNum(mpq_class(1, 3)), t, t * t, t * t * t,
                               t.inverse(), (t * t).inverse(), t - 1, t - 2, t + 1, t * 2, t / 2, (t - 1) / t};
  for (const auto& b : grid)
    for (const auto& c : grid) raw.push_back({1, b, c});
  std::vector<WeightVector> out;
  for (auto& w : raw) {
    WeightVector mu{w};
    if (mu.positive()) out.push_back(mu);
  }
  return out;
}

std::optional<DynDegCertificate> search_certificate(const PolyMap& f) {
  auto values = degree3_values();
  for (const auto& t : values) {
    if (t <= 1) continue;
    for (const auto& mu : weight_candidates(t)) {
      auto th = mu_degree_of_map(f, mu);
      if (!th || *th <= 1 || std::find(values.begin(), values.end(), *th) == values.end()) continue;
      CertifyResult r = certify(f, mu, 0);
      if (r.certificate && r.certificate->proven()) return r.certificate;
    }
  }
  return std::nullopt;
}

AffineMap perm(const Field* F, const std::vector<int>& p) { return AffineMap::permutation(F, p); }

bool conjugate_triangular(const PolyMap& h) {
  const Field* F = h.field();
  std::vector<int> p = {0, 1, 2};
  do {
    AffineMap P = perm(F, p);
    PolyMap c = compose(compose(P.to_polymap(), h), invert_affine(P).to_polymap());
    if (is_triangular(c)) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

LambdaValue upper_bound_only(const PolyMap& f, int r_max) {
  LambdaValue out;
  out.analysed = f;
  out.provenance = LambdaValue::Provenance::UpperBoundOnly;
  try {
    out.bounds = estimate(f, r_max);
  } catch (const BudgetExceeded& e) {
    if (e.partial.empty()) throw;
    out.bounds = estimate_from_degrees(e.partial);
  }
  out.value = QuadNum(out.bounds->fekete.hi);
  return out;
}

// Inputs equivalent to a triangular map, or reduced to an affine-triangular
// conjugate by the case analysis.
LambdaValue triangular_route(const PolyMap& f, const std::optional<PolyMap>& conj, int r_max,
                             const std::string& tag) {
  LambdaValue out;
  for (const PolyMap* h : {&f, conj ? &*conj : nullptr}) {
    if (h && conjugate_triangular(*h)) {
      out.value = 1;
      out.provenance = LambdaValue::Provenance::DecisionTree;
      out.tag = tag + ":triangular";
      out.analysed = *h;
      return out;
    }
  }
  for (const PolyMap* h : {&f, conj ? &*conj : nullptr}) {
    if (!h) continue;
    if (auto c = search_certificate(*h)) {
      out.value = c->theta;
      out.provenance = LambdaValue::Provenance::Certificate;
      out.tag = tag;
      out.analysed = *h;
      out.certificate = std::move(c);
      return out;
    }
  }
  out = upper_bound_only(f, r_max);
  out.tag = tag;
  return out;
}

// f = alpha o g, g = (x + yz + z*a(x,z) + xi*z, y + a(x,z) + r(z), z).
struct Normalized {
  const Field* G;
  AffineMap alpha;
  PolyMap g;

  PolyMap f() const { return compose(alpha.to_polymap(), g); }
  Scalar A(int i, int j) const { return alpha.A[i][j]; }
  // Replaces f by k o f o k^-1.
  void conj(const AffineMap& k) {
    alpha = affine_compose(k, alpha);
    g = compose(g, invert_affine(k).to_polymap());
  }
  // x_i -> x_i - c*x_j
  void shear(int i, int j, const Scalar& c) {
    AffineMap k = AffineMap::identity(G, 3);
    k.A[i][j] = -c;
    conj(k);
  }
  Scalar a0() const { return g[0].coeff(ex(2, 0, 1)); }
  Scalar a1() const { return g[0].coeff(ex(1, 0, 2)); }
  Scalar a2() const { return g[0].coeff(ex(0, 0, 3)); }
  bool cubic_r() const { return !g[1].coeff(ex(0, 0, 3)).is_zero(); }
};

LambdaValue tree_result(const Normalized& s, const QuadNum& v, const std::string& tag,
                        std::optional<WeightVector> mu) {
  LambdaValue out;
  out.value = v;
  out.provenance = LambdaValue::Provenance::DecisionTree;
  out.tag = tag;
  out.analysed = s.f();
  if (mu && mu->positive()) {
    CertifyResult r = certify(out.analysed, *mu, 0);
    if (r.certificate && r.certificate->proven()) {
      if (r.certificate->theta != v) throw WitnessFailure("certificate contradicts case analysis for " + tag);
      out.certificate = std::move(r.certificate);
    }
  }
  return out;
}

LambdaValue decision_tree(Normalized s, int r_max) {
  const QuadNum sqrt2 = QuadNum::sqrt_of(2), sqrt3 = QuadNum::sqrt_of(3);
  auto half = [](const QuadNum& q) { return q / QuadNum(2); };

  if (s.A(2, 0).is_zero() && s.A(2, 1).is_zero())
    return tree_result(s, s.a0().is_zero() ? 1 : 2, "z-invariant", std::nullopt);

  if (s.cubic_r()) {
    // Not algebraically stable exactly when a shear x -> x - m*z makes
    // alpha^*(x) a polynomial in z and kills z^3 in f_3.
    std::optional<Scalar> m;
    if (!s.A(2, 0).is_zero()) {
      Scalar c = s.A(0, 0) / s.A(2, 0);
      if (s.A(0, 1) == c * s.A(2, 1)) m = c;
    } else if (s.A(0, 0).is_zero()) {
      m = s.A(0, 1) / s.A(2, 1);
    }
    if (m) {
      Normalized t = s;
      t.shear(0, 2, *m);
      if (t.f()[2].coeff(ex(0, 0, 3)).is_zero()) {
        QuadNum v = t.a1().is_zero() ? half(1 + QuadNum::sqrt_of(13)) : 1 + sqrt2;
        return tree_result(t, v, t.a1().is_zero() ? "cubic-r:a1=0" : "cubic-r:a1!=0",
                           WeightVector{{1, 3, v}});
      }
    }
    return tree_result(s, 3, "algebraically-stable", std::nullopt);
  }

  {
    std::vector<Scalar> q = {s.A(0, 0), s.A(1, 0), s.A(2, 0)};
    PolyMap f = s.f();
    for (const auto& c : f.components())
      if (!c.homogeneous_part(3).eval(q).is_zero()) return tree_result(s, 3, "algebraically-stable", std::nullopt);
  }

  if (s.A(0, 0).is_zero() && s.A(2, 0).is_zero()) {
    s.shear(0, 2, s.A(0, 1) / s.A(2, 1));
    return triangular_route(s.f(), std::nullopt, r_max, "conjugate-affine-triangular");
  }

  if (s.A(2, 0).is_zero()) {
    s.shear(1, 0, s.A(1, 0) / s.A(0, 0));
    s.shear(1, 2, s.A(1, 1) / s.A(2, 1));
    bool a0 = !s.a0().is_zero();
    QuadNum v = a0 ? 1 + sqrt3 : 1 + sqrt2;
    return tree_result(s, v, a0 ? "2a:a0!=0" : "2a:a0=0", WeightVector{{v + 1, 1, v}});
  }

  Scalar inv = s.A(2, 0).inverse();
  {
    AffineMap k = AffineMap::identity(s.G, 3);
    k.A[0][2] = -(s.A(0, 0) * inv);
    k.A[1][2] = -(s.A(1, 0) * inv);
    s.conj(k);
  }
  if (!s.a2().is_zero()) throw WitnessFailure("z^3 survives in the first component after normalization");
  bool a1 = !s.a1().is_zero();
  if (!s.A(0, 1).is_zero()) {
    s.shear(1, 0, s.A(1, 1) / s.A(0, 1));
    bool eps = !s.f()[0].coeff(ex(0, 0, 2)).is_zero();
    if (a1 && eps) {
      QuadNum v = 1 + sqrt3;
      return tree_result(s, v, "2b:a1!=0,eps!=0", WeightVector{{2, 1, v}});
    }
    if (a1) {
      QuadNum v = half(3 + QuadNum::sqrt_of(5));
      return tree_result(s, v, "2b:a1!=0,eps=0", WeightVector{{1, v - 2, v - 1}});
    }
    if (eps) {
      QuadNum v = half(1 + QuadNum::sqrt_of(17));
      return tree_result(s, v, "2b:a1=0,eps!=0", WeightVector{{2, 1, v}});
    }
    return tree_result(s, 2, "2b:a1=0,eps=0", WeightVector{{1, 1, 2}});
  }
  if (a1) {
    QuadNum v = 1 + sqrt2;
    return tree_result(s, v, "2c", WeightVector{{1, 2, v}});
  }
  return triangular_route(s.f(), std::nullopt, r_max, "conjugate-affine-triangular-deg2");
}

// Degree bracket for iterates too large to expand. Restricting f^r to a line
// and reducing modulo a prime can only lower the degree; propagating degrees
// through the terms of f without cancellation can only raise it.
namespace bracket {

constexpr std::uint64_t P = 998244353, ROOT = 3;
using UPol = std::vector<std::uint64_t>;

std::uint64_t pw(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (b %= P; e; e >>= 1, b = b * b % P)
    if (e & 1) r = r * b % P;
  return r;
}

void ntt(UPol& a, bool inverse) {
  std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = pw(ROOT, (P - 1) / len);
    if (inverse) w = pw(w, P - 2);
    for (std::size_t i = 0; i < n; i += len) {
      std::uint64_t wn = 1;
      for (std::size_t k = 0; k < len / 2; ++k, wn = wn * w % P) {
        std::uint64_t u = a[i + k], v = a[i + k + len / 2] * wn % P;
        a[i + k] = u + v < P ? u + v : u + v - P;
        a[i + k + len / 2] = u >= v ? u - v : u + P - v;
      }
    }
  }
  if (inverse) {
    std::uint64_t ni = pw(n, P - 2);
    for (auto& x : a) x = x * ni % P;
  }
}

void trim(UPol& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

UPol mul(const UPol& a, const UPol& b) {
  if (a.empty() || b.empty()) return {};
  std::size_t need = a.size() + b.size() - 1;
  UPol r;
  if (std::min(a.size(), b.size()) < 32) {
    r.assign(need, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % P;
  } else {
    std::size_t n = 1;
    while (n < need) n <<= 1;
    UPol fa(a), fb(b);
    fa.resize(n), fb.resize(n);
    ntt(fa, false), ntt(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] = fa[i] * fb[i] % P;
    ntt(fa, true);
    fa.resize(need);
    r = std::move(fa);
  }
  trim(r);
  return r;
}

std::optional<std::uint64_t> reduce(const Scalar& s) {
  const mpq_class& q = s.rat();
  mpz_class d = q.get_den() % mpz_class(static_cast<unsigned long>(P));
  if (d == 0) return std::nullopt;
  mpz_class n = q.get_num() % mpz_class(static_cast<unsigned long>(P));
  if (n < 0) n += static_cast<unsigned long>(P);
  return n.get_ui() * pw(d.get_ui(), P - 2) % P;
}

// Degrees of f^1, ..., f^r_max restricted to a pseudo-random line, or nullopt
// when a coefficient does not reduce. Characteristic 0 only.
std::optional<std::vector<int>> line_degrees(const PolyMap& f, int r_max, std::uint64_t seed) {
  int n = f.source_dim();
  std::vector<std::vector<std::pair<std::uint64_t, Exps>>> terms(f.target_dim());
  for (int i = 0; i < f.target_dim(); ++i)
    for (const auto& t : f[i].terms()) {
      auto c = reduce(t.c);
      if (!c) return std::nullopt;
      terms[i].push_back({*c, t.e});
    }
  std::mt19937_64 rng(seed);
  std::vector<UPol> cur(n);
  for (int j = 0; j < n; ++j) {
    cur[j] = {rng() % P, 1 + rng() % (P - 1)};
    trim(cur[j]);
  }
  std::vector<int> out;
  for (int r = 1; r <= r_max; ++r) {
    std::vector<std::vector<UPol>> powers(n, std::vector<UPol>{UPol{1}});
    std::vector<UPol> next;
    int deg = -1;
    for (const auto& comp : terms) {
      UPol acc;
      for (const auto& [c, e] : comp) {
        UPol prod{c};
        for (int j = 0; j < n; ++j) {
          while (powers[j].size() <= e[j]) powers[j].push_back(mul(powers[j].back(), cur[j]));
          if (e[j]) prod = mul(prod, powers[j][e[j]]);
        }
        if (prod.size() > acc.size()) acc.resize(prod.size(), 0);
        for (std::size_t k = 0; k < prod.size(); ++k) acc[k] = (acc[k] + prod[k]) % P;
      }
      trim(acc);
      deg = std::max(deg, static_cast<int>(acc.size()) - 1);
      next.push_back(std::move(acc));
    }
    cur = std::move(next);
    out.push_back(deg);
  }
  return out;
}

// Per-component degree bounds of f^r from those of f^(r-1), ignoring
// cancellation; -1 marks a zero component.
std::vector<long> propagate(const PolyMap& f, const std::vector<long>& prev) {
  std::vector<long> out;
  for (const auto& p : f.components()) {
    long best = -1;
    for (const auto& t : p.terms()) {
      long s = 0;
      bool zero = false;
      for (int j = 0; j < f.source_dim(); ++j) {
        if (!t.e[j]) continue;
        if (prev[j] < 0) zero = true;
        s += static_cast<long>(t.e[j]) * prev[j];
      }
      if (!zero) best = std::max(best, s);
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace bracket

std::optional<std::tuple<unsigned, unsigned, unsigned>> match_shift(const PolyMap& f) {
  for (unsigned a = 0; a <= 3; ++a)
    for (unsigned b = 0; a + b <= 3; ++b)
      for (unsigned c = 0; c <= 3; ++c)
        if ((a || (b && c)) && f == shift_map(f.field(), a, b, c)) return std::tuple{a, b, c};
  return std::nullopt;
}

}  // namespace

std::optional<QuadNum> mu_degree_of_map(const PolyMap& f, const WeightVector& mu) {
  if (static_cast<int>(mu.w.size()) != f.source_dim() || f.target_dim() != f.source_dim())
    throw DimensionMismatch("weight vector length differs from the map's dimension");
  for (const auto& w : mu.w)
    if (w.sign() < 0) throw std::invalid_argument("weights must be non-negative");
  QuadNum theta = 0;
  for (int i = 0; i < f.target_dim(); ++i) {
    auto d = mu_degree(f[i], mu);
    if (!d || d->sign() <= 0) continue;
    if (mu.w[i].sign() == 0) return std::nullopt;
    QuadNum r = *d / mu.w[i];
    if (r > theta) theta = r;
  }
  return theta;
}

PolyMap mu_leading_part_of_map(const PolyMap& f, const WeightVector& mu) {
  auto theta = mu_degree_of_map(f, mu);
  if (!theta) throw std::invalid_argument("mu-degree is infinite");
  std::vector<Poly> out;
  for (int i = 0; i < f.target_dim(); ++i) out.push_back(mu_part(f[i], mu, *theta * mu.w[i]));
  return PolyMap(out);
}

const char* evidence_name(DynDegCertificate::Evidence e) {
  switch (e) {
    case DynDegCertificate::Evidence::MonomialMap: return "monomial-map";
    case DynDegCertificate::Evidence::DominantLeadingPart: return "dominant-leading-part";
    default: return "bounded-iteration";
  }
}

CertifyResult certify(const PolyMap& f, const WeightVector& mu, int r_max) {
  CertifyResult out;
  auto theta = mu_degree_of_map(f, mu);
  if (!theta) {
    out.reason = "mu-degree is infinite";
    return out;
  }
  if (*theta <= 1) {
    out.reason = "mu-degree " + theta->str() + " is not greater than 1";
    return out;
  }
  DynDegCertificate c;
  c.mu = mu;
  c.theta = *theta;
  c.leading_part = mu_leading_part_of_map(f, mu);
  const PolyMap& g = c.leading_part;
  int n = g.target_dim();

  // Monomials with nonzero coefficients compose to monomials with nonzero
  // coefficients, so no iterate vanishes.
  bool monomial = true;
  for (const auto& p : g.components()) monomial = monomial && p.size() == 1;
  if (monomial) {
    c.evidence = DynDegCertificate::Evidence::MonomialMap;
    for (const auto& p : g.components()) {
      std::vector<int> row;
      for (int j = 0; j < n; ++j) row.push_back(static_cast<int>(p.leading().e[j]));
      c.exponent_matrix.push_back(row);
    }
    out.certificate = std::move(c);
    return out;
  }

  // pi o g = h o pi with h dominant gives pi o g^r = h^r o pi != 0.
  if (g.field()->characteristic() == 0) {
    std::vector<unsigned> masks;
    for (unsigned m = (1u << n) - 1; m; --m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(),
                     [](unsigned a, unsigned b) { return __builtin_popcount(a) > __builtin_popcount(b); });
    for (unsigned m : masks)
      if (dominant_projection(g, m)) {
        c.evidence = DynDegCertificate::Evidence::DominantLeadingPart;
        for (int i = 0; i < n; ++i)
          if (m >> i & 1u) c.projection.push_back(i);
        out.certificate = std::move(c);
        return out;
      }
  }

  if (r_max <= 0) {
    out.reason = "no structural evidence that the leading part never iterates to zero";
    return out;
  }
  PolyMap h = g;
  for (int r = 1; r <= r_max; ++r) {
    if (is_zero_map(h)) {
      out.reason = "leading part iterates to zero at r = " + std::to_string(r);
      return out;
    }
    if (r == r_max) break;
    h = compose(g, h);
    if (h.term_count() > kIterationTermBudget) {
      out.reason = "term budget exceeded at r = " + std::to_string(r + 1);
      return out;
    }
  }
  c.evidence = DynDegCertificate::Evidence::BoundedIteration;
  c.iterations_checked = r_max;
  out.certificate = std::move(c);
  return out;
}

QuadNum lambda_shift(unsigned a, unsigned b, unsigned c) {
  if (a == 0 && (b == 0 || c == 0)) throw ZeroValue("a = 0 and b*c = 0 give the value 0");
  mpz_class A = a, disc = A * A + 4 * mpz_class(b) * mpz_class(c);
  return (QuadNum(A) + QuadNum::sqrt_of(disc)) / QuadNum(2);
}

PolyMap shift_map(const Field* F, unsigned a, unsigned b, unsigned c) {
  Poly x = Poly::var(F, 3, 0), y = Poly::var(F, 3, 1), z = Poly::var(F, 3, 2);
  return PolyMap({z + x.pow(a) * y.pow(b), y + x.pow(c), x});
}

Estimate estimate_from_degrees(const std::vector<int>& degrees) {
  if (degrees.empty()) throw std::invalid_argument("no iterates to estimate from");
  Estimate e;
  e.degrees = degrees;
  e.expanded = static_cast<int>(degrees.size());
  const mpz_class den = 1000000;
  for (std::size_t r = 1; r <= degrees.size(); ++r) {
    RationalInterval iv = kth_root_interval(mpq_class(degrees[r - 1]), static_cast<unsigned>(r), den);
    if (r == 1 || iv.hi < e.fekete.hi) {
      e.fekete = iv;
      e.fekete_r = static_cast<int>(r);
    }
  }
  std::size_t R = degrees.size();
  e.ratio = R >= 2 ? mpq_class(degrees[R - 1], degrees[R - 2]) : mpq_class(degrees[0]);
  e.ratio.canonicalize();
  return e;
}

Estimate estimate(const PolyMap& f, int r_max, std::size_t term_budget) {
  if (r_max < 1) throw std::invalid_argument("r_max must be positive");
  std::vector<int> degs;
  try {
    degs = iterate_degrees(f, r_max, term_budget);
  } catch (const BudgetExceeded& e) {
    degs = e.partial;
  }
  int expanded = static_cast<int>(degs.size());
  if (expanded < r_max) {
    if (f.field()->characteristic() != 0) throw BudgetExceeded(degs);
    std::vector<int> lower(r_max, -1);
    for (std::uint64_t seed : {0x9e3779b97f4a7c15ull, 0xd1b54a32d192ed03ull}) {
      auto l = bracket::line_degrees(f, r_max, seed);
      if (!l) throw BudgetExceeded(degs);
      for (int r = 0; r < r_max; ++r) lower[r] = std::max(lower[r], (*l)[r]);
    }
    std::vector<long> comp;
    for (const auto& p : f.components()) comp.push_back(p.degree());
    for (int r = 2; r <= expanded; ++r) comp = bracket::propagate(f, comp);
    for (int r = expanded + 1; r <= r_max; ++r) {
      if (r > 1) comp = bracket::propagate(f, comp);
      long upper = *std::max_element(comp.begin(), comp.end());
      // deg f^(a+b) <= deg f^a * deg f^b
      for (int a = 1; a < r; ++a) upper = std::min(upper, static_cast<long>(degs[a - 1]) * degs[r - a - 1]);
      if (lower[r - 1] != upper) throw BudgetExceeded(degs);
      degs.push_back(static_cast<int>(upper));
    }
  }
  Estimate e = estimate_from_degrees(degs);
  e.expanded = expanded;
  return e;
}

const char* provenance_name(LambdaValue::Provenance p) {
  switch (p) {
    case LambdaValue::Provenance::Certificate: return "certificate";
    case LambdaValue::Provenance::ClosedFormula: return "closed-formula";
    case LambdaValue::Provenance::DecisionTree: return "decision-tree";
    default: return "upper-bound-only";
  }
}

LambdaValue lambda_deg3(const PolyMap& f, int r_max) {
  if (f.source_dim() != 3 || f.target_dim() != 3) throw DimensionMismatch("automorphisms of A^3 expected");
  if (f.degree() > 3) throw DegreeTooHigh("the case analysis covers degree at most 3");
  if (is_affine(f)) {
    if (mat_det(AffineMap::from_polymap(f).A).is_zero()) throw NotInvertible("affine map with singular linear part");
    LambdaValue out;
    out.value = 1;
    out.provenance = LambdaValue::Provenance::DecisionTree;
    out.tag = "affine";
    out.analysed = f;
    return out;
  }
  if (auto abc = match_shift(f)) {
    auto [a, b, c] = *abc;
    LambdaValue out;
    out.value = lambda_shift(a, b, c);
    out.provenance = LambdaValue::Provenance::ClosedFormula;
    out.tag = "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    out.analysed = f;
    return out;
  }
  Classification cl;
  try {
    cl = classify_system(f);
  } catch (const FieldExtensionNeeded& e) {
    // The case analysis needs a root outside Q; only the bound is available.
    LambdaValue out = upper_bound_only(f, r_max);
    out.tag = e.what();
    return out;
  }
  if (!cl.accepted) throw NotInvertible("not an automorphism: " + cl.rejection.stage + " (" + cl.rejection.detail + ")");
  const ClassOutcome& o = cl.outcome;
  AffineMap ba = affine_compose(o.beta, o.alpha);
  if (o.family == 10)
    return triangular_route(f, compose(ba.to_polymap(), o.normal_form), r_max, "equivalent-to-triangular");
  if (o.family != 11) throw WitnessFailure("three-component system outside families 10 and 11");
  // beta o f o beta^-1 = (beta o alpha) o N.
  return decision_tree(Normalized{o.field, ba, o.normal_form}, r_max);
}

std::vector<LambdaEntry> enumerate_lambda_set(int d, const Field* F) {
  if (d < 1 || d > 3) throw std::invalid_argument("degree must be 1, 2 or 3");
  std::map<QuadNum, LambdaEntry> found;
  // A representative of degree exactly d replaces one of lower degree.
  auto offer = [&](LambdaEntry e) {
    auto it = found.find(e.value);
    if (it == found.end())
      found.emplace(e.value, std::move(e));
    else if (it->second.representative.degree() != d && e.representative.degree() == d)
      it->second = std::move(e);
  };
  for (unsigned a = 0; a <= static_cast<unsigned>(d); ++a)
    for (unsigned b = 0; a + b <= static_cast<unsigned>(d); ++b)
      for (unsigned c = 0; c <= static_cast<unsigned>(d); ++c) {
        if (a == 0 && b * c == 0) continue;
        offer({lambda_shift(a, b, c), shift_map(F, a, b, c),
               "shift (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")"});
      }
  if (d == 3) {
    Poly x = Poly::var(F, 3, 0), y = Poly::var(F, 3, 1), z = Poly::var(F, 3, 2);
    struct Conj {
      unsigned a, b, c;
      unsigned k;
    };
    for (auto [a, b, c, k] : {Conj{0, 1, 2, 3}, Conj{1, 1, 1, 2}}) {
      PolyMap phi({x, y + z.pow(k), z}), phi_inv({x, y - z.pow(k), z});
      PolyMap g = compose(compose(phi, shift_map(F, a, b, c)), phi_inv);
      offer({lambda_shift(a, b, c), g,
             "shift (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                 ") conjugated by (x, y+z^" + std::to_string(k) + ", z)"});
    }
    const char* grid[] = {"(x+y*z+x*z^2, y+x*z, z)",     "(x+y*z+x^2*z, y+x^2, z)",
                          "(x+y*z+x*z^2, z, y+x*z+z^3)", "(z, y+x*z+z^3, x+y*z+x*z^2)",
                          "(z, y+x^2+z^3, x+y*z+x^2*z)", "(x+y*z+z*x^2, z, y+x^2)",
                          "(x+y*z+x*z^2, z, y+x*z)",     "(y+x*z+z^2, z, x+y*z+x*z^2)",
                          "(y+x*z, z, x+y*z+x*z^2)",     "(y+x^2+z^2, z, x+y*z+x^2*z)",
                          "(y+x^2, z, x+y*z+x^2*z)",     "(z, y+x*z, x+y*z+x*z^2)"};
    std::vector<PolyMap> maps;
    for (const char* s : grid) maps.push_back(PolyMap::parse(s, F));
    std::vector<std::future<LambdaValue>> jobs;
    for (const auto& m : maps) jobs.push_back(std::async(std::launch::async, [m] { return lambda_deg3(m); }));
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      LambdaValue v = jobs[i].get();
      if (v.provenance == LambdaValue::Provenance::UpperBoundOnly) continue;
      offer({v.value, maps[i], std::string("case analysis ") + v.tag});
    }
  }
  std::vector<LambdaEntry> out;
  for (auto& [v, e] : found) out.push_back(std::move(e));
  return out;
}

}  // namespace affc
