#include "affc/algebra.hpp"

#include <algorithm>
#include <numeric>

#include "affc/errors.hpp"

namespace affc {

namespace {

bool divides_monomial(const Exps& small, const Exps& big) {
  for (int i = 0; i < kMaxVars; ++i)
    if (small[i] > big[i]) return false;
  return true;
}

Poly var_power(const Field* F, int n, int v, unsigned k) {
  Exps e{};
  e[v] = k;
  return Poly::monomial(e, Scalar(F, 1L), n);
}

// Largest variable index occurring in a or b, or -1.
int top_var(const Poly& a, const Poly& b) {
  unsigned m = a.support() | b.support();
  int v = -1;
  for (int i = 0; i < kMaxVars; ++i)
    if (m & (1u << i)) v = i;
  return v;
}

Poly gcd_rec(const Poly& a, const Poly& b);

Poly content_in(const Poly& p, int v) {
  Poly g(p.field(), p.nvars());
  for (int k = p.degree_in(v); k >= 0; --k) {
    Poly c = p.coeff_in(v, static_cast<unsigned>(k));
    if (c.is_zero()) continue;
    g = gcd_rec(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

Poly primitive_in(const Poly& p, int v) {
  Poly c = content_in(p, v);
  if (c.is_constant()) return p;
  return *divide_exact(p, c);
}

// Pseudo-remainder of a by b with respect to x_v.
Poly prem(Poly a, const Poly& b, int v) {
  int db = b.degree_in(v);
  Poly lb = b.coeff_in(v, static_cast<unsigned>(db));
  while (!a.is_zero() && a.degree_in(v) >= db) {
    int da = a.degree_in(v);
    Poly la = a.coeff_in(v, static_cast<unsigned>(da));
    a = lb * a - la * var_power(a.field(), a.nvars(), v, static_cast<unsigned>(da - db)) * b;
  }
  return a;
}

Poly gcd_rec(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly::constant(a.field(), a.nvars(), 1);
  int v = top_var(a, b);
  bool in_a = a.degree_in(v) > 0, in_b = b.degree_in(v) > 0;
  if (!in_a) return gcd_rec(a, content_in(b, v));
  if (!in_b) return gcd_rec(content_in(a, v), b);
  Poly c = gcd_rec(content_in(a, v), content_in(b, v));
  Poly pa = primitive_in(a, v), pb = primitive_in(b, v);
  for (;;) {
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    Poly r = prem(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      pb = Poly::constant(a.field(), a.nvars(), 1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_in(r, v);
  }
  return (c * primitive_in(pb, v)).monic();
}

// Fraction-free determinant of a square matrix with polynomial entries.
Poly bareiss(std::vector<std::vector<Poly>> m, const Field* F, int n) {
  std::size_t k = m.size();
  if (k == 0) return Poly::constant(F, n, 1);
  Poly prev = Poly::constant(F, n, 1);
  bool neg = false;
  for (std::size_t c = 0; c + 1 < k; ++c) {
    if (m[c][c].is_zero()) {
      std::size_t r = c + 1;
      while (r < k && m[r][c].is_zero()) ++r;
      if (r == k) return Poly(F, n);
      std::swap(m[r], m[c]);
      neg = !neg;
    }
    for (std::size_t i = c + 1; i < k; ++i) {
      for (std::size_t j = c + 1; j < k; ++j) {
        Poly t = m[i][j] * m[c][c] - m[i][c] * m[c][j];
        m[i][j] = *divide_exact(t, prev);
      }
      m[i][c] = Poly(F, n);
    }
    prev = m[c][c];
  }
  return neg ? -m[k - 1][k - 1] : m[k - 1][k - 1];
}

// Row echelon form in place; returns pivot columns.
std::vector<int> row_reduce(Mat& m) {
  std::vector<int> piv;
  if (m.empty()) return piv;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Scalar inv = m[r][c].inverse();
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    piv.push_back(static_cast<int>(c));
    ++r;
  }
  return piv;
}

}  // namespace

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw NotInvertible("division by the zero polynomial");
  const Term& lb = b.leading();
  Scalar inv = lb.c.inverse();
  Poly r = a;
  std::vector<Term> q;
  while (!r.is_zero()) {
    const Term& lr = r.leading();
    if (!divides_monomial(lb.e, lr.e)) return std::nullopt;
    Exps e;
    for (int i = 0; i < kMaxVars; ++i) e[i] = lr.e[i] - lb.e[i];
    Scalar c = lr.c * inv;
    q.push_back({e, c});
    r = r - Poly::monomial(e, c, a.nvars()) * b;
  }
  return Poly::from_terms(a.field(), a.nvars(), std::move(q));
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.field() != b.field() || a.nvars() != b.nvars()) throw RingMismatch("gcd across rings");
  return gcd_rec(a, b);
}

Poly resultant(const Poly& a, const Poly& b, int v, int da, int db) {
  if (da < 0) da = a.degree_in(v);
  if (db < 0) db = b.degree_in(v);
  const Field* F = a.field();
  int n = a.nvars();
  int k = da + db;
  if (k == 0) return Poly::constant(F, n, 1);
  std::vector<std::vector<Poly>> m(k, std::vector<Poly>(k, Poly(F, n)));
  for (int i = 0; i < db; ++i)
    for (int j = 0; j <= da; ++j) m[i][i + j] = a.coeff_in(v, static_cast<unsigned>(da - j));
  for (int i = 0; i < da; ++i)
    for (int j = 0; j <= db; ++j) m[db + i][i + j] = b.coeff_in(v, static_cast<unsigned>(db - j));
  return bareiss(std::move(m), F, n);
}

UPoly to_upoly(const Poly& p, int v) {
  const Field* F = p.field();
  std::vector<Scalar> c(std::max(p.degree_in(v), 0) + 1, Scalar(F));
  for (const auto& t : p.terms()) {
    for (int i = 0; i < kMaxVars; ++i)
      if (i != v && t.e[i]) throw std::invalid_argument("polynomial is not univariate");
    c[t.e[v]] = t.c;
  }
  return UPoly(F, c);
}

Poly from_upoly(const UPoly& u, int n, int v) {
  std::vector<Term> ts;
  for (int i = 0; i <= u.degree(); ++i) {
    if (u.coeff(i).is_zero()) continue;
    Exps e{};
    e[v] = static_cast<std::uint32_t>(i);
    ts.push_back({e, u.coeff(i)});
  }
  return Poly::from_terms(u.field(), n, std::move(ts));
}

Mat identity_matrix(const Field* F, int n) {
  Mat m(n, Vec(n, Scalar(F)));
  for (int i = 0; i < n; ++i) m[i][i] = Scalar(F, 1L);
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  const Field* F = a.empty() ? Field::rationals() : a[0][0].field();
  Mat out(r, Vec(c, Scalar(F)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t l = 0; l < k; ++l) out[i][j] += a[i][l] * b[l][j];
  return out;
}

Vec mat_vec(const Mat& a, const Vec& v) {
  Vec out;
  for (const auto& row : a) {
    Scalar s(v.empty() ? row[0].field() : v[0].field());
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * v[j];
    out.push_back(s);
  }
  return out;
}

int mat_rank(Mat m) { return static_cast<int>(row_reduce(m).size()); }

Scalar mat_det(Mat m) {
  std::size_t n = m.size();
  Scalar d(n ? m[0][0].field() : Field::rationals(), 1L);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return Scalar(d.field());
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    Scalar inv = m[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      Scalar f = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

std::optional<Mat> mat_inverse(Mat m) {
  std::size_t n = m.size();
  if (n == 0) return m;
  const Field* F = m[0][0].field();
  for (std::size_t i = 0; i < n; ++i) {
    m[i].resize(2 * n, Scalar(F));
    m[i][n + i] = Scalar(F, 1L);
  }
  auto piv = row_reduce(m);
  if (piv.size() < n || piv[n - 1] != static_cast<int>(n - 1)) return std::nullopt;
  Mat out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].assign(m[i].begin() + static_cast<long>(n), m[i].end());
  return out;
}

std::vector<Vec> mat_kernel(Mat m, const Field* F, int cols) {
  auto piv = row_reduce(m);
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<Vec> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    Vec v(cols, Scalar(F));
    v[f] = Scalar(F, 1L);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
    basis.push_back(v);
  }
  return basis;
}

std::optional<Vec> mat_solve(Mat a, Vec b) {
  std::size_t rows = a.size();
  if (rows == 0) return Vec{};
  std::size_t cols = a[0].size();
  const Field* F = a[0][0].field();
  for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  auto piv = row_reduce(a);
  if (!piv.empty() && piv.back() == static_cast<int>(cols)) return std::nullopt;
  Vec x(cols, Scalar(F));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = a[r][cols];
  return x;
}

Mat mat_embed(const Mat& m, const Field* big) {
  Mat out = m;
  for (auto& row : out)
    for (auto& v : row) v = v.embed(big);
  return out;
}

std::string minpoly_str(const UPoly& u) { return u.monic().str("t"); }

BinaryRoots rational_binary_roots(const Poly& p, int i, int j) {
  const Field* F = p.field();
  BinaryRoots out;
  out.field = F;
  out.residual = UPoly(F);
  if (p.is_zero()) throw std::invalid_argument("roots of the zero form");
  int minf = p.degree_in(j);
  std::vector<Scalar> c(p.degree() + 1, Scalar(F));
  for (const auto& t : p.terms()) {
    for (int v = 0; v < kMaxVars; ++v)
      if (v != i && v != j && t.e[v]) throw std::invalid_argument("form has more than two variables");
    if (t.e[i] + t.e[j] != static_cast<unsigned>(p.degree()))
      throw std::invalid_argument("form is not homogeneous");
    minf = std::min(minf, static_cast<int>(t.e[j]));
    c[t.e[i]] = t.c;
  }
  UPoly u(F, c);
  auto sp = split_linear(u);
  for (const auto& [r, m] : sp.roots) out.roots.push_back({r, Scalar(F, 1L), m});
  if (minf > 0) out.roots.push_back({Scalar(F, 1L), Scalar(F), minf});
  out.residual = sp.residual;
  return out;
}

const Field* splitting_field(const UPoly& u) {
  const Field* F = u.field();
  if (u.degree() <= 0) return F;
  auto sp = split_linear(u);
  if (sp.residual.degree() <= 0) return F;
  if (F->is_rational()) throw FieldExtensionNeeded(minpoly_str(sp.residual), sp.residual.degree());
  int m = splitting_degree(sp.residual);
  try {
    return F->extension(m);
  } catch (const std::invalid_argument&) {
    throw FieldExtensionNeeded(minpoly_str(sp.residual), sp.residual.degree());
  }
}

const Field* common_extension(const Field* a, const Field* b) {
  if (a == b) return a;
  if (a->is_rational() || b->is_rational() || a->characteristic() != b->characteristic())
    throw MixedField("no common field for " + a->name() + " and " + b->name());
  return Field::finite(a->characteristic(), std::lcm(a->degree(), b->degree()));
}

BinaryRoots binary_form_roots(const Poly& p, int i, int j) {
  BinaryRoots r = rational_binary_roots(p, i, j);
  if (r.residual.degree() <= 0) return r;
  const Field* big = splitting_field(r.residual);
  return rational_binary_roots(p.embed(big), i, j);
}

namespace {

// Linear forms dividing a homogeneous f in n <= 3 variables, each found once.
std::vector<Poly> linear_form_candidates(const Poly& f) {
  const Field* F = f.field();
  int n = f.nvars();
  std::vector<Poly> out;
  for (int v = 0; v < n; ++v) {
    Poly xv = Poly::var(F, n, v);
    if (divide_exact(f, xv)) out.push_back(xv);
  }
  if (!out.empty()) return out;
  for (int lead = 0; lead < n; ++lead) {
    // Forms x_lead + sum_{j > lead} b_j x_j.
    std::vector<std::vector<Scalar>> choices;
    bool ok = true;
    for (int j = lead + 1; j < n; ++j) {
      // f restricted to the (x_lead, x_j) coordinate line gives b_j.
      std::vector<Poly> img(n, Poly(F, n));
      img[lead] = Poly::var(F, n, lead);
      img[j] = Poly::var(F, n, j);
      Poly g = f.subst(img);
      if (g.is_zero()) {
        ok = false;
        break;
      }
      auto br = rational_binary_roots(g, lead, j);
      std::vector<Scalar> bs;
      // x_lead + b x_j vanishes at (a, 1) when b = -a; the root [1:0] is x_j itself.
      for (const auto& r : br.roots)
        if (!r.b.is_zero()) bs.push_back(-r.a);
      choices.push_back(bs);
    }
    if (!ok) continue;
    std::vector<std::size_t> idx(choices.size(), 0);
    bool empty = false;
    for (const auto& c : choices)
      if (c.empty()) empty = true;
    if (empty) continue;
    for (;;) {
      Poly l = Poly::var(F, n, lead);
      for (std::size_t k = 0; k < choices.size(); ++k)
        l += Poly::var(F, n, lead + 1 + static_cast<int>(k)).scaled(choices[k][idx[k]]);
      if (divide_exact(f, l)) out.push_back(l);
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  return out;
}

}  // namespace

LinearFactors linear_factors(const Poly& f) {
  const Field* F = f.field();
  int n = f.nvars();
  LinearFactors res{{}, f};
  if (f.degree() <= 0) return res;
  for (;;) {
    Poly top = res.cofactor.homogeneous_part(res.cofactor.degree());
    if (res.cofactor.degree() <= 0) break;
    bool found = false;
    for (const Poly& l : linear_form_candidates(top)) {
      // Solve for the constant c with (l + c) | cofactor using a fresh variable t.
      int lead = 0;
      while (l.degree_in(lead) == 0) ++lead;
      if (n + 1 > kMaxVars) throw DimensionMismatch("too many variables for linear factor search");
      int m = n + 1;
      std::vector<Poly> img;
      Poly t = Poly::var(F, m, n);
      for (int i = 0; i < n; ++i) img.push_back(Poly::var(F, m, i));
      // x_lead = -(l - x_lead) - t
      img[lead] = -(l.with_nvars(m) - Poly::var(F, m, lead)) - t;
      Poly g = res.cofactor.subst(img);
      // Every coefficient of g in the x_i must vanish at t = -c.
      UPoly acc(F);
      std::vector<std::pair<Exps, std::vector<Term>>> groups;
      for (const auto& term : g.terms()) {
        Exps key = term.e;
        key[n] = 0;
        auto it = std::find_if(groups.begin(), groups.end(), [&](auto& gr) { return gr.first == key; });
        if (it == groups.end()) {
          groups.push_back({key, {}});
          it = groups.end() - 1;
        }
        Exps te{};
        te[n] = term.e[n];
        it->second.push_back({te, term.c});
      }
      for (auto& [key, ts] : groups) acc = ugcd(acc, to_upoly(Poly::from_terms(F, m, ts), n));
      if (acc.is_zero()) continue;
      std::vector<Scalar> cs = distinct_roots(acc);
      if (cs.empty()) continue;
      Poly factor = l + Poly::constant(cs.front(), n);
      int mult = 0;
      while (auto q = divide_exact(res.cofactor, factor)) {
        res.cofactor = *q;
        ++mult;
      }
      if (mult == 0) throw WitnessFailure("linear factor search produced a non-factor");
      res.factors.push_back({factor.monic(), mult});
      found = true;
      break;
    }
    if (!found) break;
  }
  std::sort(res.factors.begin(), res.factors.end(), [](const auto& a, const auto& b) {
    const auto& ta = a.first.terms();
    const auto& tb = b.first.terms();
    for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
      if (ta[i].e != tb[i].e) return grlex_greater(ta[i].e, tb[i].e);
      if (!(ta[i].c == tb[i].c)) return ta[i].c < tb[i].c;
    }
    return ta.size() < tb.size();
  });
  return res;
}

const Field* linear_factor_field(const Poly& f) {
  const Field* F = f.field();
  if (F->is_rational() || f.degree() <= 1) return F;
  Poly top = f.homogeneous_part(f.degree());
  int n = f.nvars();
  const Field* big = F;
  // Any linear factor of the top form has coefficients that are roots of the
  // restrictions of the top form to coordinate lines.
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      std::vector<Poly> img(n, Poly(F, n));
      img[a] = Poly::var(F, n, a);
      img[b] = Poly::var(F, n, b);
      Poly g = top.subst(img);
      if (g.is_zero()) continue;
      auto br = rational_binary_roots(g, a, b);
      big = common_extension(big, splitting_field(br.residual));
    }
  }
  // Constant terms of factors solve polynomial equations of degree <= deg f
  // over the field of the top form; they lie in an extension of degree <= 3.
  if (!linear_factors(f.embed(big)).factors.empty()) return big;
  for (int m : {2, 3}) {
    if (f.degree() < m) break;
    const Field* cand = common_extension(big, F->extension(m));
    if (!linear_factors(f.embed(cand)).factors.empty()) return cand;
  }
  return big;
}

bool irreducible_small(const Poly& f) {
  if (f.degree() <= 0) return false;
  if (f.degree() == 1) return true;
  if (f.degree() > 3) throw DegreeTooHigh("irreducibility test supports degree <= 3");
  return linear_factors(f).factors.empty();
}

Poly affine_subst(const Poly& p, const Mat& m, const Vec& t) {
  const Field* F = p.field();
  int n = p.nvars();
  std::vector<Poly> img;
  for (int i = 0; i < n; ++i) {
    Poly c = Poly::constant(t.empty() ? Scalar(F) : t[i], n);
    for (int j = 0; j < n; ++j) c += Poly::var(F, n, j).scaled(m[i][j]);
    img.push_back(c);
  }
  return p.subst(img);
}

}  // namespace affc
