#include "affc/polymap.hpp"

#include <algorithm>

#include "affc/errors.hpp"
#include "affc/text.hpp"

namespace affc {

PolyMap::PolyMap(std::vector<Poly> comps) : c_(std::move(comps)) {
  for (const auto& p : c_)
    if (p.field() != c_[0].field() || p.nvars() != c_[0].nvars())
      throw RingMismatch("map components live in different rings");
}

PolyMap PolyMap::identity(const Field* F, int n) {
  std::vector<Poly> c;
  for (int i = 0; i < n; ++i) c.push_back(Poly::var(F, n, i));
  return PolyMap(std::move(c));
}

PolyMap PolyMap::parse(std::string_view text, const Field* F, int source_dim) {
  return PolyMap(parse_poly_tuple(text, F, source_dim));
}

int PolyMap::degree() const {
  int d = -1;
  for (const auto& p : c_) d = std::max(d, p.degree());
  return d;
}

std::size_t PolyMap::term_count() const {
  std::size_t s = 0;
  for (const auto& p : c_) s += p.size();
  return s;
}

PolyMap PolyMap::embed(const Field* big) const {
  std::vector<Poly> c;
  for (const auto& p : c_) c.push_back(p.embed(big));
  return PolyMap(std::move(c));
}

std::string PolyMap::str() const { return format_tuple(c_); }

AffineMap AffineMap::identity(const Field* F, int n) {
  return {identity_matrix(F, n), Vec(n, Scalar(F))};
}

AffineMap AffineMap::permutation(const Field* F, const std::vector<int>& images) {
  int n = static_cast<int>(images.size());
  AffineMap a{Mat(n, Vec(n, Scalar(F))), Vec(n, Scalar(F))};
  for (int i = 0; i < n; ++i) a.A[i][images[i]] = Scalar(F, 1L);
  return a;
}

AffineMap AffineMap::from_polymap(const PolyMap& f) {
  const Field* F = f.field();
  int n = f.target_dim(), d = f.source_dim();
  AffineMap a{Mat(n, Vec(d, Scalar(F))), Vec(n, Scalar(F))};
  for (int i = 0; i < n; ++i) {
    if (f[i].degree() > 1) throw std::invalid_argument("map is not affine");
    for (const auto& t : f[i].terms()) {
      int v = -1;
      for (int j = 0; j < d; ++j)
        if (t.e[j]) v = j;
      if (v < 0)
        a.t[i] = t.c;
      else
        a.A[i][v] = t.c;
    }
  }
  return a;
}

PolyMap AffineMap::to_polymap() const {
  const Field* F = field();
  int n = static_cast<int>(A.size()), d = static_cast<int>(A[0].size());
  std::vector<Poly> c;
  for (int i = 0; i < n; ++i) {
    Poly p = Poly::constant(t[i], d);
    for (int j = 0; j < d; ++j) p += Poly::var(F, d, j).scaled(A[i][j]);
    c.push_back(p);
  }
  return PolyMap(std::move(c));
}

AffineMap AffineMap::embed(const Field* big) const {
  AffineMap a = *this;
  a.A = mat_embed(A, big);
  for (auto& v : a.t) v = v.embed(big);
  return a;
}

AffineMap affine_compose(const AffineMap& a, const AffineMap& b) {
  AffineMap r{mat_mul(a.A, b.A), mat_vec(a.A, b.t)};
  for (std::size_t i = 0; i < r.t.size(); ++i) r.t[i] += a.t[i];
  return r;
}

bool is_affine(const PolyMap& f) { return f.degree() <= 1; }

TriangularMap TriangularMap::from_polymap(const PolyMap& f) {
  if (!is_triangular(f)) throw std::invalid_argument("map is not triangular");
  TriangularMap t;
  int n = f.target_dim();
  for (int i = 0; i < n; ++i) {
    Exps e{};
    e[i] = 1;
    Scalar c = f[i].coeff(e);
    t.c.push_back(c);
    t.tail.push_back(f[i] - Poly::monomial(e, c, n));
  }
  return t;
}

PolyMap TriangularMap::to_polymap() const {
  int n = static_cast<int>(c.size());
  std::vector<Poly> comps;
  for (int i = 0; i < n; ++i) {
    Exps e{};
    e[i] = 1;
    comps.push_back(Poly::monomial(e, c[i], n) + tail[i]);
  }
  return PolyMap(std::move(comps));
}

bool is_triangular(const PolyMap& f) {
  int n = f.target_dim();
  if (f.source_dim() != n) return false;
  for (int i = 0; i < n; ++i) {
    Exps e{};
    e[i] = 1;
    if (f[i].coeff(e).is_zero()) return false;
    for (const auto& t : f[i].terms()) {
      if (t.e == e) continue;
      for (int j = 0; j <= i; ++j)
        if (t.e[j]) return false;
    }
  }
  return true;
}

PolyMap TameLetter::as_map() const {
  return kind == Kind::Affine ? affine.to_polymap() : triangular.to_polymap();
}

TameLetter affine_letter(AffineMap a) {
  TameLetter l{TameLetter::Kind::Affine, std::move(a), {}};
  return l;
}

TameLetter triangular_letter(TriangularMap t) {
  TameLetter l{TameLetter::Kind::Triangular, {}, std::move(t)};
  return l;
}

PolyMap compose(const PolyMap& f, const PolyMap& g) {
  if (g.target_dim() != f.source_dim())
    throw DimensionMismatch("compose: inner map has " + std::to_string(g.target_dim()) +
                            " components, outer map needs " + std::to_string(f.source_dim()));
  if (f.field() != g.field()) throw RingMismatch("compose: maps over different fields");
  std::vector<Poly> c;
  for (const auto& p : f.components()) c.push_back(p.subst(g.components()));
  return PolyMap(std::move(c));
}

Poly jacobian_det(const PolyMap& f) {
  int n = f.target_dim();
  if (f.source_dim() != n) throw DimensionMismatch("Jacobian determinant of a non-square map");
  const Field* F = f.field();
  // Laplace expansion is enough for n <= 3; Bareiss-style elimination would
  // need exact polynomial division.
  std::vector<std::vector<Poly>> J(n, std::vector<Poly>(n, Poly(F, n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) J[i][j] = f[i].derivative(j);
  std::vector<int> cols(n);
  for (int i = 0; i < n; ++i) cols[i] = i;
  // Sum over permutations with signs.
  Poly det(F, n);
  std::vector<int> perm = cols;
  do {
    int inv = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inv;
    Poly term = Poly::constant(F, n, inv % 2 ? -1 : 1);
    for (int i = 0; i < n && !term.is_zero(); ++i) term *= J[i][perm[i]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

AffineMap invert_affine(const AffineMap& a) {
  auto inv = mat_inverse(a.A);
  if (!inv) throw NotInvertible("affine map has singular linear part");
  AffineMap r{*inv, mat_vec(*inv, a.t)};
  for (auto& v : r.t) v = -v;
  return r;
}

TriangularMap invert_triangular(const TriangularMap& t) {
  int n = static_cast<int>(t.c.size());
  const Field* F = t.c[0].field();
  // If y_i = c_i x_i + tail_i(x_{i+1..n}) then x_i = (y_i - tail_i(x_{i+1..n}))/c_i,
  // resolved from the last coordinate upwards.
  std::vector<Poly> x(n, Poly(F, n));
  for (int i = n - 1; i >= 0; --i) {
    std::vector<Poly> img(n, Poly(F, n));
    for (int j = i + 1; j < n; ++j) img[j] = x[j];
    Poly tail = t.tail[i].subst(img);
    x[i] = (Poly::var(F, n, i) - tail).scaled(t.c[i].inverse());
  }
  return TriangularMap::from_polymap(PolyMap(x));
}

TameWord invert_word(const TameWord& w) {
  TameWord r;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (it->kind == TameLetter::Kind::Affine)
      r.letters.push_back(affine_letter(invert_affine(it->affine)));
    else
      r.letters.push_back(triangular_letter(invert_triangular(it->triangular)));
  }
  return r;
}

PolyMap eval_tame_word(const TameWord& w) {
  if (w.letters.empty()) throw std::invalid_argument("empty tame word");
  PolyMap acc = w.letters.back().as_map();
  for (auto it = w.letters.rbegin() + 1; it != w.letters.rend(); ++it) acc = compose(it->as_map(), acc);
  return acc;
}

PolyMap apply_equivalence(const AffineMap& alpha, const PolyMap& f, const AffineMap& beta) {
  return compose(alpha.to_polymap(), compose(f, beta.to_polymap()));
}

namespace {

struct Budget {
  std::size_t terms;
  bool over(const Poly& a, const Poly& b) const {
    return a.size() * b.size() > 64 * terms;
  }
};

// p(images) with a term budget; nullopt when exceeded.
std::optional<Poly> subst_budgeted(const Poly& p, const std::vector<Poly>& images,
                                   std::vector<std::vector<Poly>>& powers, const Budget& bud) {
  const Field* F = images[0].field();
  int m = images[0].nvars();
  Poly acc(F, m);
  for (const auto& t : p.terms()) {
    Poly prod = Poly::constant(t.c, m);
    for (std::size_t i = 0; i < images.size(); ++i) {
      for (unsigned k = static_cast<unsigned>(powers[i].size()); k <= t.e[i]; ++k) {
        const Poly& prev = powers[i].back();
        if (bud.over(prev, images[i])) return std::nullopt;
        powers[i].push_back(prev * images[i]);
        if (powers[i].back().size() > bud.terms) return std::nullopt;
      }
      if (t.e[i] == 0) continue;
      const Poly& pw = powers[i][t.e[i]];
      if (bud.over(prod, pw)) return std::nullopt;
      prod = prod * pw;
      if (prod.size() > bud.terms) return std::nullopt;
    }
    acc += prod;
    if (acc.size() > bud.terms) return std::nullopt;
  }
  return acc;
}

}  // namespace

std::vector<int> iterate_degrees(const PolyMap& f, int r_max, std::size_t term_budget) {
  if (f.source_dim() != f.target_dim()) throw DimensionMismatch("iterates of a non-square map");
  std::vector<int> degs;
  PolyMap cur = f;
  Budget bud{term_budget};
  for (int r = 1; r <= r_max; ++r) {
    if (r > 1) {
      std::vector<std::vector<Poly>> powers(f.source_dim());
      for (auto& v : powers) v.push_back(Poly::constant(f.field(), f.source_dim(), 1));
      std::vector<Poly> next;
      for (const auto& p : f.components()) {
        auto q = subst_budgeted(p, cur.components(), powers, bud);
        if (!q) throw BudgetExceeded(degs);
        next.push_back(std::move(*q));
      }
      cur = PolyMap(std::move(next));
      if (cur.term_count() > term_budget) throw BudgetExceeded(degs);
    }
    degs.push_back(cur.degree());
  }
  return degs;
}

}  // namespace affc
