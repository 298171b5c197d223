#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "affc/algebra.hpp"

namespace affc {

// Morphism A^d -> A^n: n components in the d-variable ring.
class PolyMap {
 public:
  PolyMap() = default;
  explicit PolyMap(std::vector<Poly> comps);
  static PolyMap identity(const Field* F, int n);
  static PolyMap parse(std::string_view text, const Field* F, int source_dim = 3);

  const std::vector<Poly>& components() const { return c_; }
  const Poly& operator[](std::size_t i) const { return c_[i]; }
  Poly& operator[](std::size_t i) { return c_[i]; }
  int target_dim() const { return static_cast<int>(c_.size()); }
  int source_dim() const { return c_.empty() ? 0 : c_[0].nvars(); }
  const Field* field() const { return c_.empty() ? Field::rationals() : c_[0].field(); }
  int degree() const;
  std::size_t term_count() const;
  PolyMap embed(const Field* big) const;

  friend bool operator==(const PolyMap& a, const PolyMap& b) { return a.c_ == b.c_; }
  std::string str() const;

 private:
  std::vector<Poly> c_;
};

// x -> A x + t.
struct AffineMap {
  Mat A;
  Vec t;
  static AffineMap identity(const Field* F, int n);
  static AffineMap permutation(const Field* F, const std::vector<int>& images);  // x_i -> x_{images[i]}
  // Reads an affine PolyMap; throws std::invalid_argument otherwise.
  static AffineMap from_polymap(const PolyMap& f);
  int dim() const { return static_cast<int>(A.size()); }
  const Field* field() const { return A[0][0].field(); }
  PolyMap to_polymap() const;
  AffineMap embed(const Field* big) const;
};
AffineMap affine_compose(const AffineMap& a, const AffineMap& b);  // a o b
bool is_affine(const PolyMap& f);

// Component i is c_i x_i + tail_i(x_{i+1}, ..., x_n).
struct TriangularMap {
  std::vector<Scalar> c;
  std::vector<Poly> tail;
  static TriangularMap from_polymap(const PolyMap& f);
  PolyMap to_polymap() const;
};
bool is_triangular(const PolyMap& f);

struct TameLetter {
  enum class Kind { Affine, Triangular } kind;
  AffineMap affine;
  TriangularMap triangular;
  PolyMap as_map() const;
};
struct TameWord {
  std::vector<TameLetter> letters;
};
TameLetter affine_letter(AffineMap a);
TameLetter triangular_letter(TriangularMap t);

PolyMap compose(const PolyMap& f, const PolyMap& g);  // f o g
Poly jacobian_det(const PolyMap& f);

AffineMap invert_affine(const AffineMap& a);
TriangularMap invert_triangular(const TriangularMap& t);
TameWord invert_word(const TameWord& w);
// w_1 o w_2 o ... o w_k.
PolyMap eval_tame_word(const TameWord& w);
PolyMap apply_equivalence(const AffineMap& alpha, const PolyMap& f, const AffineMap& beta);

// Degrees of f, f^2, ..., f^{r_max}, computing f o f^{r-1}. Stops with
// BudgetExceeded once an iterate would exceed `term_budget` terms.
struct BudgetExceeded : std::runtime_error {
  std::vector<int> partial;
  explicit BudgetExceeded(std::vector<int> p)
      : std::runtime_error("term budget exceeded after " + std::to_string(p.size()) + " iterates"),
        partial(std::move(p)) {}
};
inline constexpr std::size_t kDefaultTermBudget = 1000000;
std::vector<int> iterate_degrees(const PolyMap& f, int r_max,
                                 std::size_t term_budget = kDefaultTermBudget);

}  // namespace affc
