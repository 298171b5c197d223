#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "affc/poly.hpp"

namespace affc {

// Grammar: sums of products of powers; atoms are integers, a/b literals,
// variables (x, y, z for up to three variables, x1..xn in general), the
// generator g of F_{p^k} when k > 1, and parenthesized expressions.
// Exponents are non-negative integer literals. No implicit multiplication.
Poly parse_poly(std::string_view text, const Field* F, int nvars = 3);

// "(f1, f2, ..., fn)".
std::vector<Poly> parse_poly_tuple(std::string_view text, const Field* F, int nvars = 3);

std::string format_poly(const Poly& p);
std::string format_tuple(const std::vector<Poly>& ps);

}  // namespace affc
