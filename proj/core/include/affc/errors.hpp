#pragma once

#include <stdexcept>
#include <string>

namespace affc {

// Operands live in different real quadratic fields, or polynomials over
// different coefficient fields were combined.
struct MixedField : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RingMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A root escaped the coefficient field. `minpoly` is the irreducible
// univariate factor (variable t) carrying it; `degree` its degree.
struct FieldExtensionNeeded : std::runtime_error {
  std::string minpoly;
  int degree = 0;
  FieldExtensionNeeded(std::string mp, int deg)
      : std::runtime_error("field extension needed: root of " + mp),
        minpoly(std::move(mp)),
        degree(deg) {}
};

struct ParseError : std::runtime_error {
  std::size_t offset;
  std::string expected;
  ParseError(std::size_t off, std::string exp, const std::string& msg)
      : std::runtime_error(msg), offset(off), expected(std::move(exp)) {}
};

struct ZeroValue : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoPivot : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegreeTooHigh : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotInvertible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal consistency failure: a constructed witness did not recompose.
struct WitnessFailure : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace affc
