#pragma once

// Exact arithmetic in the ring of integers of the base field M, problem
// parsing/validation, and the norm-form view of the equation.
//
// Elements of Z_M are integer coordinate vectors over the supplied integral
// basis (1, w_2, ..., w_m); all products are reduced exactly modulo the
// defining polynomial and re-expressed in the basis, with integrality
// asserted.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "relthue/bigfloat.hpp"

namespace relthue {

using Int = mpz_class;
using Rat = mpq_class;

struct FieldElement {
  std::vector<Int> coords;  // length m

  FieldElement() = default;
  explicit FieldElement(size_t m) : coords(m, 0) {}
  explicit FieldElement(std::vector<Int> c) : coords(std::move(c)) {}

  bool is_zero() const {
    for (const auto& c : coords)
      if (c != 0) return false;
    return true;
  }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.coords == b.coords;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
};

struct ProblemSpec {
  // base field M
  std::vector<Int> base_poly;              // ascending, monic, degree m
  std::vector<std::vector<Rat>> basis;     // m elements, theta-power coordinates (len m)
  // relative polynomial f over Z_M, ascending degree, leading = 1
  std::vector<FieldElement> f;             // n+1 entries
  FieldElement mu;
  BigFloat bound_C;

  int m = 0;
  int n = 0;
  bool totally_real = false;               // K totally real
  std::vector<char> base_real;             // per conjugate of M (fixed label order)

  // w_i * w_j in integral-basis coordinates (all integral by validation)
  std::vector<std::vector<std::vector<Int>>> mult_table;

  FieldElement unit() const {
    FieldElement e(static_cast<size_t>(m));
    e.coords[0] = 1;
    return e;
  }
};

// Parses and fully validates a problem file (JSON, see README for the
// schema). Distinct error codes: ParseError, NonMonic, RepeatedRoots,
// Applicability, NonIntegral.
ProblemSpec load_problem(const std::string& text);
ProblemSpec load_problem_file(const std::string& path);

FieldElement zm_add(const FieldElement& a, const FieldElement& b);
FieldElement zm_sub(const FieldElement& a, const FieldElement& b);
FieldElement zm_neg(const FieldElement& a);
FieldElement zm_mul(const FieldElement& a, const FieldElement& b, const ProblemSpec& spec);

// Coefficients of F(X,Y) = Y^n f(X/Y) = sum_j a_j X^j Y^(n-j); entry j is
// the coefficient of X^j Y^(n-j).
std::vector<FieldElement> norm_form_coefficients(const ProblemSpec& spec);

// Exact value of F(X,Y) in Z_M; equality with mu is the solution test.
FieldElement evaluate_norm(const FieldElement& X, const FieldElement& Y, const ProblemSpec& spec);

std::string to_string(const FieldElement& e);

}  // namespace relthue
