#pragma once

// Simultaneous arbitrary-precision root finding for univariate complex
// polynomials (Aberth-Ehrlich iteration). Built for degrees up to ~25 and
// precisions up to a few thousand decimal digits.

#include <vector>

#include "relthue/bigfloat.hpp"

namespace relthue {

struct RootSet {
  std::vector<BigComplex> roots;  // count == degree
  BigFloat residual_bound;        // max_j |poly(root_j)| actually achieved
  long precision = 0;             // requested decimal digits
};

// All complex roots of sum coeffs[k] x^k, coeffs ascending, leading nonzero.
// Deterministic for identical (coeffs, digits). Roots are sorted by
// (Re, Im) lexicographically. Throws NonConvergence if the residual target
// 10^(10-digits) * max|coeff| is not reached within the iteration cap.
RootSet complex_roots(const std::vector<BigComplex>& coeffs, long digits);

// Re-solves at higher precision starting from the old roots and returns the
// roots in the OLD label order (entry k of the result is the refinement of
// old.roots[k]). Throws MatchAmbiguity if nearest-root matching is not a
// bijection, which signals insufficient old precision.
RootSet refine_roots(const RootSet& old, const std::vector<BigComplex>& coeffs, long digits);

}  // namespace relthue
