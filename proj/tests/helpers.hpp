#pragma once

// shared test utilities

#include <random>
#include <string>
#include <vector>

#include "relthue/bigfloat.hpp"
#include "relthue/field.hpp"

namespace testutil {

inline std::string problem_path(const std::string& name) {
  return std::string(RELTHUE_PROBLEM_DIR) + "/" + name;
}

// expand prod (x - r_j) into ascending coefficients
inline std::vector<relthue::BigComplex> poly_from_roots(const std::vector<relthue::BigComplex>& roots,
                                                        mpfr_prec_t bits) {
  using relthue::BigComplex;
  using relthue::BigFloat;
  std::vector<BigComplex> c{BigComplex(BigFloat(1.0, bits), BigFloat(0.0, bits))};
  for (const auto& r : roots) {
    std::vector<BigComplex> next(c.size() + 1, BigComplex(bits));
    for (size_t k = 0; k < c.size(); ++k) {
      next[k + 1] = next[k + 1] + c[k];
      next[k] = next[k] - c[k] * r;
    }
    c = std::move(next);
  }
  return c;
}

inline relthue::BigComplex eval_poly(const std::vector<relthue::BigComplex>& c,
                                     const relthue::BigComplex& z) {
  relthue::BigComplex p = c.back();
  for (size_t k = c.size() - 1; k-- > 0;) p = p * z + c[k];
  return p;
}

// deterministic RNG for all property tests
inline std::mt19937_64 rng(unsigned long seed = 20240811ul) { return std::mt19937_64(seed); }

inline std::string inline_problem(const std::string& base_poly, const std::string& basis,
                                  const std::string& relpoly, const std::string& mu,
                                  const std::string& c) {
  return std::string("{\"base_field\":{\"defining_polynomial\":") + base_poly +
         ",\"integral_basis\":" + basis + "},\"relative_polynomial\":" + relpoly +
         ",\"mu\":" + mu + ",\"bound_C\":\"" + c + "\"}";
}

}  // namespace testutil
