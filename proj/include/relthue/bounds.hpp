#pragma once

// The elementary constant system and the initial/floor bounds derived from
// it. All constants are kept on the safe (upper) side of rounding error so
// that the bound statements survive floating arithmetic.

#include <vector>

#include "relthue/bigfloat.hpp"
#include "relthue/embeddings.hpp"

namespace relthue {

struct ConstantSet {
  int m = 0;
  int n = 0;
  long precision = 0;  // decimal digits

  // c_hji = |alpha^(hj) - alpha^(hi)| / 2, j != i (entry [h][j][i])
  std::vector<std::vector<std::vector<BigFloat>>> c_hji;
  std::vector<std::vector<BigFloat>> c_hi;  // |mu^(h)| / prod_{j!=i} c_hji
  BigFloat c1, c2, c3, c4, c5;
  std::vector<std::vector<BigFloat>> d_hi;  // c_hi * c5^(n-1)
  BigFloat d_max;
  BigFloat alpha_size;  // max |alpha^(hj)|
  BigFloat tiny_floor;  // c5 * c4

  bool totally_real = false;

  const BigFloat& d_used(int h, int i, bool specific) const {
    return specific ? d_hi[static_cast<size_t>(h)][static_cast<size_t>(i)] : d_max;
  }
};

ConstantSet compute_constants(const EmbeddingTable& emb, const ProblemSpec& spec);

// A_B = c5 * max(C, c4), the initial bound on A.
BigFloat initial_bound(const ConstantSet& consts, const BigFloat& C);

// c5 * c4; every A at or below this floor must be enumerated regardless of
// how far the reduction got.
BigFloat tiny_floor(const ConstantSet& consts);

// Text table of the constant system for the run log.
std::string constants_table(const ConstantSet& consts);

}  // namespace relthue
