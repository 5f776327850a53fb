#pragma once

// Exact integer LLL reduction, the bound-reduction step driven by it, and
// positive-definite quadratic-form enumeration (Cholesky with box clamping).

#include <functional>
#include <vector>

#include "relthue/bigfloat.hpp"
#include "relthue/bounds.hpp"
#include "relthue/embeddings.hpp"

namespace relthue {

using IntMatrix = std::vector<std::vector<Int>>;  // row-major

struct IntLattice {
  IntMatrix columns;     // columns[c] is a column vector of length rows()
  Int scale_H;
  int h = 0, i = 0;      // conjugate indices (0-based)
  int rounded_rows = 0;  // 2 in the complex case, 1 totally real
  double rounding_slack = 0.5;      // per rounded entry (worst case)
  std::vector<double> row_rounding; // actual per-row sums of entry errors (upper bounds)

  size_t dim() const { return columns.size(); }          // 2m
  size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
};

// Columns: identity on the first 2m rows; the last row(s) carry the integer
// roundings of H*Re (and, complex case, H*Im) of
// (1, w_2^(h), ..., w_m^(h), -a^(hi), -a^(hi) w_2^(h), ..., -a^(hi) w_m^(h)).
IntLattice build_lattice(const EmbeddingTable& emb, int h, int i, const Int& H, long digits);

struct LllResult {
  IntMatrix basis;      // reduced columns
  IntMatrix transform;  // unimodular U with basis = input * U
  Int b1_norm_sq;       // |b_1|^2 of the reduced basis
};

// Exact integer LLL with Lovasz parameter delta = num/den, default 3/4
// (integral Gram/lambda bookkeeping). Throws DependentColumns if the input
// is not a basis. For a delta-reduced basis |b1|^2 <= (4*den/(4*num-den))^(D-1)
// * lambda_1^2; the reduction step runs at 99/100 for a tighter constant.
LllResult lll_reduce(const IntMatrix& columns, long delta_num = 3, long delta_den = 4);

// sqrt((2m+1) * 2^(2m-1)) * A0 — the success threshold in exact-entry form,
// kept for logs and reporting.
BigFloat paper_threshold(int m, const BigFloat& A0);

// Strengthened test actually applied: |b1|^2 >= c_delta * (2m*A0^2 +
// sum_rows ((eps_row + 1) * A0)^2) with c_delta = (4*den/(4*num-den))^(2m-1),
// which absorbs both the LLL quality loss and the integer rounding of the
// lattice entries. eps_row is the row's rounding-error sum; a coefficient
// vector bounded by A0 moves the row by at most eps_row * A0. With
// delta = 3/4 and the worst case eps_row = m this reproduces the generic
// form 2^(2m-1) * (2m*A0^2 + r*((m+1)*A0)^2).
BigFloat strengthened_threshold_sq(int m, const std::vector<double>& row_rounding,
                                   const BigFloat& A0, long delta_num = 3, long delta_den = 4);

struct ReductionOutcome {
  bool success = false;
  BigFloat b1_norm;     // of the final attempt
  BigFloat threshold;   // strengthened threshold used for the decision
  BigFloat new_bound;   // valid when success; integer-ceiled, >= 1
  Int H;
  long digits = 0;
  int retries = 0;
};

struct ReductionOptions {
  bool specific_constants = true;  // use d_hi of the pair rather than max d
  int max_retries = 6;
};

// One bound-reduction pass at the pair (h,i): choose H, build the lattice,
// LLL-reduce, and on success return the contracted bound
// (d_hi * H / A0)^(1/(n-1)).
ReductionOutcome reduction_step(const BigFloat& A0, int h, int i, const ConstantSet& consts,
                                EmbeddingProvider& emb, const ReductionOptions& opts = {});

struct ReductionLogRow {
  int h = 0, i = 0;
  int step = 0;
  BigFloat A0;
  Int H;
  BigFloat threshold;  // |b1| >= this (strengthened form)
  long digits = 0;
  BigFloat new_bound;
  double seconds = 0;
  int retries = 0;
};

struct ReduceAllResult {
  BigFloat A_R;  // final bound, floored by the enumeration floor
  std::vector<ReductionLogRow> log;
};

// Full reduction: every pair (h,i) is iterated from A_B until the new bound
// stops improving (new > 0.9*old) or falls under the enumeration floor;
// A_R is the max over pairs, floored by c5*c4.
ReduceAllResult reduce_all(const BigFloat& A_B, const ConstantSet& consts, EmbeddingProvider& emb,
                           const ProblemSpec& spec, const ReductionOptions& opts = {},
                           int threads = 1);

std::string reduction_table(const std::vector<ReductionLogRow>& rows);

struct CholeskyFactor {
  std::vector<std::vector<BigFloat>> R;  // upper triangular, positive diagonal
  long precision = 0;
};

// R^T R = Q to relative 10^(-p+15). Throws NotPositiveDefinite on a
// nonpositive pivot.
CholeskyFactor cholesky_decompose(const std::vector<std::vector<BigFloat>>& Q, long digits);
CholeskyFactor cholesky_decompose(const IntMatrix& Q, long digits);

// Yields every integer vector x with Q(x) <= rhs and max_i |x_i| <= box,
// each exactly once (the zero vector included). The visitor returns false
// to stop early.
void enumerate_quadratic(const CholeskyFactor& R, const BigFloat& rhs, long box,
                         const std::function<bool(const std::vector<long>&)>& visit);
std::vector<std::vector<long>> enumerate_quadratic(const CholeskyFactor& R, const BigFloat& rhs,
                                                   long box);

// Gram matrix of the lattice columns (exact).
IntMatrix gram_matrix(const IntMatrix& columns);

}  // namespace relthue
