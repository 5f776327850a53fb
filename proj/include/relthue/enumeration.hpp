#pragma once

// Finding all solutions below the reduced bound: the direct per-conjugate
// root-matching search, and the interval/ellipsoid search for m >= 3. Every
// candidate is verified exactly before it is reported.

#include <cstdint>
#include <functional>
#include <vector>

#include "relthue/bounds.hpp"
#include "relthue/embeddings.hpp"
#include "relthue/field.hpp"

namespace relthue {

struct Solution {
  std::vector<Int> x, y;
  bool verified = false;
  bool canonical_sign = false;  // representative of its +- pair (even n only)

  friend bool operator==(const Solution& a, const Solution& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator<(const Solution& a, const Solution& b) {
    if (a.y != b.y) return std::lexicographical_compare(a.y.begin(), a.y.end(), b.y.begin(), b.y.end());
    return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
  }
};

struct IntervalPlan {
  std::vector<std::pair<long, long>> segments;  // (A_s, A_S], ascending
};

struct SearchOptions {
  Int work_cap = Int(1000000000);  // default 10^9 tests
  int threads = 1;
  bool specific_constants = true;
  std::function<void(const std::string&)> progress;  // optional
};

struct SearchStats {
  std::uint64_t y_vectors = 0;
  std::uint64_t tuples = 0;
  std::uint64_t candidates = 0;       // passed the integrality filter
  std::uint64_t exact_checks = 0;
  std::uint64_t mpfr_fallbacks = 0;
  std::uint64_t enum_nodes = 0;

  void add(const SearchStats& o) {
    y_vectors += o.y_vectors;
    tuples += o.tuples;
    candidates += o.candidates;
    exact_checks += o.exact_checks;
    mpfr_fallbacks += o.mpfr_fallbacks;
    enum_nodes += o.enum_nodes;
  }
};

// (2*limit+1)^m * n^m — the number of tests the direct procedure performs.
Int work_estimate(long limit, int m, int n);

// All verified solutions with every |x_i|, |y_i| <= limit... more precisely,
// all solutions whose y-part lies in the box; the Theorem-1 consistency
// bound caps the x side. For even n the output is canonicalized to one
// representative per +- pair.
std::vector<Solution> direct_search(long limit, const ProblemSpec& spec, const EmbeddingTable& emb,
                                    long digits, const SearchOptions& opts = {},
                                    SearchStats* stats = nullptr);

// All verified solutions with max coordinate magnitude in (A_s, A_S], found
// through the scaled-lattice ellipsoid of every pair (h,i).
std::vector<Solution> interval_search(long A_s, long A_S, const ProblemSpec& spec,
                                      const EmbeddingTable& emb, const ConstantSet& consts,
                                      long digits, const SearchOptions& opts = {},
                                      SearchStats* stats = nullptr);

// Geometric segment plan covering (A_I, A_R]: A_S = min(A_R, ceil(factor*A_s)).
IntervalPlan plan_intervals(long A_I, long A_R, double factor);

// Validates an explicit plan: sorted by A_s, union of (A_s, A_S] must cover
// (A_I, A_R] (overlaps allowed).
IntervalPlan validate_plan(const std::vector<std::pair<long, long>>& segments, long A_I, long A_R);

// One representative per +- pair: first nonzero of (y, x) positive.
Solution canonicalize(Solution s, int n);
std::vector<Solution> dedup_canonical(std::vector<Solution> sols, int n);

}  // namespace relthue
