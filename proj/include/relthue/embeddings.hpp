#pragma once

// Numeric conjugate data for a problem: theta roots, basis conjugates, the
// matrix S with rows (1, w_2^(j), ..., w_m^(j)) and its inverse, the
// relative conjugates alpha^(hj) per base conjugate, and mu^(h).
//
// Conjugate ordering is fixed when a table is first built (theta roots and
// each row of alpha sorted by (Re, Im)); refinement to higher precision
// keeps the labels via nearest-root matching.

#include <memory>
#include <mutex>
#include <vector>

#include "relthue/bigfloat.hpp"
#include "relthue/field.hpp"
#include "relthue/roots.hpp"

namespace relthue {

struct EmbeddingTable {
  long precision = 0;  // decimal digits
  int m = 0;
  int n = 0;

  std::vector<BigComplex> theta;                    // m roots of the base poly
  std::vector<std::vector<BigComplex>> omega;       // omega[j][i] = w_i^(j), i in [0,m)
  std::vector<std::vector<BigComplex>> S;           // row j = (1, w_2^(j), ..., w_m^(j))
  std::vector<std::vector<BigComplex>> S_inv;
  std::vector<std::vector<BigComplex>> alpha;       // alpha[h][j], j in [0,n)
  std::vector<BigComplex> mu;                       // mu^(h)
  std::vector<char> base_real;                      // conjugate j of M is real
  bool k_totally_real = false;

  RootSet theta_roots;                              // for refinement
  std::vector<RootSet> alpha_roots;                 // per h, label order == alpha[h]

  // row norm of S^-1 (maximum row sum of absolute values)
  BigFloat sinv_row_norm() const;
  // size of alpha: max |alpha^(hj)|
  BigFloat alpha_size() const;
  BigFloat mu_size() const;

  BigComplex embed(const FieldElement& e, int h) const;
};

std::shared_ptr<const EmbeddingTable> build_embeddings(const ProblemSpec& spec, long digits);
std::shared_ptr<const EmbeddingTable> refine_embeddings(const EmbeddingTable& old,
                                                        const ProblemSpec& spec, long digits);

// Thread-safe precision ladder over one problem's embeddings: at_least(p)
// returns a table with precision >= p, refining (and caching) as needed.
class EmbeddingProvider {
 public:
  EmbeddingProvider(const ProblemSpec& spec, long base_digits = 60);

  std::shared_ptr<const EmbeddingTable> at_least(long digits);
  std::shared_ptr<const EmbeddingTable> base() const { return base_; }

 private:
  const ProblemSpec& spec_;
  std::shared_ptr<const EmbeddingTable> base_;
  std::shared_ptr<const EmbeddingTable> best_;
  std::mutex mu_;
};

}  // namespace relthue
