#include "relthue/bounds.hpp"

#include <sstream>

#include "relthue/errors.hpp"

namespace relthue {

namespace {
constexpr long kDigits = 60;     // constants are O(1)-O(|mu|); 60 digits suffice
constexpr long kInflate = 45;    // relative 10^(-p+15) safety margin
}  // namespace

ConstantSet compute_constants(const EmbeddingTable& emb, const ProblemSpec& spec) {
  ConstantSet cs;
  cs.m = spec.m;
  cs.n = spec.n;
  cs.precision = kDigits;
  cs.totally_real = emb.k_totally_real;
  const mpfr_prec_t bits = bits_for_digits(kDigits);
  const size_t m = static_cast<size_t>(spec.m);
  const size_t n = static_cast<size_t>(spec.n);

  // pairwise half-distances, deflated so the derived quotients stay upper bounds
  cs.c_hji.assign(m, std::vector<std::vector<BigFloat>>(n, std::vector<BigFloat>(n, BigFloat(bits))));
  for (size_t h = 0; h < m; ++h)
    for (size_t j = 0; j < n; ++j)
      for (size_t i = 0; i < n; ++i) {
        if (i == j) continue;
        BigFloat v = ((emb.alpha[h][j] - emb.alpha[h][i]).abs() * 0.5).with_prec(bits);
        if (v.is_zero())
          throw Error(ErrorCode::RepeatedRoots, "coincident conjugates: c_hji = 0 at h=" +
                                                    std::to_string(h + 1) + " j=" + std::to_string(j + 1) +
                                                    " i=" + std::to_string(i + 1));
        cs.c_hji[h][j][i] = v.deflated(kInflate);
      }

  std::vector<BigFloat> mu_abs(m, BigFloat(bits));
  for (size_t h = 0; h < m; ++h) mu_abs[h] = emb.mu[h].abs().with_prec(bits).inflated(kInflate);

  cs.c_hi.assign(m, std::vector<BigFloat>(n, BigFloat(bits)));
  for (size_t h = 0; h < m; ++h)
    for (size_t i = 0; i < n; ++i) {
      BigFloat denom(1.0, bits);
      for (size_t j = 0; j < n; ++j)
        if (j != i) denom *= cs.c_hji[h][j][i];
      cs.c_hi[h][i] = (mu_abs[h] / denom).inflated(kInflate);
    }

  cs.c1 = BigFloat(0.0, bits);
  for (size_t h = 0; h < m; ++h) {
    BigFloat mu_root = mu_abs[h].nth_root(static_cast<unsigned long>(n));
    for (size_t j = 0; j < n; ++j)
      for (size_t i = 0; i < n; ++i) {
        if (i == j) continue;
        cs.c1 = max(cs.c1, mu_root / cs.c_hji[h][j][i]);
      }
  }
  cs.c1 = cs.c1.inflated(kInflate);

  cs.c2 = emb.sinv_row_norm().with_prec(bits).inflated(kInflate);
  cs.alpha_size = emb.alpha_size().with_prec(bits).inflated(kInflate);
  BigFloat mu_size = emb.mu_size().with_prec(bits).inflated(kInflate);

  cs.c3 = (mu_size.nth_root(static_cast<unsigned long>(n)) /
           emb.alpha_size().with_prec(bits).deflated(kInflate))
              .inflated(kInflate);
  cs.c4 = max(cs.c1, cs.c3);
  cs.c5 = (BigFloat(2.0, bits) * cs.c2 * cs.alpha_size).inflated(kInflate);

  BigFloat c5_pow = cs.c5.pow_ui(static_cast<unsigned long>(n - 1));
  cs.d_hi.assign(m, std::vector<BigFloat>(n, BigFloat(bits)));
  cs.d_max = BigFloat(0.0, bits);
  for (size_t h = 0; h < m; ++h)
    for (size_t i = 0; i < n; ++i) {
      cs.d_hi[h][i] = (cs.c_hi[h][i] * c5_pow).inflated(kInflate);
      cs.d_max = max(cs.d_max, cs.d_hi[h][i]);
    }

  cs.tiny_floor = (cs.c5 * cs.c4).inflated(kInflate);
  return cs;
}

BigFloat initial_bound(const ConstantSet& consts, const BigFloat& C) {
  if (!(C > 0.0)) throw Error(ErrorCode::Internal, "C must be positive");
  return (consts.c5 * max(C.with_prec(bits_for_digits(consts.precision)), consts.c4)).inflated(kInflate);
}

BigFloat tiny_floor(const ConstantSet& consts) { return consts.tiny_floor; }

std::string constants_table(const ConstantSet& cs) {
  std::ostringstream os;
  os << "constants (m=" << cs.m << ", n=" << cs.n
     << (cs.totally_real ? ", totally real" : "") << ")\n";
  os << "  c1 = " << cs.c1.sci(8) << "\n";
  os << "  c2 = " << cs.c2.sci(8) << "\n";
  os << "  c3 = " << cs.c3.sci(8) << "\n";
  os << "  c4 = " << cs.c4.sci(8) << "\n";
  os << "  c5 = " << cs.c5.sci(8) << "\n";
  os << "  |alpha| = " << cs.alpha_size.sci(8) << "\n";
  os << "  c5*c4 (enumeration floor) = " << cs.tiny_floor.sci(8) << "\n";
  os << "  d_hi (rows h, columns i):\n";
  for (int h = 0; h < cs.m; ++h) {
    os << "   h=" << h + 1 << ":";
    for (int i = 0; i < cs.n; ++i) os << " " << cs.d_hi[static_cast<size_t>(h)][static_cast<size_t>(i)].sci(4);
    os << "\n";
  }
  return os.str();
}

}  // namespace relthue
