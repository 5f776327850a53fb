#include "relthue/roots.hpp"

#include <algorithm>
#include <cmath>

#include "relthue/errors.hpp"

namespace relthue {

namespace {

// p(z) and p'(z) by a joint Horner pass.
void eval_with_deriv(const std::vector<BigComplex>& c, const BigComplex& z,
                     BigComplex& p, BigComplex& dp) {
  const size_t d = c.size() - 1;
  p = c[d];
  dp = BigComplex(z.prec());
  for (size_t k = d; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
}

BigComplex eval_poly(const std::vector<BigComplex>& c, const BigComplex& z) {
  BigComplex p = c.back();
  for (size_t k = c.size() - 1; k-- > 0;) p = p * z + c[k];
  return p;
}

BigFloat max_coeff_abs(const std::vector<BigComplex>& c, mpfr_prec_t bits) {
  BigFloat m(0.0, bits);
  for (const auto& x : c) m = max(m, x.abs());
  return m;
}

struct LexLess {
  bool operator()(const BigComplex& a, const BigComplex& b) const {
    int c = a.re.cmp(b.re);
    if (c != 0) return c < 0;
    return a.im.cmp(b.im) < 0;
  }
};

RootSet run_aberth(const std::vector<BigComplex>& coeffs, long digits,
                   std::vector<BigComplex> z /*initial guesses*/, bool sort_output) {
  const size_t d = coeffs.size() - 1;
  const long work_digits = digits + 20;
  const mpfr_prec_t bits = bits_for_digits(work_digits);

  std::vector<BigComplex> c(coeffs.size());
  for (size_t k = 0; k < coeffs.size(); ++k) c[k] = coeffs[k].with_prec(bits);

  const BigFloat scale = max_coeff_abs(c, bits);
  const BigFloat tol = BigFloat::pow10(-digits, bits);
  const BigFloat one(1.0, bits);

  for (auto& g : z) g = g.with_prec(bits);

  const long max_sweeps = 200 * static_cast<long>(d);
  std::vector<char> done(d, 0);
  bool converged = false;
  for (long sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    converged = true;
    for (size_t k = 0; k < d; ++k) {
      if (done[k]) continue;
      BigComplex p, dp;
      eval_with_deriv(c, z[k], p, dp);
      if (p.is_zero()) {
        done[k] = 1;
        continue;
      }
      BigComplex corr;
      if (dp.is_zero()) {
        // stationary point: nudge deterministically
        corr = BigComplex(BigFloat(1.0, bits) * tol, BigFloat(1.0, bits) * tol);
      } else {
        BigComplex newton = p / dp;
        BigComplex s(bits);
        for (size_t j = 0; j < d; ++j) {
          if (j == k) continue;
          BigComplex diff = z[k] - z[j];
          if (diff.is_zero()) {
            // coincident iterates: separate them
            diff = BigComplex(tol, BigFloat(0.0, bits));
          }
          s = s + BigComplex(one, BigFloat(0.0, bits)) / diff;
        }
        BigComplex denom = BigComplex(one, BigFloat(0.0, bits)) - newton * s;
        corr = denom.is_zero() ? newton : newton / denom;
      }
      z[k] = z[k] - corr;
      BigFloat zs = max(one, z[k].abs());
      if (corr.abs() >= tol * zs) converged = false;
      else done[k] = 1;
    }
  }

  // residual check at working precision
  BigFloat resid(0.0, bits);
  for (size_t k = 0; k < d; ++k) resid = max(resid, eval_poly(c, z[k]).abs());
  BigFloat bound = BigFloat::pow10(-digits + 10, bits) * max(scale, BigFloat(1.0, bits));
  if (!converged || resid > bound) {
    throw Error(ErrorCode::NonConvergence,
                "root finder did not converge: achieved residual " + resid.sci(4) +
                    ", target " + bound.sci(4));
  }

  if (sort_output) std::sort(z.begin(), z.end(), LexLess{});

  RootSet rs;
  rs.roots = std::move(z);
  rs.residual_bound = resid;
  rs.precision = digits;
  return rs;
}

}  // namespace

RootSet complex_roots(const std::vector<BigComplex>& coeffs, long digits) {
  if (coeffs.size() < 2) throw Error(ErrorCode::Internal, "degree must be >= 1");
  if (coeffs.back().is_zero()) throw Error(ErrorCode::Internal, "leading coefficient is zero");
  const size_t d = coeffs.size() - 1;
  const mpfr_prec_t bits = bits_for_digits(digits + 20);

  if (d == 1) {
    RootSet rs;
    rs.roots.push_back(-(coeffs[0].with_prec(bits) / coeffs[1].with_prec(bits)));
    rs.residual_bound = BigFloat::pow10(-digits, bits);
    rs.precision = digits;
    return rs;
  }

  // Cauchy bound for the root moduli
  BigFloat lead = coeffs.back().abs().with_prec(bits);
  BigFloat radius(1.0, bits);
  for (size_t k = 0; k + 1 < coeffs.size(); ++k)
    radius = max(radius, BigFloat(1.0, bits) + coeffs[k].abs().with_prec(bits) / lead);

  // Deterministic spread of starting points on circles near the Cauchy
  // radius; golden-ratio radial jitter avoids symmetric stalls.
  std::vector<BigComplex> z(d);
  const BigFloat two_pi = [&] {
    BigFloat x(bits);
    mpfr_const_pi(x.get(), MPFR_RNDN);
    return x * 2.0;
  }();
  for (size_t k = 0; k < d; ++k) {
    double frac = std::fmod(0.6180339887498949 * static_cast<double>(k + 1), 1.0);
    BigFloat r = radius * (0.5 + 0.45 * frac);
    BigFloat theta = two_pi * ((static_cast<double>(k) + 0.25) / static_cast<double>(d)) +
                     BigFloat(0.01, bits) * static_cast<double>(k);
    BigFloat s(bits), co(bits);
    mpfr_sin_cos(s.get(), co.get(), theta.get(), MPFR_RNDN);
    z[k] = BigComplex(r * co, r * s);
  }

  return run_aberth(coeffs, digits, std::move(z), /*sort_output=*/true);
}

RootSet refine_roots(const RootSet& old, const std::vector<BigComplex>& coeffs, long digits) {
  if (digits <= old.precision)
    throw Error(ErrorCode::Internal, "refine_roots requires a higher precision");
  RootSet fresh = run_aberth(coeffs, digits, old.roots, /*sort_output=*/false);

  // Nearest-old-root matching must be a bijection; reorder to old labels.
  const size_t d = fresh.roots.size();
  std::vector<int> owner(d, -1);
  std::vector<BigComplex> ordered(d);
  for (size_t k = 0; k < d; ++k) {
    size_t best = 0;
    BigFloat best_dist = (fresh.roots[k] - old.roots[0]).abs();
    for (size_t j = 1; j < d; ++j) {
      BigFloat dist = (fresh.roots[k] - old.roots[j]).abs();
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    if (owner[best] >= 0)
      throw Error(ErrorCode::MatchAmbiguity,
                  "two refined roots match the same old root; old precision insufficient");
    owner[best] = static_cast<int>(k);
    ordered[best] = fresh.roots[k];
  }
  fresh.roots = std::move(ordered);
  return fresh;
}

}  // namespace relthue
