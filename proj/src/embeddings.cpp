#include "relthue/embeddings.hpp"

#include <algorithm>

#include "relthue/errors.hpp"

namespace relthue {

namespace {

std::vector<BigComplex> to_complex_coeffs(const std::vector<Int>& p, mpfr_prec_t bits) {
  std::vector<BigComplex> c;
  c.reserve(p.size());
  for (const auto& z : p) c.emplace_back(BigFloat(z, bits), BigFloat(0.0, bits));
  return c;
}

// Evaluate a rational polynomial at a complex point.
BigComplex eval_rat_poly(const std::vector<Rat>& p, const BigComplex& z, mpfr_prec_t bits) {
  BigComplex acc(bits);
  for (size_t k = p.size(); k-- > 0;) acc = acc * z + BigComplex(BigFloat(p[k], bits), BigFloat(0.0, bits));
  return acc;
}

// Gaussian elimination with partial (largest-modulus) pivoting.
std::vector<std::vector<BigComplex>> invert(const std::vector<std::vector<BigComplex>>& A,
                                            mpfr_prec_t bits) {
  const size_t m = A.size();
  std::vector<std::vector<BigComplex>> W = A, I(m, std::vector<BigComplex>(m, BigComplex(bits)));
  for (size_t i = 0; i < m; ++i) I[i][i] = BigComplex(BigFloat(1.0, bits), BigFloat(0.0, bits));
  for (size_t col = 0; col < m; ++col) {
    size_t piv = col;
    BigFloat best = W[col][col].abs();
    for (size_t r = col + 1; r < m; ++r) {
      BigFloat a = W[r][col].abs();
      if (a > best) {
        best = a;
        piv = r;
      }
    }
    if (best.is_zero()) throw Error(ErrorCode::Internal, "singular conjugate matrix S");
    std::swap(W[piv], W[col]);
    std::swap(I[piv], I[col]);
    for (size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      BigComplex factor = W[r][col] / W[col][col];
      for (size_t c = 0; c < m; ++c) {
        W[r][c] = W[r][c] - factor * W[col][c];
        I[r][c] = I[r][c] - factor * I[col][c];
      }
    }
  }
  for (size_t r = 0; r < m; ++r) {
    BigComplex d = W[r][r];
    for (size_t c = 0; c < m; ++c) I[r][c] = I[r][c] / d;
  }
  return I;
}

void check_s_inverse(const EmbeddingTable& t, long digits) {
  const size_t m = t.S.size();
  const mpfr_prec_t bits = bits_for_digits(digits);
  BigFloat worst(0.0, bits);
  for (size_t r = 0; r < m; ++r) {
    for (size_t c = 0; c < m; ++c) {
      BigComplex acc(bits);
      for (size_t k = 0; k < m; ++k) acc = acc + t.S[r][k] * t.S_inv[k][c];
      if (r == c) acc = acc - BigComplex(BigFloat(1.0, bits), BigFloat(0.0, bits));
      worst = max(worst, acc.abs());
    }
  }
  if (worst > BigFloat::pow10(-digits + 10, bits))
    throw Error(ErrorCode::Internal, "S * S^-1 deviates from identity: " + worst.sci(4));
}

void finish_table(EmbeddingTable& t, const ProblemSpec& spec, long digits) {
  const mpfr_prec_t bits = bits_for_digits(digits);
  const size_t m = static_cast<size_t>(spec.m);
  const size_t n = static_cast<size_t>(spec.n);
  const BigFloat real_tol = BigFloat::pow10(-(digits / 2), bits);

  t.omega.assign(m, {});
  t.S.assign(m, {});
  t.base_real.assign(m, 0);
  for (size_t j = 0; j < m; ++j) {
    t.base_real[j] = t.theta[j].im.abs() < real_tol ? 1 : 0;
    t.omega[j].reserve(m);
    for (size_t i = 0; i < m; ++i) t.omega[j].push_back(eval_rat_poly(spec.basis[i], t.theta[j], bits));
    t.S[j] = t.omega[j];
  }
  t.S_inv = invert(t.S, bits);
  check_s_inverse(t, digits);

  t.mu.clear();
  for (size_t h = 0; h < m; ++h) t.mu.push_back(t.embed(spec.mu, static_cast<int>(h)));

  // conjugates of f per base conjugate; roots are the alpha^(hj)
  bool all_real = true;
  for (size_t j = 0; j < m; ++j) all_real = all_real && t.base_real[j];
  t.alpha.assign(m, {});
  const BigFloat sep_tol = BigFloat::pow10(-(digits / 2), bits);
  for (size_t h = 0; h < m; ++h) {
    t.alpha[h].clear();
    const auto& rs = t.alpha_roots[h];
    for (size_t j = 0; j < n; ++j) {
      t.alpha[h].push_back(rs.roots[j]);
      if (rs.roots[j].im.abs() >= real_tol) all_real = false;
    }
    // numeric separation check (stands in for irreducibility of f)
    for (size_t a = 0; a < n; ++a)
      for (size_t b = a + 1; b < n; ++b)
        if ((t.alpha[h][a] - t.alpha[h][b]).abs() <= sep_tol)
          throw Error(ErrorCode::RepeatedRoots,
                      "relative_polynomial: conjugate " + std::to_string(h + 1) +
                          " has two roots closer than the separation tolerance");
  }
  t.k_totally_real = all_real;
}

std::vector<BigComplex> conjugate_poly_coeffs(const EmbeddingTable& t, const ProblemSpec& spec,
                                              int h, mpfr_prec_t bits) {
  std::vector<BigComplex> c;
  c.reserve(spec.f.size());
  for (const auto& a : spec.f) c.push_back(t.embed(a, h).with_prec(bits));
  return c;
}

}  // namespace

BigComplex EmbeddingTable::embed(const FieldElement& e, int h) const {
  const mpfr_prec_t bits = bits_for_digits(precision);
  BigComplex acc(bits);
  for (size_t i = 0; i < e.coords.size(); ++i) {
    if (e.coords[i] == 0) continue;
    acc = acc + omega[static_cast<size_t>(h)][i] * BigFloat(e.coords[i], bits);
  }
  return acc;
}

BigFloat EmbeddingTable::sinv_row_norm() const {
  const mpfr_prec_t bits = bits_for_digits(precision);
  BigFloat best(0.0, bits);
  for (const auto& row : S_inv) {
    BigFloat s(0.0, bits);
    for (const auto& e : row) s += e.abs();
    best = max(best, s);
  }
  return best;
}

BigFloat EmbeddingTable::alpha_size() const {
  BigFloat best(0.0, bits_for_digits(precision));
  for (const auto& row : alpha)
    for (const auto& a : row) best = max(best, a.abs());
  return best;
}

BigFloat EmbeddingTable::mu_size() const {
  BigFloat best(0.0, bits_for_digits(precision));
  for (const auto& v : mu) best = max(best, v.abs());
  return best;
}

std::shared_ptr<const EmbeddingTable> build_embeddings(const ProblemSpec& spec, long digits) {
  if (digits < 30) throw Error(ErrorCode::Internal, "embedding precision must be >= 30 digits");
  auto t = std::make_shared<EmbeddingTable>();
  t->precision = digits;
  t->m = spec.m;
  t->n = spec.n;
  const mpfr_prec_t bits = bits_for_digits(digits);

  if (spec.m == 1) {
    // degenerate base M = Q: theta is the rational root of a degree-1 poly
    t->theta_roots = complex_roots(to_complex_coeffs(spec.base_poly, bits), digits);
  } else {
    t->theta_roots = complex_roots(to_complex_coeffs(spec.base_poly, bits), digits);
  }
  t->theta = t->theta_roots.roots;

  // omega/S/mu need theta only; alpha needs the embedded f coefficients.
  // Order: build omega first (finish_table), but alpha roots are computed
  // here so refine can reuse labels.
  t->alpha_roots.resize(static_cast<size_t>(spec.m));
  // temporarily fill omega/S for embed()
  {
    EmbeddingTable& tt = *t;
    tt.omega.assign(static_cast<size_t>(spec.m), {});
    for (size_t j = 0; j < static_cast<size_t>(spec.m); ++j) {
      tt.omega[j].reserve(static_cast<size_t>(spec.m));
      for (size_t i = 0; i < static_cast<size_t>(spec.m); ++i)
        tt.omega[j].push_back(eval_rat_poly(spec.basis[i], tt.theta[j], bits));
    }
  }
  for (int h = 0; h < spec.m; ++h) {
    auto coeffs = conjugate_poly_coeffs(*t, spec, h, bits);
    if (coeffs.back().is_zero())
      throw Error(ErrorCode::NonMonic, "relative_polynomial: leading conjugate coefficient vanished");
    t->alpha_roots[static_cast<size_t>(h)] = complex_roots(coeffs, digits);
  }
  finish_table(*t, spec, digits);
  return t;
}

std::shared_ptr<const EmbeddingTable> refine_embeddings(const EmbeddingTable& old,
                                                        const ProblemSpec& spec, long digits) {
  if (digits <= old.precision) throw Error(ErrorCode::Internal, "refinement must raise precision");
  auto t = std::make_shared<EmbeddingTable>();
  t->precision = digits;
  t->m = spec.m;
  t->n = spec.n;
  const mpfr_prec_t bits = bits_for_digits(digits);

  t->theta_roots = refine_roots(old.theta_roots, to_complex_coeffs(spec.base_poly, bits), digits);
  t->theta = t->theta_roots.roots;

  t->alpha_roots.resize(static_cast<size_t>(spec.m));
  {
    EmbeddingTable& tt = *t;
    tt.omega.assign(static_cast<size_t>(spec.m), {});
    for (size_t j = 0; j < static_cast<size_t>(spec.m); ++j) {
      tt.omega[j].reserve(static_cast<size_t>(spec.m));
      for (size_t i = 0; i < static_cast<size_t>(spec.m); ++i)
        tt.omega[j].push_back(eval_rat_poly(spec.basis[i], tt.theta[j], bits));
    }
  }
  for (int h = 0; h < spec.m; ++h) {
    auto coeffs = conjugate_poly_coeffs(*t, spec, h, bits);
    t->alpha_roots[static_cast<size_t>(h)] =
        refine_roots(old.alpha_roots[static_cast<size_t>(h)], coeffs, digits);
  }
  finish_table(*t, spec, digits);
  return t;
}

EmbeddingProvider::EmbeddingProvider(const ProblemSpec& spec, long base_digits) : spec_(spec) {
  base_ = build_embeddings(spec, base_digits);
  best_ = base_;
}

std::shared_ptr<const EmbeddingTable> EmbeddingProvider::at_least(long digits) {
  std::lock_guard<std::mutex> lock(mu_);
  if (best_->precision >= digits) return best_;
  best_ = refine_embeddings(*best_, spec_, digits);
  return best_;
}

}  // namespace relthue
