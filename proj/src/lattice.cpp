#include "relthue/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "relthue/errors.hpp"

namespace relthue {

namespace {

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
  Int s = 0;
  for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

Int round_div(const Int& num, const Int& den) {
  // nearest integer to num/den, den > 0, ties toward +inf
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (2 * r >= den) q += 1;
  return q;
}

}  // namespace

IntMatrix gram_matrix(const IntMatrix& columns) {
  const size_t d = columns.size();
  IntMatrix G(d, std::vector<Int>(d));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j <= i; ++j) {
      G[i][j] = dot(columns[i], columns[j]);
      G[j][i] = G[i][j];
    }
  return G;
}

IntLattice build_lattice(const EmbeddingTable& emb, int h, int i, const Int& H, long digits) {
  const int m = emb.m;
  const long h_digits = static_cast<long>(mpz_sizeinbase(H.get_mpz_t(), 10));
  if (digits < h_digits + 50)
    throw Error(ErrorCode::Internal, "lattice precision must be >= digits(H) + 50");
  if (emb.precision < digits)
    throw Error(ErrorCode::Internal, "embedding table precision below the requested lattice precision");

  const mpfr_prec_t bits = bits_for_digits(digits);
  const bool complex_case = !emb.k_totally_real;
  const int rounded = complex_case ? 2 : 1;
  const size_t dim = 2 * static_cast<size_t>(m);
  const size_t rows = dim + static_cast<size_t>(rounded);

  // linear-form coefficients: (w_1..w_m, -a*w_1 .. -a*w_m) at conjugate h
  std::vector<BigComplex> coeff(dim);
  const auto& w = emb.omega[static_cast<size_t>(h)];
  const BigComplex& a = emb.alpha[static_cast<size_t>(h)][static_cast<size_t>(i)];
  for (int t = 0; t < m; ++t) {
    coeff[static_cast<size_t>(t)] = w[static_cast<size_t>(t)].with_prec(bits);
    coeff[static_cast<size_t>(m + t)] = -(a * w[static_cast<size_t>(t)]).with_prec(bits);
  }

  BigFloat Hf(H, bits);
  IntLattice L;
  L.scale_H = H;
  L.h = h;
  L.i = i;
  L.rounded_rows = rounded;
  L.columns.assign(dim, std::vector<Int>(rows, 0));
  L.row_rounding.assign(static_cast<size_t>(rounded), 0.0);
  for (size_t c = 0; c < dim; ++c) {
    L.columns[c][c] = 1;
    BigFloat re = Hf * coeff[c].re;
    L.columns[c][dim] = re.to_mpz(MPFR_RNDN);
    L.row_rounding[0] +=
        (re - BigFloat(L.columns[c][dim], bits)).abs().to_double() + 1e-9;
    if (complex_case) {
      BigFloat im = Hf * coeff[c].im;
      L.columns[c][dim + 1] = im.to_mpz(MPFR_RNDN);
      L.row_rounding[1] +=
          (im - BigFloat(L.columns[c][dim + 1], bits)).abs().to_double() + 1e-9;
    }
  }
  return L;
}

LllResult lll_reduce(const IntMatrix& columns, long delta_num, long delta_den) {
  const size_t D = columns.size();
  if (D == 0) throw Error(ErrorCode::DependentColumns, "empty basis");
  if (!(delta_num * 4 > delta_den && delta_num <= delta_den))
    throw Error(ErrorCode::Internal, "Lovasz parameter must lie in (1/4, 1]");

  IntMatrix G = gram_matrix(columns);
  IntMatrix U(D, std::vector<Int>(D, 0));
  for (size_t c = 0; c < D; ++c) U[c][c] = 1;
  // U is kept column-major like the basis: U[c] is the coefficient vector of
  // output column c in terms of the input columns.

  // integral Gram-Schmidt bookkeeping: d[0]=1, d[k] = det of leading k-by-k
  // Gram block; lambda[i][j] = d[j+1-th] * mu_{i,j} (1-based classic form,
  // stored 0-based: lambda[i][j] with j < i)
  std::vector<Int> d(D + 1);
  std::vector<std::vector<Int>> lam(D, std::vector<Int>(D, 0));
  d[0] = 1;

  auto gram_init = [&]() {
    for (size_t i = 0; i < D; ++i) {
      for (size_t j = 0; j <= i; ++j) {
        Int u = G[i][j];
        for (size_t k = 0; k < j; ++k) {
          u = d[k + 1] * u - lam[i][k] * lam[j][k];
          mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d[k].get_mpz_t());
        }
        if (j < i) {
          lam[i][j] = u;
        } else {
          d[i + 1] = u;
          if (d[i + 1] <= 0)
            throw Error(ErrorCode::DependentColumns, "columns are linearly dependent");
        }
      }
    }
  };
  gram_init();

  auto update_gram_sub = [&](size_t k, size_t l, const Int& q) {
    // column k <- column k - q * column l, reflected in G and U
    if (q == 0) return;
    for (size_t c = 0; c < D; ++c) U[k][c] -= q * U[l][c];
    // G[k][k] first (uses old G[k][l])
    G[k][k] += q * q * G[l][l] - 2 * q * G[k][l];
    for (size_t t = 0; t < D; ++t) {
      if (t == k) continue;
      G[k][t] -= q * G[l][t];
      G[t][k] = G[k][t];
    }
  };

  auto redi = [&](size_t k, size_t l) {
    // size-reduce lambda[k][l] against d[l+1]
    Int two_lam = 2 * lam[k][l];
    if (two_lam > d[l + 1] || two_lam < -d[l + 1]) {
      Int q = round_div(lam[k][l], d[l + 1]);
      update_gram_sub(k, l, q);
      lam[k][l] -= q * d[l + 1];
      for (size_t t = 0; t < l; ++t) lam[k][t] -= q * lam[l][t];
    }
  };

  auto swapi = [&](size_t k) {
    // swap columns k-1 and k
    std::swap(U[k - 1], U[k]);
    std::swap(G[k - 1], G[k]);
    for (size_t t = 0; t < D; ++t) std::swap(G[t][k - 1], G[t][k]);
    for (size_t t = 0; t + 1 < k; ++t) std::swap(lam[k][t], lam[k - 1][t]);
    Int lam_k = lam[k][k - 1];
    Int B = d[k - 1] * d[k + 1] + lam_k * lam_k;
    mpz_divexact(B.get_mpz_t(), B.get_mpz_t(), d[k].get_mpz_t());
    for (size_t s = k + 1; s < D; ++s) {
      Int t = lam[s][k];
      lam[s][k] = d[k + 1] * lam[s][k - 1] - lam_k * t;
      mpz_divexact(lam[s][k].get_mpz_t(), lam[s][k].get_mpz_t(), d[k].get_mpz_t());
      lam[s][k - 1] = B * t + lam_k * lam[s][k];
      mpz_divexact(lam[s][k - 1].get_mpz_t(), lam[s][k - 1].get_mpz_t(), d[k + 1].get_mpz_t());
    }
    d[k] = B;
  };

  size_t k = 1;
  while (k < D) {
    redi(k, k - 1);
    // swap iff den*(d[k+1]*d[k-1] + lambda^2) < num*d[k]^2  (delta = num/den)
    Int lhs = delta_den * (d[k + 1] * d[k - 1] + lam[k][k - 1] * lam[k][k - 1]);
    Int rhs = delta_num * d[k] * d[k];
    if (lhs < rhs) {
      swapi(k);
      k = k > 1 ? k - 1 : 1;
    } else {
      for (size_t l = k - 1; l-- > 0;) redi(k, l);
      ++k;
    }
  }

  LllResult res;
  res.transform = U;
  res.b1_norm_sq = G[0][0];
  // rebuild the reduced columns from the transform
  const size_t rows = columns[0].size();
  res.basis.assign(D, std::vector<Int>(rows, 0));
  for (size_t c = 0; c < D; ++c)
    for (size_t in = 0; in < D; ++in) {
      if (U[c][in] == 0) continue;
      for (size_t r = 0; r < rows; ++r) res.basis[c][r] += U[c][in] * columns[in][r];
    }
  return res;
}

BigFloat paper_threshold(int m, const BigFloat& A0) {
  const mpfr_prec_t bits = std::max<mpfr_prec_t>(A0.prec(), bits_for_digits(40));
  BigFloat factor((2 * m + 1) * std::ldexp(1.0, 2 * m - 1), bits);
  return factor.sqrt() * A0.with_prec(bits);
}

BigFloat strengthened_threshold_sq(int m, const std::vector<double>& row_rounding,
                                   const BigFloat& A0, long delta_num, long delta_den) {
  const mpfr_prec_t bits = std::max<mpfr_prec_t>(A0.prec(), bits_for_digits(40));
  BigFloat a0 = A0.with_prec(bits);
  BigFloat a0sq = a0 * a0;
  double rows = 0;
  for (double eps : row_rounding) {
    double e = std::min(eps, static_cast<double>(m));  // worst case is m
    rows += (e + 1.0) * (e + 1.0);
  }
  BigFloat inner = a0sq * static_cast<double>(2 * m) + a0sq * rows;
  // |b1|^2 <= c_delta * lambda_1^2 for a delta-reduced basis
  BigFloat c_delta = (BigFloat(4 * delta_den, bits) / BigFloat(4 * delta_num - delta_den, bits))
                         .pow_ui(static_cast<unsigned long>(2 * m - 1))
                         .inflated(30);
  return inner * c_delta;
}

ReductionOutcome reduction_step(const BigFloat& A0, int h, int i, const ConstantSet& consts,
                                EmbeddingProvider& emb, const ReductionOptions& opts) {
  const int m = consts.m;
  const int n = consts.n;
  const bool totally_real = consts.totally_real;
  const int rounded = totally_real ? 1 : 2;
  const int D = 2 * m;
  const mpfr_prec_t bits = bits_for_digits(80);

  BigFloat a0 = A0.with_prec(bits);
  BigFloat h_f = a0.pow_ui(static_cast<unsigned long>(totally_real ? 2 * m : m));
  Int H = h_f.ceil().to_mpz(MPFR_RNDU);
  if (H < 1) H = 1;

  // the reduction runs LLL at delta = 99/100 for a tight quality constant
  const long dnum = 99, dden = 100;

  ReductionOutcome out;
  out.threshold = strengthened_threshold_sq(m, std::vector<double>(rounded, m), a0, dnum, dden)
                      .inflated(30)
                      .sqrt();

  // one LLL pass at a given scale; fills the outcome on success
  auto attempt_at = [&](const Int& scale, int attempt) -> bool {
    const long h_digits = static_cast<long>(mpz_sizeinbase(scale.get_mpz_t(), 10));
    const long p = h_digits + std::max<long>(120, 15L * n);
    auto table = emb.at_least(p);
    IntLattice L = build_lattice(*table, h, i, scale, p);
    LllResult red = lll_reduce(L.columns, dnum, dden);

    // threshold uses the built lattice's actual rounding-error sums
    BigFloat tsq = strengthened_threshold_sq(m, L.row_rounding, a0, dnum, dden).inflated(30);
    out.threshold = tsq.sqrt();

    BigFloat b1(red.b1_norm_sq, bits);
    out.b1_norm = b1.sqrt();
    out.H = scale;
    out.digits = p;
    out.retries = attempt;
    if (tsq.cmp(red.b1_norm_sq) > 0) return false;

    // A <= (d_hi * H / A0)^(1/(n-1)), ceiled to an integer
    BigFloat d = consts.d_used(h, i, opts.specific_constants).with_prec(bits);
    BigFloat nb = (d * BigFloat(scale, bits) / a0)
                      .inflated(40)
                      .nth_root(static_cast<unsigned long>(n - 1))
                      .inflated(40)
                      .ceil();
    if (nb < 1.0) nb = BigFloat(1.0, bits);
    out.new_bound = nb;
    out.success = true;
    return true;
  };

  Int H_fail = 0;
  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    if (attempt_at(H, attempt)) break;
    H_fail = H;
    // |b1| short of the target: jump the scale guided by the shortfall,
    // at least one decade per retry.
    BigFloat ratio = out.threshold / max(out.b1_norm, BigFloat(1.0, bits));
    BigFloat jump = ratio.pow_ui(static_cast<unsigned long>(D / rounded)) * 4.0;
    jump = min(jump, BigFloat(1e8, bits));
    BigFloat next = max(BigFloat(H, bits) * 10.0, BigFloat(H, bits) * jump);
    H = next.ceil().to_mpz(MPFR_RNDU);
  }
  if (!out.success) return out;

  // The retry jump overshoots and the overshoot feeds the reduced bound.
  // When LLL at this scale is cheap, bisect back toward the smallest
  // passing H. (Only after a retry; the pair's first scale is fixed.)
  if (H_fail > 0 && mpz_sizeinbase(out.H.get_mpz_t(), 10) <= 200) {
    ReductionOutcome best = out;
    Int lo = H_fail, hi = out.H;
    for (int round = 0; round < 5 && hi > 2 * lo; ++round) {
      Int mid = sqrt(lo * hi);
      if (attempt_at(mid, best.retries)) {
        best = out;
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out = best;
    out.success = true;
  }
  return out;
}

ReduceAllResult reduce_all(const BigFloat& A_B, const ConstantSet& consts, EmbeddingProvider& emb,
                           const ProblemSpec& /*spec*/, const ReductionOptions& opts, int threads) {
  const int m = consts.m;
  const int n = consts.n;
  const mpfr_prec_t bits = bits_for_digits(80);
  const BigFloat floor_bound = consts.tiny_floor.with_prec(bits);

  struct Chain {
    int h, i;
    BigFloat final_bound;
    std::vector<ReductionLogRow> rows;
    std::string error;
  };
  std::vector<Chain> chains;
  for (int h = 0; h < m; ++h)
    for (int i = 0; i < n; ++i) chains.push_back({h, i, BigFloat(0.0, bits), {}, {}});

  auto run_chain = [&](Chain& ch) {
    BigFloat a0 = A_B.with_prec(bits);
    int step = 1;
    while (true) {
      if (a0 <= floor_bound) break;  // the enumeration floor dominates
      auto t0 = std::chrono::steady_clock::now();
      ReductionOutcome out = reduction_step(a0, ch.h, ch.i, consts, emb, opts);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (!out.success) {
        if (step == 1) {
          ch.error = "reduction failed at the first step for pair (h=" + std::to_string(ch.h + 1) +
                     ", i=" + std::to_string(ch.i + 1) + ") even after retries";
        }
        break;
      }
      ReductionLogRow row;
      row.h = ch.h;
      row.i = ch.i;
      row.step = step;
      row.A0 = a0;
      row.H = out.H;
      row.threshold = out.threshold;
      row.digits = out.digits;
      row.new_bound = out.new_bound;
      row.seconds = secs;
      row.retries = out.retries;
      ch.rows.push_back(row);

      BigFloat nb = out.new_bound.with_prec(bits);
      if (nb >= a0) break;           // no progress; keep a0
      bool stop = nb > a0 * 0.9;     // "not considerably less" any more
      a0 = nb;
      ++step;
      if (stop) break;
    }
    ch.final_bound = a0;
  };

  if (threads <= 1 || chains.size() <= 1) {
    for (auto& ch : chains) run_chain(ch);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    const size_t count = chains.size();
    auto worker = [&]() {
      for (;;) {
        size_t idx = next.fetch_add(1);
        if (idx >= count) return;
        run_chain(chains[idx]);
      }
    };
    const size_t nthreads = std::min<size_t>(static_cast<size_t>(threads), count);
    pool.reserve(nthreads);
    for (size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (const auto& ch : chains)
    if (!ch.error.empty()) throw Error(ErrorCode::PrecisionExhausted, ch.error);

  ReduceAllResult res;
  res.A_R = floor_bound.ceil();
  for (auto& ch : chains) {
    res.A_R = max(res.A_R, ch.final_bound.ceil());
    for (auto& r : ch.rows) res.log.push_back(std::move(r));
  }
  return res;
}

std::string reduction_table(const std::vector<ReductionLogRow>& rows) {
  std::ostringstream os;
  char line[256];
  os << "  h  i step          A0                H        |b1| >=    digits        new A0      time\n";
  for (const auto& r : rows) {
    std::string h_str;
    long hd = static_cast<long>(mpz_sizeinbase(r.H.get_mpz_t(), 10));
    if (hd <= 12) {
      h_str = r.H.get_str();
    } else {
      BigFloat hf(r.H, bits_for_digits(20));
      h_str = hf.sci(4);
    }
    std::snprintf(line, sizeof line, " %2d %2d %4d  %12s %16s %12s  %8ld  %12s  %7.2fs\n",
                  r.h + 1, r.i + 1, r.step, r.A0.sci(4).c_str(), h_str.c_str(),
                  r.threshold.sci(7).c_str(), r.digits, r.new_bound.sci(4).c_str(), r.seconds);
    os << line;
  }
  return os.str();
}

CholeskyFactor cholesky_decompose(const std::vector<std::vector<BigFloat>>& Q, long digits) {
  const size_t d = Q.size();
  const mpfr_prec_t bits = bits_for_digits(digits);
  std::vector<std::vector<BigFloat>> R(d, std::vector<BigFloat>(d, BigFloat(bits)));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = i; j < d; ++j) {
      BigFloat s = Q[i][j].with_prec(bits);
      for (size_t k = 0; k < i; ++k) s -= R[k][i] * R[k][j];
      if (i == j) {
        if (!(s > 0.0))
          throw Error(ErrorCode::NotPositiveDefinite,
                      "nonpositive pivot at row " + std::to_string(i + 1));
        R[i][i] = s.sqrt();
      } else {
        R[i][j] = s / R[i][i];
      }
    }
  }
  CholeskyFactor f;
  f.R = std::move(R);
  f.precision = digits;
  return f;
}

CholeskyFactor cholesky_decompose(const IntMatrix& Q, long digits) {
  const mpfr_prec_t bits = bits_for_digits(digits);
  std::vector<std::vector<BigFloat>> Qf(Q.size());
  for (size_t i = 0; i < Q.size(); ++i) {
    Qf[i].reserve(Q.size());
    for (size_t j = 0; j < Q.size(); ++j) Qf[i].emplace_back(Q[i][j], bits);
  }
  return cholesky_decompose(Qf, digits);
}

namespace {

// Depth-first interval recursion in long double with widening slack; every
// admitted leaf is re-checked against R at the factor's precision, so slack
// only costs time, never correctness.
class FastEnumerator {
 public:
  FastEnumerator(const CholeskyFactor& f, const BigFloat& rhs, long box,
                 const std::function<bool(const std::vector<long>&)>& visit)
      : f_(f), visit_(visit), box_(box) {
    d_ = f.R.size();
    r_.assign(d_, std::vector<long double>(d_, 0.0L));
    long double max_entry = 0.0L;
    for (size_t i = 0; i < d_; ++i)
      for (size_t j = i; j < d_; ++j) {
        r_[i][j] = f.R[i][j].to_long_double();
        max_entry = std::max(max_entry, fabsl(r_[i][j]));
      }
    rhs_ = rhs.to_long_double();
    rhs_hi_ = rhs + max(BigFloat(1e-9, 64), rhs * 1e-20);
    // worst-case rounding of one inner term over the recursion
    term_err_ = static_cast<long double>(d_ + 2) * max_entry *
                    static_cast<long double>(box > 0 ? box : 1) * 1e-18L +
                1e-12L;
    budget_eps_ = 2.0L * sqrtl(rhs_ > 0 ? rhs_ : 1.0L) * term_err_ + rhs_ * 1e-15L + 1e-9L;
    x_.assign(d_, 0);
  }

  bool run() {
    if (d_ == 0) return true;
    return descend(static_cast<long>(d_) - 1, rhs_);
  }

 private:
  bool check_leaf() {
    const mpfr_prec_t bits = bits_for_digits(f_.precision);
    BigFloat q(0.0, bits);
    for (size_t i = 0; i < d_; ++i) {
      BigFloat t(0.0, bits);
      for (size_t j = i; j < d_; ++j) t += f_.R[i][j] * BigFloat(x_[j], bits);
      q += t * t;
    }
    return q <= rhs_hi_;
  }

  bool descend(long level, long double budget) {
    const size_t i = static_cast<size_t>(level);
    long double sigma = 0.0L;
    for (size_t j = i + 1; j < d_; ++j) sigma += r_[i][j] * static_cast<long double>(x_[j]);
    const long double rii = r_[i][i];
    const long double center = -sigma / rii;
    const long double rad = budget > 0.0L ? sqrtl(budget) / rii : 0.0L;
    const long double slack = term_err_ / rii + 1e-9L * fabsl(center) + 1e-6L;
    long lo = static_cast<long>(ceill(center - rad - slack));
    long hi = static_cast<long>(floorl(center + rad + slack));
    lo = std::max(lo, -box_);
    hi = std::min(hi, box_);
    for (long v = lo; v <= hi; ++v) {
      x_[i] = v;
      const long double t = rii * static_cast<long double>(v) + sigma;
      const long double next = budget - t * t;
      if (next < -budget_eps_) continue;
      if (level == 0) {
        if (check_leaf()) {
          if (!visit_(x_)) return false;
        }
      } else {
        if (!descend(level - 1, next > 0.0L ? next : 0.0L)) return false;
      }
    }
    x_[i] = 0;
    return true;
  }

  const CholeskyFactor& f_;
  const std::function<bool(const std::vector<long>&)>& visit_;
  long box_;
  size_t d_ = 0;
  std::vector<std::vector<long double>> r_;
  long double rhs_ = 0, term_err_ = 0, budget_eps_ = 0;
  BigFloat rhs_hi_;
  std::vector<long> x_;
};

// Full-precision fallback for scales beyond long double.
class MpfrEnumerator {
 public:
  MpfrEnumerator(const CholeskyFactor& f, const BigFloat& rhs, long box,
                 const std::function<bool(const std::vector<long>&)>& visit)
      : f_(f), visit_(visit), box_(box), bits_(bits_for_digits(f.precision)) {
    d_ = f.R.size();
    rhs_ = rhs.with_prec(bits_);
    rhs_hi_ = rhs_ + max(BigFloat(1e-9, 64), rhs_ * 1e-20);
    budget_eps_ = max(BigFloat(1e-9, bits_), rhs_ * BigFloat::pow10(-f.precision + 25, bits_));
    x_.assign(d_, 0);
  }

  bool run() {
    if (d_ == 0) return true;
    return descend(static_cast<long>(d_) - 1, rhs_);
  }

 private:
  bool descend(long level, BigFloat budget) {
    const size_t i = static_cast<size_t>(level);
    BigFloat sigma(0.0, bits_);
    for (size_t j = i + 1; j < d_; ++j)
      sigma += f_.R[i][j] * BigFloat(x_[j], bits_);
    const BigFloat& rii = f_.R[i][i];
    BigFloat center = -(sigma / rii);
    BigFloat rad = budget > 0.0 ? budget.sqrt() / rii : BigFloat(0.0, bits_);
    BigFloat slack = budget_eps_ / rii + BigFloat::pow10(-9, bits_) * center.abs() + BigFloat(1e-6, bits_);
    BigFloat lo_f = (center - rad - slack).ceil();
    BigFloat hi_f = (center + rad + slack).floor();
    long lo = lo_f.fits_long() ? lo_f.to_long() : -box_;
    long hi = hi_f.fits_long() ? hi_f.to_long() : box_;
    lo = std::max(lo, -box_);
    hi = std::min(hi, box_);
    for (long v = lo; v <= hi; ++v) {
      x_[i] = v;
      BigFloat t = rii * BigFloat(v, bits_) + sigma;
      BigFloat next = budget - t * t;
      if (next < -budget_eps_) continue;
      if (level == 0) {
        if (!visit_(x_)) return false;
      } else {
        if (!descend(level - 1, max(next, BigFloat(0.0, bits_)))) return false;
      }
    }
    x_[i] = 0;
    return true;
  }

  const CholeskyFactor& f_;
  const std::function<bool(const std::vector<long>&)>& visit_;
  long box_;
  mpfr_prec_t bits_;
  size_t d_ = 0;
  BigFloat rhs_, rhs_hi_, budget_eps_;
  std::vector<long> x_;
};

}  // namespace

void enumerate_quadratic(const CholeskyFactor& R, const BigFloat& rhs, long box,
                         const std::function<bool(const std::vector<long>&)>& visit) {
  if (box < 0 || R.R.empty()) return;
  if (!(rhs > 0.0)) return;

  double max_entry = 0;
  for (const auto& row : R.R)
    for (const auto& e : row) max_entry = std::max(max_entry, std::fabs(e.to_double()));
  const bool fits_fast = max_entry < 1e15 && rhs.to_double() < 1e30;
  if (fits_fast) {
    FastEnumerator e(R, rhs, box, visit);
    e.run();
  } else {
    MpfrEnumerator e(R, rhs, box, visit);
    e.run();
  }
}

std::vector<std::vector<long>> enumerate_quadratic(const CholeskyFactor& R, const BigFloat& rhs,
                                                   long box) {
  std::vector<std::vector<long>> out;
  enumerate_quadratic(R, rhs, box, [&](const std::vector<long>& x) {
    out.push_back(x);
    return true;
  });
  return out;
}

}  // namespace relthue
