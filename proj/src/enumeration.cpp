#include "relthue/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <set>
#include <thread>

#include "relthue/errors.hpp"
#include "relthue/lattice.hpp"
#include "relthue/roots.hpp"

namespace relthue {

namespace {

using CD = std::complex<double>;

constexpr double kIntegralityTol = 1e-5;   // filter before exact verification
constexpr double kSuspectBand = 1e-3;      // near-misses re-run in high precision
constexpr double kRealTol = 1e-3;          // imaginary-part cut at real conjugates

struct FastTables {
  int m = 0, n = 0;
  std::vector<std::vector<CD>> omega;   // [h][i]
  std::vector<std::vector<CD>> alpha;   // [h][j]
  std::vector<CD> mu;                   // [h]
  std::vector<std::vector<CD>> fcoef;   // [h][k], k ascending
  std::vector<std::vector<CD>> sinv;    // [i][h]
  std::vector<char> base_real;
  std::vector<double> minsep;           // per h
  std::vector<double> y_guess_floor;    // |Y^(h)| above which alpha*Y inits are used
  double c2 = 1.0;

  explicit FastTables(const EmbeddingTable& emb) {
    m = emb.m;
    n = emb.n;
    auto cd = [](const BigComplex& z) { return CD(z.re.to_double(), z.im.to_double()); };
    omega.resize(m);
    alpha.resize(m);
    fcoef.resize(m);
    mu.resize(m);
    base_real = emb.base_real;
    for (int h = 0; h < m; ++h) {
      for (int i = 0; i < m; ++i) omega[h].push_back(cd(emb.omega[h][i]));
      for (int j = 0; j < n; ++j) alpha[h].push_back(cd(emb.alpha[h][j]));
      mu[h] = cd(emb.mu[h]);
    }
    sinv.assign(m, std::vector<CD>(m));
    for (int i = 0; i < m; ++i)
      for (int h = 0; h < m; ++h) sinv[i][h] = cd(emb.S_inv[i][h]);
    minsep.assign(m, 1e300);
    for (int h = 0; h < m; ++h)
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          minsep[h] = std::min(minsep[h], std::abs(alpha[h][a] - alpha[h][b]));
    y_guess_floor.resize(m);
    for (int h = 0; h < m; ++h) {
      double mun = std::pow(std::max(std::abs(mu[h]), 1e-300), 1.0 / n);
      y_guess_floor[h] = 2.0 + 2.0 * mun;
    }
    c2 = emb.sinv_row_norm().to_double();
  }

  void fill_fcoef(const ProblemSpec& spec, const EmbeddingTable& emb) {
    for (int h = 0; h < m; ++h) {
      fcoef[h].clear();
      for (const auto& a : spec.f) {
        BigComplex z = emb.embed(a, h);
        fcoef[h].push_back(CD(z.re.to_double(), z.im.to_double()));
      }
    }
  }
};

// Aberth sweep in double precision; returns false if it did not converge to
// distinct, small-residual roots. Corrections parked at the rounding noise
// floor count as converged once they stop improving, as long as they sit
// well below the integrality tolerance.
bool aberth_double(const std::vector<CD>& c, std::vector<CD>& z, int max_sweeps) {
  const int d = static_cast<int>(c.size()) - 1;
  bool converged = false;
  double best = 1e300;
  int stalled = 0;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double worst = 0.0;
    for (int k = 0; k < d; ++k) {
      CD p = c[d], dp = 0.0;
      for (int t = d - 1; t >= 0; --t) {
        dp = dp * z[k] + p;
        p = p * z[k] + c[t];
      }
      if (p == 0.0) continue;
      CD corr;
      if (dp == 0.0) {
        corr = CD(1e-8, 1e-8);
      } else {
        CD newton = p / dp;
        CD s = 0.0;
        for (int j = 0; j < d; ++j) {
          if (j == k) continue;
          CD diff = z[k] - z[j];
          if (diff == 0.0) diff = CD(1e-14, 0);
          s += 1.0 / diff;
        }
        CD denom = 1.0 - newton * s;
        corr = denom == 0.0 ? newton : newton / denom;
      }
      z[k] -= corr;
      double scale = std::max(1.0, std::abs(z[k]));
      worst = std::max(worst, std::abs(corr) / scale);
    }
    if (worst < 1e-12) {
      converged = true;
      break;
    }
    if (worst < 0.7 * best) {
      best = std::min(best, worst);
      stalled = 0;
    } else if (++stalled >= 6 && std::max(best, worst) < 1e-9) {
      converged = true;
      break;
    }
  }
  if (!converged) return false;
  // distinctness guard: ambiguous clusters go to the high-precision path
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      double scale = std::max({1.0, std::abs(z[a]), std::abs(z[b])});
      if (std::abs(z[a] - z[b]) < 1e-7 * scale) return false;
    }
  return true;
}

bool solve_conjugate_double(const FastTables& ft, int h, CD Y, std::vector<CD>& roots) {
  const int n = ft.n;
  const double ys = std::abs(Y);

  // Solve for T/|Y| when |Y| > 1: the coefficients a_k * (Y/|Y|)^(n-k) stay
  // O(|a|), which keeps the double-precision noise floor far below the
  // integrality tolerance. Unscaled, the constant term grows like |Y|^n.
  const bool scaled = ys > 1.0;
  const CD u = scaled ? Y / ys : Y;
  double mu_scale = 1.0;
  if (scaled)
    for (int k = 0; k < n; ++k) mu_scale /= ys;

  std::vector<CD> c(n + 1);
  CD upow = 1.0;
  for (int k = n; k >= 0; --k) {
    c[k] = ft.fcoef[h][k] * upow;
    upow *= u;
  }
  c[0] -= ft.mu[h] * mu_scale;
  if (!(std::abs(c[n] - CD(1.0, 0.0)) < 1e-9)) return false;  // conjugates of a monic f

  roots.assign(n, CD(0, 0));
  bool ok = false;
  if (ys >= ft.y_guess_floor[h]) {
    for (int j = 0; j < n; ++j) roots[j] = ft.alpha[h][j] * u;
    ok = aberth_double(c, roots, 60);
  }
  if (!ok) {
    // Cauchy-circle start
    double radius = 1.0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, 1.0 + std::abs(c[k]));
    for (int j = 0; j < n; ++j) {
      double frac = std::fmod(0.6180339887498949 * (j + 1), 1.0);
      double r = radius * (0.5 + 0.45 * frac);
      double th = 2.0 * M_PI * (j + 0.25) / n + 0.01 * j;
      roots[j] = CD(r * std::cos(th), r * std::sin(th));
    }
    ok = aberth_double(c, roots, 250);
  }
  if (!ok) return false;
  if (scaled)
    for (auto& r : roots) r *= ys;
  return true;
}

struct Collector {
  const ProblemSpec& spec;
  std::set<std::pair<std::vector<Int>, std::vector<Int>>> seen;
  std::vector<Solution> out;
  SearchStats stats;

  explicit Collector(const ProblemSpec& s) : spec(s) {}

  void try_candidate(std::vector<Int> x, std::vector<Int> y) {
    Solution s;
    s.x = std::move(x);
    s.y = std::move(y);
    if (spec.n % 2 == 0) s = canonicalize(std::move(s), spec.n);
    auto key = std::make_pair(s.y, s.x);
    if (seen.count(key)) return;
    ++stats.exact_checks;
    FieldElement X{s.x}, Y{s.y};
    if (evaluate_norm(X, Y, spec) == spec.mu) {
      s.verified = true;
      s.canonical_sign = spec.n % 2 == 0;
      seen.insert(key);
      out.push_back(std::move(s));
    }
  }
};

// High-precision mirror of the per-y work; used when the double path cannot
// vouch for its roots or a tuple lands in the suspect band.
void direct_search_y_mpfr(const std::vector<long>& y, const ProblemSpec& spec,
                          const EmbeddingTable& emb, long digits, double xbound_scale,
                          Collector& col) {
  const int m = spec.m, n = spec.n;
  const mpfr_prec_t bits = bits_for_digits(digits);
  FieldElement Ye(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) Ye.coords[i] = y[i];

  std::vector<std::vector<BigComplex>> roots(m);
  for (int h = 0; h < m; ++h) {
    BigComplex Y = emb.embed(Ye, h);
    std::vector<BigComplex> c(n + 1, BigComplex(bits));
    BigComplex ypow(BigFloat(1.0, bits), BigFloat(0.0, bits));
    for (int k = n; k >= 0; --k) {
      c[k] = emb.embed(spec.f[k], h) * ypow;
      ypow = ypow * Y;
    }
    c[0] = c[0] - emb.mu[h];
    RootSet rs = complex_roots(c, digits);
    for (auto& r : rs.roots) {
      if (emb.base_real[h] && r.im.abs().to_double() > kRealTol * std::max(1.0, r.abs().to_double()))
        continue;
      roots[h].push_back(r);
    }
  }

  std::vector<int> idx(m, 0);
  std::vector<BigComplex> xv(m, BigComplex(bits));
  while (true) {
    bool ok = true;
    double maxX = 0;
    for (int h = 0; h < m; ++h) {
      if (roots[h].empty()) {
        ok = false;
        break;
      }
      maxX = std::max(maxX, roots[h][idx[h]].abs().to_double());
    }
    if (!ok) return;
    ++col.stats.tuples;
    std::vector<Int> xi(m);
    bool good = true;
    double xbound = xbound_scale * maxX + 1.5;
    for (int i = 0; i < m && good; ++i) {
      BigComplex acc(bits);
      for (int h = 0; h < m; ++h) acc = acc + emb.S_inv[i][h] * roots[h][idx[h]];
      double im = acc.im.abs().to_double();
      double re = acc.re.to_double();
      double rounded = std::nearbyint(re);
      if (im > kIntegralityTol || std::fabs(re - rounded) > kIntegralityTol ||
          std::fabs(rounded) > xbound)
        good = false;
      else
        xi[i] = static_cast<long>(rounded);
    }
    if (good) {
      ++col.stats.candidates;
      std::vector<Int> yi(m);
      for (int i = 0; i < m; ++i) yi[i] = y[i];
      col.try_candidate(std::move(xi), std::move(yi));
    }
    int level = m - 1;
    while (level >= 0 && ++idx[level] >= static_cast<int>(roots[level].size())) {
      idx[level] = 0;
      --level;
    }
    if (level < 0) break;
  }
}

void direct_search_y(const std::vector<long>& y, const ProblemSpec& spec, const FastTables& ft,
                     const EmbeddingTable& emb, long digits, Collector& col) {
  const int m = spec.m;
  ++col.stats.y_vectors;

  // conjugate values of Y
  std::vector<CD> Y(m, CD(0, 0));
  for (int h = 0; h < m; ++h)
    for (int i = 0; i < m; ++i) Y[h] += ft.omega[h][i] * static_cast<double>(y[i]);

  std::vector<std::vector<CD>> roots(m);
  for (int h = 0; h < m; ++h) {
    std::vector<CD> rts;
    if (!solve_conjugate_double(ft, h, Y[h], rts)) {
      ++col.stats.mpfr_fallbacks;
      direct_search_y_mpfr(y, spec, emb, digits, ft.c2, col);
      return;
    }
    for (const CD& r : rts) {
      if (ft.base_real[h] && std::fabs(r.imag()) > kRealTol * std::max(1.0, std::abs(r))) continue;
      roots[h].push_back(r);
    }
    if (roots[h].empty()) return;  // a real conjugate admits no real X value
  }

  std::vector<int> idx(m, 0);
  bool suspect = false;
  while (true) {
    ++col.stats.tuples;
    double maxX = 0;
    for (int h = 0; h < m; ++h) maxX = std::max(maxX, std::abs(roots[h][idx[h]]));
    const double xbound = ft.c2 * maxX + 1.5;
    bool strict = true, loose = true;
    std::vector<Int> xi(m);
    for (int i = 0; i < m && loose; ++i) {
      CD acc = 0.0;
      for (int h = 0; h < m; ++h) acc += ft.sinv[i][h] * roots[h][idx[h]];
      double im = std::fabs(acc.imag());
      double re = acc.real();
      double rounded = std::nearbyint(re);
      double miss = std::max(im, std::fabs(re - rounded));
      if (miss > kSuspectBand) {
        loose = false;
      } else if (miss > kIntegralityTol || std::fabs(rounded) > xbound) {
        strict = false;
      } else {
        xi[i] = static_cast<long>(rounded);
      }
    }
    if (loose && strict) {
      ++col.stats.candidates;
      std::vector<Int> yi(m);
      for (int i = 0; i < m; ++i) yi[i] = y[i];
      col.try_candidate(std::move(xi), std::move(yi));
    } else if (loose) {
      // a whole tuple that is nearly integral but misses the strict test:
      // have the high-precision pass adjudicate this y
      suspect = true;
    }
    int level = m - 1;
    while (level >= 0 && ++idx[level] >= static_cast<int>(roots[level].size())) {
      idx[level] = 0;
      --level;
    }
    if (level < 0) break;
  }

  if (suspect) {
    ++col.stats.mpfr_fallbacks;
    direct_search_y_mpfr(y, spec, emb, digits, ft.c2, col);
  }
}

}  // namespace

Int work_estimate(long limit, int m, int n) {
  Int box = 2 * Int(limit) + 1;
  Int r = 1;
  for (int k = 0; k < m; ++k) r *= box * n;
  return r;
}

Solution canonicalize(Solution s, int n) {
  if (n % 2 != 0) return s;
  int sign = 0;
  for (const auto& v : s.y) {
    if (v != 0) {
      sign = sgn(v);
      break;
    }
  }
  if (sign == 0)
    for (const auto& v : s.x) {
      if (v != 0) {
        sign = sgn(v);
        break;
      }
    }
  if (sign < 0) {
    for (auto& v : s.x) v = -v;
    for (auto& v : s.y) v = -v;
  }
  s.canonical_sign = true;
  return s;
}

std::vector<Solution> dedup_canonical(std::vector<Solution> sols, int n) {
  std::vector<Solution> out;
  std::set<std::pair<std::vector<Int>, std::vector<Int>>> seen;
  for (auto& s : sols) {
    Solution c = n % 2 == 0 ? canonicalize(std::move(s), n) : std::move(s);
    auto key = std::make_pair(c.y, c.x);
    if (seen.insert(key).second) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Solution> direct_search(long limit, const ProblemSpec& spec, const EmbeddingTable& emb,
                                    long digits, const SearchOptions& opts, SearchStats* stats) {
  if (limit < 0) throw Error(ErrorCode::Internal, "limit must be >= 0");
  Int work = work_estimate(limit, spec.m, spec.n);
  if (work > opts.work_cap)
    throw Error(ErrorCode::WorkCapExceeded,
                "direct search would need " + work.get_str() + " tests (cap " +
                    opts.work_cap.get_str() + ")");

  FastTables ft(emb);
  ft.fill_fcoef(spec, emb);

  const int m = spec.m;
  const bool half = spec.n % 2 == 0;  // sign symmetry: canonical y half-space

  auto is_canonical_y = [&](const std::vector<long>& yy) {
    for (long v : yy) {
      if (v > 0) return true;
      if (v < 0) return false;
    }
    return true;  // y = 0
  };

  // sweep yy[0] in [first_lo, first_hi], the rest over the full box
  auto run_range = [&](long first_lo, long first_hi, Collector& c) {
    if (first_lo > first_hi) return;
    std::vector<long> yy(m, -limit);
    yy[0] = first_lo;
    for (;;) {
      if (!half || is_canonical_y(yy)) direct_search_y(yy, spec, ft, emb, digits, c);
      int lvl = m - 1;
      while (lvl > 0 && ++yy[lvl] > limit) {
        yy[lvl] = -limit;
        --lvl;
      }
      if (lvl == 0) {
        if (++yy[0] > first_hi) break;
        for (int t = 1; t < m; ++t) yy[t] = -limit;
      }
    }
  };

  const long first_lo = half ? 0 : -limit;  // yy[0] < 0 is never canonical
  const int threads = std::max(1, opts.threads);
  std::vector<Collector> cols;
  cols.reserve(threads);
  for (int t = 0; t < threads; ++t) cols.emplace_back(spec);

  if (threads == 1) {
    run_range(first_lo, limit, cols[0]);
  } else {
    std::atomic<long> next{first_lo};
    auto worker = [&](int tid) {
      for (;;) {
        long v = next.fetch_add(1);
        if (v > limit) return;
        run_range(v, v, cols[tid]);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  std::vector<Solution> all;
  SearchStats st;
  for (auto& c : cols) {
    st.add(c.stats);
    for (auto& s : c.out) all.push_back(std::move(s));
  }
  if (stats) stats->add(st);
  return dedup_canonical(std::move(all), spec.n);
}

std::vector<Solution> interval_search(long A_s, long A_S, const ProblemSpec& spec,
                                      const EmbeddingTable& emb, const ConstantSet& consts,
                                      long digits, const SearchOptions& opts, SearchStats* stats) {
  if (A_S <= A_s) return {};
  const int m = spec.m, n = spec.n;
  const mpfr_prec_t bits = bits_for_digits(80);

  Collector col(spec);

  for (int h = 0; h < m; ++h) {
    for (int i = 0; i < n; ++i) {
      const BigFloat& d = consts.d_used(h, i, opts.specific_constants);
      // H = A_S * A_s^(n-1) / d_hi, floored so the scaled form stays <= A_S
      BigFloat as_pow = BigFloat(A_s, bits).pow_ui(static_cast<unsigned long>(n - 1));
      BigFloat h_f = BigFloat(A_S, bits) * as_pow / d.with_prec(bits);
      Int H = h_f.floor().to_mpz(MPFR_RNDD);
      if (H < 1) H = 1;

      const long h_digits = static_cast<long>(mpz_sizeinbase(H.get_mpz_t(), 10));
      const long p_lat = std::max(digits, h_digits + 60);
      if (emb.precision < p_lat)
        throw Error(ErrorCode::Internal, "interval_search needs embeddings at >= " +
                                             std::to_string(p_lat) + " digits");
      IntLattice L = build_lattice(emb, h, i, H, p_lat);

      // scaled-form magnitude bound for a solution in the segment, plus the
      // lattice's actual rounding-error budget
      BigFloat row_bound = max(BigFloat(static_cast<double>(A_S), bits),
                               (BigFloat(H, bits) * d.with_prec(bits) / as_pow).inflated(40));
      double eps_sq = 0.0;
      for (double e : L.row_rounding) eps_sq += std::min(e, static_cast<double>(m)) *
                                                std::min(e, static_cast<double>(m));
      BigFloat rhs = BigFloat(static_cast<double>(2 * m), bits) * BigFloat(A_S, bits).pow_ui(2) +
                     (row_bound + BigFloat(std::sqrt(eps_sq), bits) * BigFloat(A_S, bits)).pow_ui(2);
      IntMatrix Q = gram_matrix(L.columns);
      const long p_chol = std::max<long>(60, 2 * h_digits + 60);
      CholeskyFactor R;
      try {
        R = cholesky_decompose(Q, p_chol);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotPositiveDefinite) throw;
        R = cholesky_decompose(Q, 2 * p_chol);  // one retry at doubled precision
      }

      if (opts.progress)
        opts.progress("segment (" + std::to_string(A_s) + "," + std::to_string(A_S) +
                      "] pair h=" + std::to_string(h + 1) + " i=" + std::to_string(i + 1) +
                      " H digits=" + std::to_string(h_digits));

      std::uint64_t nodes = 0;
      enumerate_quadratic(R, rhs, A_S, [&](const std::vector<long>& v) {
        ++nodes;
        long amax = 0;
        for (long c : v) amax = std::max(amax, std::labs(c));
        if (amax > A_s && amax <= A_S) {
          std::vector<Int> xi(m), yi(m);
          for (int t = 0; t < m; ++t) xi[t] = v[t];
          for (int t = 0; t < m; ++t) yi[t] = v[m + t];
          col.try_candidate(std::move(xi), std::move(yi));
        }
        return true;
      });
      col.stats.enum_nodes += nodes;
    }
  }

  if (stats) stats->add(col.stats);
  return dedup_canonical(std::move(col.out), spec.n);
}

IntervalPlan plan_intervals(long A_I, long A_R, double factor) {
  if (factor <= 1.0) throw Error(ErrorCode::Internal, "interval factor must exceed 1");
  IntervalPlan plan;
  long a = A_I;
  while (a < A_R) {
    long top = static_cast<long>(std::ceil(factor * static_cast<double>(a)));
    top = std::min(top, A_R);
    if (top <= a) top = a + 1;
    plan.segments.emplace_back(a, top);
    a = top;
  }
  return plan;
}

IntervalPlan validate_plan(const std::vector<std::pair<long, long>>& segments, long A_I, long A_R) {
  IntervalPlan plan;
  plan.segments = segments;
  std::sort(plan.segments.begin(), plan.segments.end());
  if (A_R <= A_I) {
    if (!segments.empty())
      throw Error(ErrorCode::Internal, "no segments expected for an empty range");
    return plan;
  }
  long covered = A_I;
  for (const auto& [lo, hi] : plan.segments) {
    if (hi <= lo) throw Error(ErrorCode::Internal, "segment upper end must exceed lower end");
    if (lo > covered)
      throw Error(ErrorCode::Internal,
                  "plan gap: (" + std::to_string(covered) + "," + std::to_string(lo) + "] uncovered");
    covered = std::max(covered, hi);
  }
  if (covered < A_R)
    throw Error(ErrorCode::Internal,
                "plan gap: (" + std::to_string(covered) + "," + std::to_string(A_R) + "] uncovered");
  return plan;
}

}  // namespace relthue
