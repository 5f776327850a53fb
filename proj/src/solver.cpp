#include "relthue/solver.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "relthue/errors.hpp"

namespace relthue {

namespace {

void log_line(std::ostream* log, const std::string& s) {
  if (log) (*log) << s << "\n";
}

long bound_to_long(const BigFloat& b, const char* what) {
  if (!b.fits_long())
    throw Error(ErrorCode::WorkCapExceeded, std::string(what) + " is too large to enumerate: " + b.sci(4));
  return b.to_long(MPFR_RNDU);
}

}  // namespace

int resolve_threads(int requested) {
  if (const char* env = std::getenv("RELTHUE_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

SolutionReport solve(const ProblemSpec& spec, const SolveOptions& opts) {
  SolutionReport rep;
  auto t0 = std::chrono::steady_clock::now();
  const int threads = resolve_threads(opts.threads);

  try {
    BigFloat C = spec.bound_C;
    if (opts.C) C = BigFloat::parse(*opts.C, bits_for_digits(60));
    if (!(C >= 1.0)) throw Error(ErrorCode::ParseError, "C must be >= 1");
    if (opts.A_I < 1) throw Error(ErrorCode::ParseError, "A_I must be >= 1");
    if (!opts.explicit_plan && !(opts.interval_factor > 1.0))
      throw Error(ErrorCode::ParseError, "interval factor must exceed 1");

    EmbeddingProvider emb(spec, 60);

    // Step 1: the constant system
    ConstantSet consts = compute_constants(*emb.base(), spec);
    rep.tiny_floor = consts.tiny_floor;
    log_line(opts.log, constants_table(consts));

    // Step 2: initial bound
    rep.A_B = initial_bound(consts, C);
    log_line(opts.log, "initial bound A_B = " + rep.A_B.sci(4));

    // Steps 3-5: iterated reduction per pair, floored by c5*c4
    ReductionOptions ropts;
    ropts.specific_constants = opts.specific_constants;
    if (rep.A_B > consts.tiny_floor) {
      ReduceAllResult red = reduce_all(rep.A_B, consts, emb, spec, ropts, threads);
      rep.A_R = red.A_R;
      rep.reduction_log = std::move(red.log);
      log_line(opts.log, reduction_table(rep.reduction_log));
    } else {
      rep.A_R = max(rep.A_B, consts.tiny_floor).ceil();
    }
    log_line(opts.log, "reduced bound A_R = " + rep.A_R.sci(6));

    // Step 6: enumerate everything at or below A_R
    const long a_r = bound_to_long(rep.A_R, "the reduced bound");
    rep.enumeration_limit = a_r;

    SearchOptions sopts;
    sopts.work_cap = opts.work_cap;
    sopts.threads = threads;
    sopts.specific_constants = opts.specific_constants;
    if (opts.log) {
      std::ostream* lg = opts.log;
      sopts.progress = [lg](const std::string& s) { (*lg) << "  " << s << "\n"; };
    }

    std::vector<Solution> found;
    if (spec.m <= 2) {
      auto table = emb.at_least(60);
      found = direct_search(a_r, spec, *table, 60, sopts, &rep.stats.direct);
    } else {
      // the slab argument only covers solutions above the c5*c4 floor, so
      // the direct stage must reach at least that far
      const long floor_i = bound_to_long(consts.tiny_floor.ceil(), "the enumeration floor");
      const long a_i = std::min(std::max(opts.A_I, floor_i), a_r);
      auto table = emb.at_least(60);
      found = direct_search(a_i, spec, *table, 60, sopts, &rep.stats.direct);
      if (a_r > a_i) {
        rep.plan = opts.explicit_plan ? validate_plan(*opts.explicit_plan, a_i, a_r)
                                      : plan_intervals(a_i, a_r, opts.interval_factor);
        // working precision for the interval stage
        long max_h_digits = 0;
        {
          const mpfr_prec_t bits = bits_for_digits(80);
          for (const auto& [lo, hi] : rep.plan.segments) {
            BigFloat h_f = BigFloat(hi, bits) * BigFloat(lo, bits).pow_ui(static_cast<unsigned long>(spec.n - 1));
            max_h_digits = std::max<long>(max_h_digits,
                                          static_cast<long>(mpz_sizeinbase(h_f.ceil().to_mpz().get_mpz_t(), 10)));
          }
        }
        const long p_enum = std::max(opts.enum_digits, max_h_digits + 60);
        auto etable = emb.at_least(p_enum);
        for (const auto& [lo, hi] : rep.plan.segments) {
          log_line(opts.log, "interval segment (" + std::to_string(lo) + "," + std::to_string(hi) + "]");
          auto part = interval_search(lo, hi, spec, *etable, consts, p_enum, sopts, &rep.stats.intervals);
          for (auto& s : part) found.push_back(std::move(s));
        }
      }
    }

    rep.solutions = dedup_canonical(std::move(found), spec.n);
    rep.complete = true;
  } catch (const Error& e) {
    rep.complete = false;
    rep.error = std::string(error_code_name(e.code())) + ": " + e.what();
  }

  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

namespace {

// int128 evaluation of the norm form for coordinate boxes whose worst-case
// magnitudes provably fit; the constructor computes the pessimistic bound
// exactly and disables itself when it does not.
class SmallNormEvaluator {
 public:
  SmallNormEvaluator(const ProblemSpec& spec, long box) : m_(spec.m), n_(spec.n) {
    Int growth = 0;  // max_k sum_{i,j} |T[i][j][k]|
    for (int k = 0; k < m_; ++k) {
      Int g = 0;
      for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) g += abs(spec.mult_table[i][j][k]);
      growth = std::max(growth, g);
    }
    if (growth == 0) growth = 1;
    Int maxa = 1;
    for (const auto& a : spec.f)
      for (const auto& c : a.coords) {
        Int ac = abs(c);
        maxa = std::max(maxa, ac);
      }

    // bound(X^j) = growth^(j-1) * box^j; the largest product handled is
    // a_j * (X^j * Y^(n-j)) plus the running sum
    Int xb = box;
    Int worst = 1;
    std::vector<Int> pow_bound(static_cast<size_t>(n_) + 1);
    pow_bound[0] = 1;
    for (int j = 1; j <= n_; ++j) pow_bound[j] = (j == 1 ? Int(box) : growth * pow_bound[j - 1] * box);
    for (int j = 0; j <= n_; ++j) {
      Int pair = growth * pow_bound[j] * pow_bound[n_ - j];  // X^j * Y^(n-j)
      Int term = growth * maxa * pair;
      worst = std::max(worst, std::max(pair, term));
    }
    Int total = Int(n_ + 1) * worst;
    Int lim62 = Int(1) << 62, lim120 = Int(1) << 120;
    usable_ = total < lim62 && growth * total * total < lim120;
    if (!usable_) return;

    table_.assign(m_ * m_ * m_, 0);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j)
        for (int k = 0; k < m_; ++k)
          table_[(i * m_ + j) * m_ + k] = spec.mult_table[i][j][k].get_si();
    f_.resize(spec.f.size());
    for (size_t j = 0; j < spec.f.size(); ++j) {
      f_[j].assign(m_, 0);
      for (int i = 0; i < m_; ++i) f_[j][i] = spec.f[j].coords[i].get_si();
    }
    mu_.assign(m_, 0);
    for (int i = 0; i < m_; ++i) mu_[i] = spec.mu.coords[i].get_si();
  }

  bool usable() const { return usable_; }

  bool is_solution(const long* x, const long* y) const {
    using I = __int128;
    std::vector<std::array<long, 4>> xpow(static_cast<size_t>(n_) + 1), ypow(static_cast<size_t>(n_) + 1);
    for (int k = 0; k < m_; ++k) {
      xpow[0][k] = k == 0 ? 1 : 0;
      ypow[0][k] = k == 0 ? 1 : 0;
    }
    for (int j = 1; j <= n_; ++j) {
      mul(xpow[j - 1].data(), x, xpow[j].data());
      mul(ypow[j - 1].data(), y, ypow[j].data());
    }
    I acc[4] = {0, 0, 0, 0};
    long tmp[4], tmp2[4];
    for (int j = 0; j <= n_; ++j) {
      bool zero = true;
      for (int i = 0; i < m_; ++i) zero = zero && f_[j][i] == 0;
      if (zero) continue;
      mul(xpow[j].data(), ypow[n_ - j].data(), tmp);
      mul(f_[j].data(), tmp, tmp2);
      for (int k = 0; k < m_; ++k) acc[k] += tmp2[k];
    }
    for (int k = 0; k < m_; ++k)
      if (acc[k] != mu_[k]) return false;
    return true;
  }

 private:
  void mul(const long* a, const long* b, long* out) const {
    using I = __int128;
    I acc[4] = {0, 0, 0, 0};
    for (int i = 0; i < m_; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < m_; ++j) {
        if (b[j] == 0) continue;
        I p = static_cast<I>(a[i]) * b[j];
        const long* row = &table_[(i * m_ + j) * m_];
        for (int k = 0; k < m_; ++k)
          if (row[k] != 0) acc[k] += p * row[k];
      }
    }
    for (int k = 0; k < m_; ++k) out[k] = static_cast<long>(acc[k]);
  }

  int m_, n_;
  bool usable_ = false;
  std::vector<long> table_;
  std::vector<std::vector<long>> f_;
  std::vector<long> mu_;
};

}  // namespace

std::vector<Solution> oracle_search(const ProblemSpec& spec, long box, const Int& work_cap,
                                    int threads) {
  const int m = spec.m;
  Int side = 2 * Int(box) + 1;
  Int total = 1;
  for (int k = 0; k < 2 * m; ++k) total *= side;
  if (total > work_cap)
    throw Error(ErrorCode::WorkCapExceeded,
                "oracle box scan needs " + total.get_str() + " tests (cap " + work_cap.get_str() + ")");

  threads = std::max(1, threads);
  std::vector<std::vector<Solution>> results(static_cast<size_t>(threads));
  SmallNormEvaluator fast(spec, box);

  auto scan_x0 = [&](long x0, std::vector<Solution>& out) {
    std::vector<long> v(2 * m, -box);
    v[0] = x0;
    for (;;) {
      bool hit;
      if (fast.usable()) {
        hit = fast.is_solution(v.data(), v.data() + m);
      } else {
        FieldElement X(static_cast<size_t>(m)), Y(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) X.coords[i] = v[i];
        for (int i = 0; i < m; ++i) Y.coords[i] = v[m + i];
        hit = evaluate_norm(X, Y, spec) == spec.mu;
      }
      if (hit) {
        Solution s;
        s.x.resize(m);
        s.y.resize(m);
        for (int i = 0; i < m; ++i) s.x[i] = v[i];
        for (int i = 0; i < m; ++i) s.y[i] = v[m + i];
        // fast hits are re-verified exactly
        if (!fast.usable() ||
            evaluate_norm(FieldElement{s.x}, FieldElement{s.y}, spec) == spec.mu) {
          s.verified = true;
          out.push_back(std::move(s));
        }
      }
      int lvl = 2 * m - 1;
      while (lvl > 0 && ++v[lvl] > box) {
        v[lvl] = -box;
        --lvl;
      }
      if (lvl == 0) break;
    }
  };

  if (threads == 1 || box == 0) {
    for (long x0 = -box; x0 <= box; ++x0) scan_x0(x0, results[0]);
  } else {
    std::atomic<long> next{-box};
    auto worker = [&](int tid) {
      for (;;) {
        long v = next.fetch_add(1);
        if (v > box) return;
        scan_x0(v, results[static_cast<size_t>(tid)]);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  std::vector<Solution> all;
  for (auto& r : results)
    for (auto& s : r) all.push_back(std::move(s));
  std::sort(all.begin(), all.end());
  return all;
}

namespace {

nlohmann::json solution_to_json(const Solution& s) {
  nlohmann::json j;
  for (const auto& v : s.x) j["x"].push_back(v.get_str());
  for (const auto& v : s.y) j["y"].push_back(v.get_str());
  j["sign_pair"] = s.canonical_sign;
  return j;
}

}  // namespace

std::string report_to_json(const SolutionReport& rep) {
  nlohmann::json j;
  j["complete"] = rep.complete;
  if (!rep.error.empty()) j["error"] = rep.error;
  j["a_b"] = rep.A_B.sci(8);
  j["a_r"] = rep.A_R.sci(8);
  j["tiny_floor"] = rep.tiny_floor.sci(8);
  j["enumeration_limit"] = rep.enumeration_limit;
  j["seconds"] = rep.seconds;
  j["solutions"] = nlohmann::json::array();
  for (const auto& s : rep.solutions) j["solutions"].push_back(solution_to_json(s));
  j["reduction"] = nlohmann::json::array();
  for (const auto& r : rep.reduction_log) {
    nlohmann::json row;
    row["h"] = r.h + 1;
    row["i"] = r.i + 1;
    row["step"] = r.step;
    row["a0"] = r.A0.sci(4);
    row["H"] = r.H.get_str();
    row["threshold"] = r.threshold.sci(8);
    row["digits"] = r.digits;
    row["new_a0"] = r.new_bound.sci(4);
    row["seconds"] = r.seconds;
    row["retries"] = r.retries;
    j["reduction"].push_back(row);
  }
  if (!rep.plan.segments.empty()) {
    for (const auto& [lo, hi] : rep.plan.segments)
      j["plan"].push_back(nlohmann::json::array({lo, hi}));
  }
  nlohmann::json st;
  st["direct_y_vectors"] = rep.stats.direct.y_vectors;
  st["direct_tuples"] = rep.stats.direct.tuples;
  st["direct_candidates"] = rep.stats.direct.candidates;
  st["direct_exact_checks"] = rep.stats.direct.exact_checks;
  st["direct_fallbacks"] = rep.stats.direct.mpfr_fallbacks;
  st["interval_nodes"] = rep.stats.intervals.enum_nodes;
  st["interval_exact_checks"] = rep.stats.intervals.exact_checks;
  j["stats"] = st;
  return j.dump(2);
}

std::string report_to_text(const SolutionReport& rep) {
  std::ostringstream os;
  os << "A_B = " << rep.A_B.sci(4) << ", A_R = " << rep.A_R.sci(6)
     << ", floor = " << rep.tiny_floor.sci(4) << "\n";
  if (!rep.complete) {
    os << "INCOMPLETE: " << rep.error << "\n";
    return os.str();
  }
  os << "solutions (x_1..x_m, y_1..y_m)";
  if (!rep.solutions.empty() && rep.solutions.front().canonical_sign)
    os << " up to sign (each pairs with its negation)";
  os << ":\n";
  for (const auto& s : rep.solutions) {
    os << "  (";
    for (size_t i = 0; i < s.x.size(); ++i) os << (i ? "," : "") << s.x[i].get_str();
    for (size_t i = 0; i < s.y.size(); ++i) os << "," << s.y[i].get_str();
    os << ")\n";
  }
  os << rep.solutions.size() << " solution(s), " << rep.seconds << " s\n";
  return os.str();
}

}  // namespace relthue
