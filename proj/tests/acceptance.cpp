// Acceptance suite: one checkable criterion per function, each printing a
// single PASS/FAIL line. Run all with no arguments or one with
// --criterion <k>. Exit code 0 iff every executed criterion passed.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <map>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "relthue/enumeration.hpp"
#include "relthue/errors.hpp"
#include "relthue/lattice.hpp"
#include "relthue/solver.hpp"

using namespace relthue;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string problem(const std::string& name) {
  return std::string(RELTHUE_PROBLEM_DIR) + "/" + name;
}

using Key = std::pair<std::vector<long>, std::vector<long>>;

Key key_of(const Solution& s) {
  Key k;
  for (const auto& v : s.x) k.first.push_back(v.get_si());
  for (const auto& v : s.y) k.second.push_back(v.get_si());
  return k;
}

std::set<Key> solution_set(const std::vector<Solution>& sols) {
  std::set<Key> out;
  for (const auto& s : sols) out.insert(key_of(s));
  return out;
}

// expected solutions given as (x..., y...) tuples, canonicalized per parity
std::set<Key> expected_set(const std::vector<std::vector<long>>& tuples, int m, int n) {
  std::vector<Solution> sols;
  for (const auto& t : tuples) {
    Solution s;
    for (int i = 0; i < m; ++i) s.x.emplace_back(t[static_cast<size_t>(i)]);
    for (int i = 0; i < m; ++i) s.y.emplace_back(t[static_cast<size_t>(m + i)]);
    sols.push_back(std::move(s));
  }
  return solution_set(dedup_canonical(std::move(sols), n));
}

std::string set_to_string(const std::set<Key>& s) {
  std::ostringstream os;
  for (const auto& [x, y] : s) {
    os << "(";
    for (size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    for (size_t i = 0; i < y.size(); ++i) os << "," << y[i];
    os << ") ";
  }
  return os.str();
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome example_run(const std::string& file, const std::vector<std::vector<long>>& expect_tuples,
                    double bound_cap, double time_cap_s) {
  auto t0 = std::chrono::steady_clock::now();
  auto spec = load_problem_file(problem(file));
  auto rep = solve(spec);
  double secs = seconds_since(t0);
  Outcome out;
  if (!rep.complete) {
    out.detail = "solve incomplete: " + rep.error;
    return out;
  }
  auto got = solution_set(rep.solutions);
  auto want = expected_set(expect_tuples, spec.m, spec.n);
  std::ostringstream os;
  os << "A_R=" << rep.A_R.sci(4) << " time=" << secs << "s solutions: " << set_to_string(got);
  if (got != want) {
    out.detail = os.str() + "!= expected " + set_to_string(want);
    return out;
  }
  if (bound_cap > 0 && !(rep.A_R <= bound_cap)) {
    out.detail = os.str() + "reduced bound above " + std::to_string(bound_cap);
    return out;
  }
  if (time_cap_s > 0 && secs > time_cap_s) {
    out.detail = os.str() + "over the time budget " + std::to_string(time_cap_s) + "s";
    return out;
  }
  out.pass = true;
  out.detail = os.str();
  return out;
}

// ---- criteria -------------------------------------------------------------

Outcome criterion1() {
  return example_run("example1.json",
                     {{1, 0, 0, 0}, {1, 0, -1, 0}, {0, 0, 1, 0}}, /*bound_cap=*/0,
                     /*time_cap_s=*/900);
}

Outcome criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  auto spec = load_problem_file(problem("example2.json"));
  auto rep = solve(spec);
  double secs = seconds_since(t0);
  Outcome out;
  if (!rep.complete) {
    out.detail = "solve incomplete: " + rep.error;
    return out;
  }
  auto got = solution_set(rep.solutions);
  auto want = expected_set({{1, 0, 0, 0}, {1, 0, -1, 0}, {0, 0, -1, 0}, {-1, 0, -1, 0}},
                           spec.m, spec.n);
  if (got != want) {
    out.detail = "solution set mismatch: " + set_to_string(got);
    return out;
  }
  // every reduction chain must be at or below 99 within 3 steps
  std::map<std::pair<int, int>, double> bound_at_3;
  for (const auto& row : rep.reduction_log) {
    auto key = std::make_pair(row.h, row.i);
    if (row.step <= 3) bound_at_3[key] = row.new_bound.to_double();
  }
  for (const auto& [key, bound] : bound_at_3)
    if (bound > 99.0) {
      out.detail = "chain (" + std::to_string(key.first + 1) + "," + std::to_string(key.second + 1) +
                   ") still at " + std::to_string(bound) + " after 3 steps";
      return out;
    }
  long floor_ceil = rep.tiny_floor.ceil().to_long();
  if (rep.enumeration_limit != floor_ceil || floor_ceil < 18 || floor_ceil > 22) {
    out.detail = "enumeration floor " + std::to_string(rep.enumeration_limit) +
                 " not ceil(c5*c4) in [18,22] (" + std::to_string(floor_ceil) + ")";
    return out;
  }
  out.pass = true;
  out.detail = "solutions ok, chains reach <= 99 in 3 steps, floor = " +
               std::to_string(floor_ceil) + ", time=" + std::to_string(secs) + "s";
  return out;
}

Outcome criterion3() {
  return example_run("example3.json",
                     {{1, 0, 0, 0},
                      {1, 0, -1, 0},
                      {0, -1, -1, 0},
                      {0, 0, -1, 0},
                      {-1, 0, -1, 0},
                      {0, 1, -1, 0}},
                     /*bound_cap=*/252, /*time_cap_s=*/0);
}

Outcome criterion4() {
  return example_run("example4.json", {{1, 0, 0, 0, 0, 0}}, /*bound_cap=*/668, /*time_cap_s=*/0);
}

Outcome criterion5() {
  struct Row {
    const char* file;
    double mantissa;
  };
  std::ostringstream os;
  for (const Row& row : {Row{"example1.json", 0.2252}, Row{"example2.json", 0.2068},
                         Row{"example3.json", 0.5379}, Row{"example4.json", 0.4268}}) {
    auto spec = load_problem_file(problem(row.file));
    auto emb = build_embeddings(spec, 60);
    auto cs = compute_constants(*emb, spec);
    BigFloat ab = initial_bound(cs, spec.bound_C);
    BigFloat want = BigFloat(row.mantissa, bits_for_digits(40)) * BigFloat::pow10(501, bits_for_digits(40));
    double rel = ((ab - want) / want).abs().to_double();
    os << row.file << " A_B=" << ab.sci(5) << " rel=" << rel << "  ";
    if (!(rel < 1e-3)) return {false, os.str()};
  }
  return {true, os.str()};
}

Outcome criterion6() {
  const mpfr_prec_t bits = bits_for_digits(40);
  struct Row {
    int m;
    double a0;
    double published;
  };
  std::ostringstream os;
  bool ok = true;
  for (const Row& row : {Row{2, 103, 651.4291}, Row{2, 17, 107.5174}, Row{2, 306, 1935.2970}}) {
    double got = paper_threshold(row.m, BigFloat(row.a0, bits)).to_double();
    double rel = std::fabs(got / row.published - 1.0);
    os << "A0=" << row.a0 << " formula=" << got << " published=" << row.published
       << " rel=" << rel << "  ";
    // six significant digits
    if (!(rel <= 5e-6)) ok = false;
  }
  return {ok, os.str()};
}

Outcome criterion7() {
  Int got = work_estimate(334, 3, 6);
  bool ok = got == Int("64674354744");
  return {ok, "work(334,3,6) = " + got.get_str()};
}

Outcome criterion8() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 gen(424242);
  auto pick = [&](long lo, long hi) {
    return lo + static_cast<long>(gen() % static_cast<unsigned long>(hi - lo + 1));
  };
  int accepted = 0, attempts = 0;
  std::ostringstream os;
  while (accepted < 20 && attempts < 400) {
    ++attempts;
    const int m = (accepted % 2 == 0) ? 1 : 2;
    const int n = static_cast<int>(pick(3, 6));
    const long mu_pick = pick(0, 3);
    const long mu_val = (mu_pick % 2 == 0 ? 1 : -1) * (mu_pick < 2 ? 1 : 2);

    std::ostringstream js;
    if (m == 1) {
      js << "{\"base_field\":{\"defining_polynomial\":[0,1],\"integral_basis\":[[1]]},"
         << "\"relative_polynomial\":[";
      for (int k = 0; k < n; ++k) js << "[" << pick(-8, 8) << "],";
      js << "[1]],\"mu\":[" << mu_val << "],\"bound_C\":\"1e4\"}";
    } else {
      long D = 0;
      while (D == 0 || D == 1) D = pick(-7, 7);
      js << "{\"base_field\":{\"defining_polynomial\":[" << -D
         << ",0,1],\"integral_basis\":[[1],[0,1]]},\"relative_polynomial\":[";
      for (int k = 0; k < n; ++k) js << "[" << pick(-6, 6) << "," << pick(-2, 2) << "],";
      js << "[1,0]],\"mu\":[" << mu_val << ",0],\"bound_C\":\"1e4\"}";
    }

    ProblemSpec spec;
    try {
      spec = load_problem(js.str());
    } catch (const Error&) {
      continue;  // invalid draw (applicability, repeated roots, ...)
    }
    // coefficient sizes stay within the stated family
    {
      auto emb = build_embeddings(spec, 40);
      bool small = true;
      for (const auto& a : spec.f)
        for (int h = 0; h < spec.m && small; ++h)
          if (emb->embed(a, h).abs().to_double() > 10.0) small = false;
      if (!small) continue;
    }

    SolveOptions opts;
    opts.work_cap = Int(200000000);
    auto rep = solve(spec, opts);
    if (!rep.complete) continue;  // work above the suite budget: redraw
    ++accepted;

    auto truth = solution_set(dedup_canonical(oracle_search(spec, 30), spec.n));
    auto got_all = rep.solutions;
    std::set<Key> got_in_box;
    for (const auto& s : got_all) {
      Key k = key_of(s);
      long a = 0;
      for (long v : k.first) a = std::max(a, std::labs(v));
      for (long v : k.second) a = std::max(a, std::labs(v));
      if (a <= 30) got_in_box.insert(k);
    }
    if (got_in_box != truth) {
      os << "instance " << attempts << " mismatch: solve " << set_to_string(got_in_box)
         << " oracle " << set_to_string(truth);
      return {false, os.str()};
    }
  }
  double secs = seconds_since(t0);
  os << accepted << " instances verified in " << secs << "s (draws: " << attempts << ")";
  if (accepted < 20) return {false, os.str() + " - could not assemble 20 instances"};
  if (secs > 600.0) return {false, os.str() + " - over the 10 minute budget"};
  return {true, os.str()};
}

// exact LLL quality checks, shared with criterion 9
Int bareiss_det(IntMatrix a) {
  const size_t n = a.size();
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

bool lovasz_ok(const IntMatrix& basis) {
  const size_t d = basis.size();
  IntMatrix g = gram_matrix(basis);
  std::vector<std::vector<mpq_class>> mu(d, std::vector<mpq_class>(d, 0));
  std::vector<mpq_class> B(d, 0);
  for (size_t i = 0; i < d; ++i) {
    B[i] = mpq_class(g[i][i]);
    for (size_t j = 0; j < i; ++j) {
      mpq_class dot(g[i][j]);
      for (size_t k = 0; k < j; ++k) dot -= mu[i][k] * mu[j][k] * B[k];
      mu[i][j] = dot / B[j];
      B[i] -= mu[i][j] * mu[i][j] * B[j];
    }
    if (B[i] <= 0) return false;
  }
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < i; ++j)
      if (2 * abs(mu[i][j]) > 1) return false;
  for (size_t i = 1; i < d; ++i)
    if (4 * (B[i] + mu[i][i - 1] * mu[i][i - 1] * B[i - 1]) < 3 * B[i - 1]) return false;
  return true;
}

Int gram_value(const IntMatrix& g, const std::vector<long>& x) {
  Int acc = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < x.size(); ++j)
      if (x[j] != 0) acc += g[i][j] * x[i] * x[j];
  }
  return acc;
}

Outcome criterion9() {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<long> entry(-1000000, 1000000);
  int done = 0;
  for (int trial = 0; done < 100 && trial < 300; ++trial) {
    const size_t d = 2 + gen() % 5;  // 2..6
    IntMatrix basis(d, std::vector<Int>(d));
    for (auto& col : basis)
      for (auto& v : col) v = entry(gen);
    if (bareiss_det(basis) == 0) continue;
    LllResult res;
    try {
      res = lll_reduce(basis);
    } catch (const Error&) {
      continue;
    }
    ++done;

    Int tdet = bareiss_det(res.transform);
    if (tdet != 1 && tdet != -1) return {false, "transform determinant not +-1"};
    for (size_t c = 0; c < d; ++c) {
      std::vector<Int> want(d, 0);
      for (size_t in = 0; in < d; ++in)
        for (size_t r = 0; r < d; ++r) want[r] += res.transform[c][in] * basis[in][r];
      if (want != res.basis[c]) return {false, "transform does not reproduce the basis"};
    }
    if (!lovasz_ok(res.basis)) return {false, "output violates the 3/4 Lovasz condition"};

    // lambda_1 by exhaustive enumeration over the reduced Gram form
    IntMatrix g = gram_matrix(res.basis);
    auto chol = cholesky_decompose(g, 60);
    Int l1 = g[0][0];
    enumerate_quadratic(chol, BigFloat(l1, bits_for_digits(40)) * 1.000001, 200,
                        [&](const std::vector<long>& x) {
                          bool zero = true;
                          for (long v : x) zero = zero && v == 0;
                          if (!zero) {
                            Int q = gram_value(g, x);
                            if (q < l1) l1 = q;
                          }
                          return true;
                        });
    Int cap = l1;
    for (size_t k = 0; k + 1 < d; ++k) cap *= 2;  // |b1|^2 <= 2^(d-1) lambda1^2
    if (res.b1_norm_sq > cap) return {false, "b1 exceeds the 2^((D-1)/2) lambda1 bound"};
  }
  if (done < 100) return {false, "only " + std::to_string(done) + " lattices tested"};
  return {true, "100 random lattices: unimodular, Lovasz 3/4, b1 within 2^((D-1)/2) of lambda1"};
}

Outcome criterion10() {
  std::mt19937_64 gen(1010);
  std::uniform_int_distribution<long> entry(-4, 4);
  int done = 0;
  for (int trial = 0; done < 100 && trial < 200; ++trial) {
    const size_t d = 2 + gen() % 5;
    IntMatrix M(d, std::vector<Int>(d));
    for (auto& row : M)
      for (auto& v : row) v = entry(gen);
    IntMatrix Q(d, std::vector<Int>(d, 0));
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) {
        for (size_t k = 0; k < d; ++k) Q[i][j] += M[k][i] * M[k][j];
        if (i == j) Q[i][j] += 1;
      }
    long rhs = 1 + static_cast<long>(gen() % 100);
    long box = 1 + static_cast<long>(gen() % (d >= 5 ? 3 : 8));
    auto chol = cholesky_decompose(Q, 60);
    auto pts = enumerate_quadratic(chol, BigFloat(rhs, 64), box);
    std::set<std::vector<long>> got(pts.begin(), pts.end());

    std::set<std::vector<long>> brute;
    std::vector<long> x(d, -box);
    for (;;) {
      if (gram_value(Q, x) <= rhs) brute.insert(x);
      size_t lvl = d;
      bool done_scan = false;
      while (lvl-- > 0) {
        if (++x[lvl] <= box) break;
        x[lvl] = -box;
        if (lvl == 0) done_scan = true;
      }
      if (done_scan) break;
    }
    if (got != brute)
      return {false, "form " + std::to_string(done) + ": enumeration disagrees with the box scan (" +
                         std::to_string(got.size()) + " vs " + std::to_string(brute.size()) + ")"};
    ++done;
  }
  if (done < 100) return {false, "only " + std::to_string(done) + " forms tested"};
  return {true, "100 random positive-definite forms enumerated exactly"};
}

Outcome criterion11() {
  auto spec = load_problem_file(problem("example1.json"));
  EmbeddingProvider emb(spec, 60);
  auto consts = compute_constants(*emb.base(), spec);
  BigFloat ab = initial_bound(consts, spec.bound_C);
  // worst first-step bound over all pairs
  BigFloat worst(0.0, bits_for_digits(60));
  for (int h = 0; h < spec.m; ++h)
    for (int i = 0; i < spec.n; ++i) {
      auto out = reduction_step(ab, h, i, consts, emb);
      if (!out.success) return {false, "first reduction step failed"};
      worst = max(worst, out.new_bound);
    }
  // cap: A_B^((m-1)/(n-1) + 0.05)
  double expo = (spec.m - 1.0) / (spec.n - 1.0) + 0.05;
  BigFloat lg(0.0, bits_for_digits(60));
  mpfr_log10(lg.get(), ab.get(), MPFR_RNDN);
  BigFloat cap_log = lg * expo;
  BigFloat wlog(0.0, bits_for_digits(60));
  mpfr_log10(wlog.get(), worst.get(), MPFR_RNDN);
  std::string detail = "first-step bound 1e" + std::to_string(wlog.to_double()) +
                       " vs cap 1e" + std::to_string(cap_log.to_double());
  return {wlog <= cap_log, detail};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) only = std::atoi(argv[i + 1]);
  }
  std::vector<std::pair<int, std::function<Outcome()>>> crits = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
      {9, criterion9}, {10, criterion10}, {11, criterion11},
  };
  bool all_pass = true;
  for (const auto& [num, fn] : crits) {
    if (only != 0 && num != only) continue;
    Outcome out;
    try {
      out = fn();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << num << ": " << out.detail
              << std::endl;
    if (!out.pass) all_pass = false;
  }
  return all_pass ? 0 : 1;
}
