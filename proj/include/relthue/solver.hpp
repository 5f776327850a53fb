#pragma once

// End-to-end orchestration: constants, initial bound, iterated reduction,
// floor, enumeration, exact verification, reporting. Also the brute-force
// oracle used throughout the test suites.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "relthue/bounds.hpp"
#include "relthue/enumeration.hpp"
#include "relthue/field.hpp"
#include "relthue/lattice.hpp"

namespace relthue {

struct SolveOptions {
  std::optional<std::string> C;               // overrides the problem file's bound
  long A_I = 10;                              // direct-search ceiling before intervals (m >= 3)
  double interval_factor = 5.0;
  std::optional<std::vector<std::pair<long, long>>> explicit_plan;
  bool specific_constants = true;             // per-pair d_hi (global max behind the flag)
  Int work_cap = Int(1000000000);
  int threads = 0;                            // 0: hardware default / env override
  std::ostream* log = nullptr;
  long enum_digits = 200;                     // interval-search working precision
};

struct EnumerationStats {
  SearchStats direct;
  SearchStats intervals;
};

struct SolutionReport {
  std::vector<Solution> solutions;  // canonical representatives, sorted
  BigFloat A_B;
  BigFloat A_R;
  BigFloat tiny_floor;
  long enumeration_limit = 0;       // the A <= limit actually enumerated
  std::vector<ReductionLogRow> reduction_log;
  IntervalPlan plan;                // empty unless the interval stage ran
  EnumerationStats stats;
  double seconds = 0;
  bool complete = false;
  std::string error;                // set when complete == false
};

SolutionReport solve(const ProblemSpec& spec, const SolveOptions& opts = {});

// Exhaustive exact search over all |x_i|, |y_i| <= box. Ground truth for
// tests; throws WorkCapExceeded when (2*box+1)^(2m) exceeds the cap.
std::vector<Solution> oracle_search(const ProblemSpec& spec, long box,
                                    const Int& work_cap = Int(1000000000), int threads = 1);

// Honors the thread option, hardware detection, and the RELTHUE_THREADS
// environment override.
int resolve_threads(int requested);

std::string report_to_json(const SolutionReport& rep);
std::string report_to_text(const SolutionReport& rep);

}  // namespace relthue
