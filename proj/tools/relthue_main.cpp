#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "relthue/errors.hpp"
#include "relthue/solver.hpp"

namespace {

// exit codes: 0 success, 2 invalid input, 3 incomplete run
constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kIncomplete = 3;

int exit_code_for(relthue::ErrorCode c) {
  switch (c) {
    case relthue::ErrorCode::ParseError:
    case relthue::ErrorCode::NonMonic:
    case relthue::ErrorCode::RepeatedRoots:
    case relthue::ErrorCode::Applicability:
    case relthue::ErrorCode::NonIntegral:
      return kInvalid;
    default:
      return kIncomplete;
  }
}

std::vector<std::pair<long, long>> parse_plan(const std::string& text) {
  std::vector<std::pair<long, long>> plan;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw relthue::Error(relthue::ErrorCode::ParseError,
                           "plan segments must look like a:b (got '" + item + "')");
    plan.emplace_back(std::stol(item.substr(0, colon)), std::stol(item.substr(colon + 1)));
  }
  return plan;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relthue: small solutions of relative Thue equations over number fields"};
  app.require_subcommand(1);

  std::string problem_path, c_override, plan_text, log_path, json_path;
  long a_i = 10, box = 5;
  double factor = 5.0;
  int threads = 0;
  long work_cap = 1000000000L;
  bool global_constants = false;
  long enum_digits = 200;

  auto* solve_cmd = app.add_subcommand("solve", "run the full pipeline on a problem file");
  solve_cmd->add_option("problem", problem_path, "problem file (JSON)")->required();
  solve_cmd->add_option("--c", c_override, "override the bound C from the file (e.g. 1e500)");
  solve_cmd->add_option("--a-i", a_i, "direct-search ceiling before interval segments (m >= 3)");
  solve_cmd->add_option("--factor", factor, "geometric interval growth factor");
  solve_cmd->add_option("--plan", plan_text, "explicit segments, e.g. 10:50,50:100,100:334");
  solve_cmd->add_option("--threads", threads, "worker threads (0 = auto; RELTHUE_THREADS overrides)");
  solve_cmd->add_option("--work-cap", work_cap, "direct-search work cap (tests)");
  solve_cmd->add_option("--enum-digits", enum_digits, "interval-stage working precision (digits)");
  solve_cmd->add_option("--log", log_path, "write the run log to this file");
  solve_cmd->add_option("--json-out", json_path, "write the structured report to this file");
  solve_cmd->add_flag("--global-constants", global_constants,
                      "use the worst-pair constant instead of per-pair values");

  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive exact scan over a coordinate box");
  oracle_cmd->add_option("problem", problem_path, "problem file (JSON)")->required();
  oracle_cmd->add_option("--box", box, "coordinate bound")->required();
  oracle_cmd->add_option("--threads", threads, "worker threads");
  oracle_cmd->add_option("--work-cap", work_cap, "work cap (tests)");

  auto* const_cmd = app.add_subcommand("constants", "print the constant system of a problem");
  const_cmd->add_option("problem", problem_path, "problem file (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    relthue::ProblemSpec spec = relthue::load_problem_file(problem_path);

    if (const_cmd->parsed()) {
      relthue::EmbeddingProvider emb(spec, 60);
      auto consts = relthue::compute_constants(*emb.base(), spec);
      std::cout << relthue::constants_table(consts);
      std::cout << "A_B(C) = " << relthue::initial_bound(consts, spec.bound_C).sci(4) << "\n";
      return kOk;
    }

    if (oracle_cmd->parsed()) {
      auto sols = relthue::oracle_search(spec, box, relthue::Int(work_cap),
                                         relthue::resolve_threads(threads));
      for (const auto& s : sols) {
        std::cout << "(";
        for (size_t i = 0; i < s.x.size(); ++i) std::cout << (i ? "," : "") << s.x[i].get_str();
        for (size_t i = 0; i < s.y.size(); ++i) std::cout << "," << s.y[i].get_str();
        std::cout << ")\n";
      }
      std::cout << sols.size() << " solution(s)\n";
      return kOk;
    }

    // solve
    relthue::SolveOptions opts;
    if (!c_override.empty()) opts.C = c_override;
    opts.A_I = a_i;
    opts.interval_factor = factor;
    if (!plan_text.empty()) opts.explicit_plan = parse_plan(plan_text);
    opts.threads = threads;
    opts.work_cap = relthue::Int(work_cap);
    opts.specific_constants = !global_constants;
    opts.enum_digits = enum_digits;

    std::ofstream log_file;
    if (!log_path.empty()) {
      log_file.open(log_path);
      if (!log_file) {
        std::cerr << "cannot open log file: " << log_path << "\n";
        return kInvalid;
      }
      opts.log = &log_file;
    } else {
      opts.log = &std::cerr;
    }

    relthue::SolutionReport rep = relthue::solve(spec, opts);
    std::cout << relthue::report_to_text(rep);
    if (!json_path.empty()) {
      std::ofstream out(json_path);
      if (!out) {
        std::cerr << "cannot open output file: " << json_path << "\n";
        return kInvalid;
      }
      out << relthue::report_to_json(rep) << "\n";
    }
    return rep.complete ? kOk : kIncomplete;
  } catch (const relthue::Error& e) {
    std::cerr << "error (" << relthue::error_code_name(e.code()) << "): " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIncomplete;
  }
}
