#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>

#include "relthue/errors.hpp"
#include "relthue/lattice.hpp"
#include "relthue/roots.hpp"
#include "relthue/solver.hpp"

namespace py = pybind11;
using namespace relthue;

namespace {

std::vector<std::string> coords_to_strings(const std::vector<Int>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(z.get_str());
  return out;
}

py::dict solution_to_dict(const Solution& s) {
  py::dict d;
  d["x"] = coords_to_strings(s.x);
  d["y"] = coords_to_strings(s.y);
  d["sign_pair"] = s.canonical_sign;
  return d;
}

py::dict report_to_dict(const SolutionReport& rep) {
  py::dict d;
  d["complete"] = rep.complete;
  if (!rep.error.empty()) d["error"] = rep.error;
  d["a_b"] = rep.A_B.sci(8);
  d["a_r"] = rep.A_R.sci(8);
  d["tiny_floor"] = rep.tiny_floor.sci(8);
  d["enumeration_limit"] = rep.enumeration_limit;
  d["seconds"] = rep.seconds;
  py::list sols;
  for (const auto& s : rep.solutions) sols.append(solution_to_dict(s));
  d["solutions"] = sols;
  d["reduction_steps"] = rep.reduction_log.size();
  return d;
}

IntMatrix columns_from_python(const std::vector<std::vector<long>>& cols) {
  IntMatrix m(cols.size());
  for (size_t c = 0; c < cols.size(); ++c) m[c].assign(cols[c].begin(), cols[c].end());
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "small solutions of relative Thue equations over number fields";

  py::register_exception<Error>(mod, "RelthueError");

  py::class_<ProblemSpec>(mod, "ProblemSpec")
      .def_readonly("m", &ProblemSpec::m)
      .def_readonly("n", &ProblemSpec::n)
      .def_readonly("totally_real", &ProblemSpec::totally_real)
      .def("__repr__", [](const ProblemSpec& s) {
        return "<ProblemSpec m=" + std::to_string(s.m) + " n=" + std::to_string(s.n) +
               (s.totally_real ? " totally_real" : "") + ">";
      });

  mod.def("load_problem", &load_problem, py::arg("text"),
          "parse and validate a problem from JSON text");
  mod.def("load_problem_file", &load_problem_file, py::arg("path"));

  mod.def(
      "solve",
      [](const ProblemSpec& spec, py::object c, long a_i, double factor, int threads,
         long work_cap, bool specific_constants) {
        SolveOptions opts;
        if (!c.is_none()) opts.C = py::cast<std::string>(c);
        opts.A_I = a_i;
        opts.interval_factor = factor;
        opts.threads = threads;
        opts.work_cap = Int(work_cap);
        opts.specific_constants = specific_constants;
        return report_to_dict(solve(spec, opts));
      },
      py::arg("spec"), py::arg("c") = py::none(), py::arg("a_i") = 10, py::arg("factor") = 5.0,
      py::arg("threads") = 0, py::arg("work_cap") = 1000000000L,
      py::arg("specific_constants") = true,
      "run the full pipeline; returns a report dict");

  mod.def(
      "oracle_search",
      [](const ProblemSpec& spec, long box, long work_cap, int threads) {
        py::list out;
        for (const auto& s : oracle_search(spec, box, Int(work_cap), threads))
          out.append(solution_to_dict(s));
        return out;
      },
      py::arg("spec"), py::arg("box"), py::arg("work_cap") = 1000000000L, py::arg("threads") = 1,
      "exhaustive exact scan over the coordinate box");

  mod.def(
      "constants",
      [](const ProblemSpec& spec) {
        EmbeddingProvider emb(spec, 60);
        auto cs = compute_constants(*emb.base(), spec);
        py::dict d;
        d["c1"] = cs.c1.to_double();
        d["c2"] = cs.c2.to_double();
        d["c3"] = cs.c3.to_double();
        d["c4"] = cs.c4.to_double();
        d["c5"] = cs.c5.to_double();
        d["alpha_size"] = cs.alpha_size.to_double();
        d["tiny_floor"] = cs.tiny_floor.to_double();
        d["initial_bound"] = initial_bound(cs, spec.bound_C).sci(8);
        return d;
      },
      py::arg("spec"), "the constant system and the initial bound");

  mod.def(
      "work_estimate",
      [](long limit, int m, int n) { return work_estimate(limit, m, n).get_str(); },
      py::arg("limit"), py::arg("m"), py::arg("n"));

  mod.def(
      "plan_intervals",
      [](long a_i, long a_r, double factor) { return plan_intervals(a_i, a_r, factor).segments; },
      py::arg("a_i"), py::arg("a_r"), py::arg("factor") = 5.0);

  mod.def(
      "complex_roots",
      [](const std::vector<std::complex<double>>& coeffs, long digits) {
        std::vector<BigComplex> c;
        const mpfr_prec_t bits = bits_for_digits(digits + 20);
        c.reserve(coeffs.size());
        for (const auto& z : coeffs) c.emplace_back(BigFloat(z.real(), bits), BigFloat(z.imag(), bits));
        std::vector<std::complex<double>> out;
        for (const auto& r : complex_roots(c, digits).roots)
          out.emplace_back(r.re.to_double(), r.im.to_double());
        return out;
      },
      py::arg("coeffs"), py::arg("digits") = 50,
      "roots of a polynomial with complex coefficients (ascending)");

  mod.def(
      "lll_reduce",
      [](const std::vector<std::vector<long>>& columns) {
        LllResult r = lll_reduce(columns_from_python(columns));
        auto to_py = [](const IntMatrix& m) {
          std::vector<std::vector<std::string>> out(m.size());
          for (size_t c = 0; c < m.size(); ++c)
            for (const auto& v : m[c]) out[c].push_back(v.get_str());
          return out;
        };
        return py::make_tuple(to_py(r.basis), to_py(r.transform), r.b1_norm_sq.get_str());
      },
      py::arg("columns"), "exact integer LLL; returns (basis, transform, |b1|^2)");

  mod.def(
      "enumerate_quadratic",
      [](const std::vector<std::vector<double>>& q, double rhs, long box) {
        const size_t d = q.size();
        std::vector<std::vector<BigFloat>> Q(d);
        const mpfr_prec_t bits = bits_for_digits(60);
        for (size_t i = 0; i < d; ++i)
          for (size_t j = 0; j < d; ++j) Q[i].emplace_back(q[i][j], bits);
        auto R = cholesky_decompose(Q, 60);
        return enumerate_quadratic(R, BigFloat(rhs, bits), box);
      },
      py::arg("q"), py::arg("rhs"), py::arg("box"),
      "integer vectors with x^T Q x <= rhs and max |x_i| <= box");

  mod.attr("__version__") = "0.1.0";
}
