#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dz/analysis.hpp"
#include "dz/bench.hpp"
#include "dz/parser.hpp"
#include "dz/reduce.hpp"
#include "dz/smtlib.hpp"
#include "dz/solver.hpp"
#include "dz/typecheck.hpp"

namespace py = pybind11;

namespace {

const char* status_str(dz::SolveStatus s) {
  switch (s) {
    case dz::SolveStatus::Sat: return "sat";
    case dz::SolveStatus::Unsat: return "unsat";
    case dz::SolveStatus::Optimal: return "optimal";
    case dz::SolveStatus::Infeasible: return "infeasible";
    case dz::SolveStatus::ResourceLimit: return "resource-limit";
  }
  return "unknown";
}

dz::SolveLimits make_limits(std::optional<double> time_limit,
                            std::optional<size_t> node_limit,
                            dz::Int default_bound) {
  dz::SolveLimits l;
  l.time_limit_s = time_limit;
  l.node_limit = node_limit;
  l.default_bound = default_bound;
  return l;
}

py::dict result_dict(const dz::SolveResult& r) {
  py::dict out;
  out["status"] = status_str(r.status);
  py::dict model;
  for (auto& [k, v] : r.model) model[py::str(k)] = v;
  out["model"] = model;
  out["objective"] = r.objective ? py::object(py::int_(*r.objective))
                                 : py::object(py::none());
  py::dict stats;
  stats["nodes"] = r.stats.nodes;
  stats["decisions"] = r.stats.decisions;
  stats["propagations"] = r.stats.propagations;
  stats["equality_splits"] = r.stats.equality_splits;
  stats["lp_calls"] = r.stats.lp_calls;
  out["stats"] = stats;
  return out;
}

}  // namespace

PYBIND11_MODULE(_dzcore, m) {
  m.doc() = "constraint solving over linear integer arithmetic with "
            "embedded relational tables";

  py::register_exception<dz::Error>(m, "SolverError");

  py::class_<dz::SourceProblem>(m, "Problem")
      .def("__repr__", [](const dz::SourceProblem& p) {
        return "<Problem: " + std::to_string(p.decls.size()) + " vars, " +
               std::to_string(p.tables.size()) + " tables>";
      });

  m.def("parse", &dz::parse, py::arg("text"), py::arg("base_dir") = ".",
        "Parse a problem in the s-expression surface syntax.");

  m.def("print_problem", &dz::print_problem, py::arg("problem"),
        "Render a problem back into surface syntax.");

  m.def(
      "solve",
      [](const dz::SourceProblem& p, std::optional<double> time_limit,
         std::optional<size_t> node_limit, dz::Int default_bound) {
        return result_dict(
            dz::solve_lazy(p, make_limits(time_limit, node_limit,
                                          default_bound)));
      },
      py::arg("problem"), py::arg("time_limit") = py::none(),
      py::arg("node_limit") = py::none(),
      py::arg("default_bound") = dz::Int(1) << 30,
      "Decide or optimize on the lazy path (membership theory procedure).");

  m.def(
      "solve_eager",
      [](const dz::SourceProblem& p, std::optional<double> time_limit,
         std::optional<size_t> node_limit, dz::Int default_bound,
         size_t max_rows) {
        return result_dict(dz::solve_eager(
            p, make_limits(time_limit, node_limit, default_bound), max_rows));
      },
      py::arg("problem"), py::arg("time_limit") = py::none(),
      py::arg("node_limit") = py::none(),
      py::arg("default_bound") = dz::Int(1) << 30,
      py::arg("max_rows") = size_t(4'000'000),
      "Materialize every table into plain arithmetic, then solve.");

  m.def(
      "rank",
      [](const dz::SourceProblem& p) {
        dz::typecheck(p);
        return dz::rank(p.assertion);
      },
      py::arg("problem"),
      "Maximum number of input tables combinable by cross products.");

  m.def(
      "is_existential",
      [](const dz::SourceProblem& p) {
        dz::typecheck(p);
        return dz::is_existential(p.assertion);
      },
      py::arg("problem"),
      "True when every table-nonemptiness atom occurs positively.");

  m.def(
      "emit_smtlib",
      [](const dz::SourceProblem& p, size_t max_rows, bool get_model) {
        dz::typecheck(p);
        dz::VarRegistry vars;
        for (auto& d : p.decls) vars.intern(d.name, d.lo, d.hi);
        std::string script = dz::emit_smtlib(
            dz::reduce_formula(p.assertion, max_rows), vars, get_model);
        dz::check_smtlib_grammar(script);
        return script;
      },
      py::arg("problem"), py::arg("max_rows") = size_t(4'000'000),
      py::arg("get_model") = false,
      "Materialized instance as an SMT-LIB 2 QF_LIA script.");

  m.def(
      "bench_gen",
      [](const std::string& family, size_t rows, size_t picks, int symbolic,
         std::uint64_t seed) {
        return dz::bench_gen({family, rows, picks, symbolic, seed});
      },
      py::arg("family"), py::arg("rows") = 6, py::arg("picks") = 2,
      py::arg("symbolic") = 100, py::arg("seed") = 0,
      "Generate a benchmark instance in the surface syntax.");
}
