#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dz/analysis.hpp"
#include "dz/bench.hpp"
#include "dz/parser.hpp"
#include "dz/reduce.hpp"
#include "dz/smtlib.hpp"
#include "dz/solver.hpp"
#include "dz/typecheck.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dz::Error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dz::Error("cannot write '" + path + "'");
  out << text;
}

dz::SourceProblem load(const std::string& path) {
  std::string dir = std::filesystem::path(path).parent_path().string();
  if (dir.empty()) dir = ".";
  return dz::parse(read_file(path), dir);
}

const char* status_str(dz::SolveStatus s) {
  switch (s) {
    case dz::SolveStatus::Sat: return "sat";
    case dz::SolveStatus::Unsat: return "unsat";
    case dz::SolveStatus::Optimal: return "optimal";
    case dz::SolveStatus::Infeasible: return "infeasible";
    case dz::SolveStatus::ResourceLimit: return "resource-limit";
  }
  return "?";
}

int exit_code(dz::SolveStatus s) {
  switch (s) {
    case dz::SolveStatus::Sat:
    case dz::SolveStatus::Optimal: return 0;
    case dz::SolveStatus::Unsat:
    case dz::SolveStatus::Infeasible: return 1;
    case dz::SolveStatus::ResourceLimit: return 2;
  }
  return 3;
}

int report(const dz::SolveResult& r, const std::string& format) {
  if (format == "json-lines") {
    json j;
    j["status"] = status_str(r.status);
    if (!r.model.empty()) j["model"] = r.model;
    if (r.objective) j["objective"] = *r.objective;
    j["stats"] = {{"nodes", r.stats.nodes},
                  {"decisions", r.stats.decisions},
                  {"propagations", r.stats.propagations},
                  {"equality_splits", r.stats.equality_splits},
                  {"lp_calls", r.stats.lp_calls}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << status_str(r.status) << "\n";
    for (auto& [name, v] : r.model)
      std::cout << "  " << name << " = " << v << "\n";
    if (r.objective) std::cout << "objective " << *r.objective << "\n";
    std::cout << "nodes " << r.stats.nodes << ", decisions "
              << r.stats.decisions << ", propagations " << r.stats.propagations
              << ", equality splits " << r.stats.equality_splits
              << ", lp calls " << r.stats.lp_calls << "\n";
  }
  return exit_code(r.status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dz: a solver for linear integer arithmetic extended with table "
      "operators (selection, cross product, union)"};
  app.require_subcommand(1);

  std::string input, output, format = "text", family = "portfolio";
  double time_limit = 0;
  std::size_t node_limit = 0, rows = 6, picks = 2, max_rows = 4'000'000;
  long long default_bound = 1LL << 30;
  int symbolic = 100;
  std::uint64_t seed = 0;

  auto add_limits = [&](CLI::App* c) {
    c->add_option("--time-limit", time_limit, "time budget in seconds");
    c->add_option("--node-limit", node_limit, "search node budget");
    c->add_option("--default-bound", default_bound,
                  "bound magnitude for variables declared without bounds "
                  "(finite bounds keep the search tree finite)");
    c->add_option("--format", format, "text or json-lines")
        ->check(CLI::IsMember({"text", "json-lines"}));
  };

  auto* solve = app.add_subcommand("solve", "decide or optimize an instance");
  solve->add_option("input", input, "problem file (.dz)")->required();
  add_limits(solve);

  auto* eager = app.add_subcommand(
      "solve-eager", "materialize all tables into plain arithmetic, then solve");
  eager->add_option("input", input, "problem file (.dz)")->required();
  eager->add_option("--max-rows", max_rows,
                    "abort if materialization exceeds this many rows");
  add_limits(eager);

  auto* emit = app.add_subcommand("emit-smt",
                                  "write the materialized instance as SMT-LIB 2");
  emit->add_option("input", input, "problem file (.dz)")->required();
  emit->add_option("output", output, "output .smt2 path")->required();

  auto* rank_cmd = app.add_subcommand("rank", "print the assertion's rank");
  rank_cmd->add_option("input", input, "problem file (.dz)")->required();

  auto* frag = app.add_subcommand(
      "check-fragment",
      "report whether every table-nonemptiness atom occurs positively");
  frag->add_option("input", input, "problem file (.dz)")->required();

  auto* bench = app.add_subcommand("bench-gen", "generate a benchmark instance");
  bench->add_option("--family", family,
                    "portfolio, foreign-keys, how-to, or geo-box")
      ->check(CLI::IsMember({"portfolio", "foreign-keys", "how-to", "geo-box"}));
  bench->add_option("--rows", rows, "main table size");
  bench->add_option("--picks", picks, "tuples to select");
  bench->add_option("--symbolic", symbolic, "share of symbolic cells, 0..100");
  bench->add_option("--seed", seed, "generator seed");
  bench->add_option("--out", output, "output .dz path")->required();

  CLI11_PARSE(app, argc, argv);

  dz::SolveLimits limits;
  if (time_limit > 0) limits.time_limit_s = time_limit;
  if (node_limit > 0) limits.node_limit = node_limit;
  limits.default_bound = default_bound;

  try {
    if (solve->parsed()) {
      return report(dz::solve_lazy(load(input), limits), format);
    }
    if (eager->parsed()) {
      return report(dz::solve_eager(load(input), limits, max_rows), format);
    }
    if (emit->parsed()) {
      dz::SourceProblem p = load(input);
      dz::typecheck(p);
      dz::VarRegistry vars;
      for (auto& d : p.decls) vars.intern(d.name, d.lo, d.hi);
      std::string script =
          dz::emit_smtlib(dz::reduce_formula(p.assertion, max_rows), vars);
      dz::check_smtlib_grammar(script);
      write_file(output, script);
      return 0;
    }
    if (rank_cmd->parsed()) {
      dz::SourceProblem p = load(input);
      dz::typecheck(p);
      std::cout << dz::rank(p.assertion) << "\n";
      return 0;
    }
    if (frag->parsed()) {
      dz::SourceProblem p = load(input);
      dz::typecheck(p);
      std::cout << (dz::is_existential(p.assertion) ? "existential"
                                                    : "not-existential")
                << "\n";
      return 0;
    }
    if (bench->parsed()) {
      dz::BenchSpec spec{family, rows, picks, symbolic, seed};
      write_file(output, dz::bench_gen(spec));
      return 0;
    }
  } catch (const dz::Error& e) {
    if (e.pos.line > 0)
      std::cerr << "error at " << e.pos.line << ":" << e.pos.col << ": "
                << e.what() << "\n";
    else
      std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
