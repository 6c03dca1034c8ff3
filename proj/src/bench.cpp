#include "dz/bench.hpp"

#include <random>
#include <sstream>

namespace dz {

namespace {

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  Int uniform(Int lo, Int hi) {  // inclusive; avoids distribution objects so
    return lo + static_cast<Int>(g() % static_cast<std::uint64_t>(hi - lo + 1));
  }  // output is pinned by the mt19937_64 standard sequence
};

std::string pick_var(const char* base, size_t i) {
  return std::string(base) + std::to_string(i + 1);
}

void emit_portfolio(std::ostringstream& os, const BenchSpec& spec,
                    const PortfolioData& d) {
  size_t n = spec.picks;
  Int total = 0;
  for (Int ai : d.a) total += ai;
  Int cap3 = total / 3, cap4 = total / 4;
  size_t R = d.stocks.size();

  os << "; portfolio: pick " << n << " of " << R << " stocks, seed "
     << spec.seed << "\n";
  for (size_t i = 0; i < n; i++) {
    os << "(declare-int " << pick_var("x", i) << " 1 " << R << ")\n";
    os << "(declare-int " << pick_var("c", i) << " 1 3)\n";
    os << "(declare-int " << pick_var("s", i) << " 1 6)\n";
    os << "(declare-int " << pick_var("d", i) << " -50 150)\n";
    for (Int s = 1; s <= 6; s++)
      os << "(declare-int e" << i + 1 << "_" << s << " 0 1)\n";
    os << "(declare-int " << pick_var("f", i) << " 0 1)\n";
  }
  os << "(table stocks (";
  for (auto& r : d.stocks)
    os << "(" << r[0] << " " << r[1] << " " << r[2] << ") ";
  os << "))\n(table quotes (";
  for (auto& r : d.quotes) os << "(" << r[0] << " " << r[1] << ") ";
  os << "))\n";

  for (size_t i = 0; i < n; i++) {
    os << "(assert (exists (sel r (and (= (fst r) " << pick_var("x", i)
       << ") (= (fst (snd r)) " << pick_var("c", i) << ") (= (snd (snd r)) "
       << pick_var("s", i) << ")) stocks)))\n";
    os << "(assert (exists (sel r (and (= (fst r) " << pick_var("x", i)
       << ") (= (snd r) " << pick_var("d", i) << ")) quotes)))\n";
  }
  for (size_t i = 0; i < n; i++)
    for (size_t j = i + 1; j < n; j++)
      os << "(assert (not (= " << pick_var("x", i) << " " << pick_var("x", j)
         << ")))\n";
  // sector concentration: indicator e_i_s is forced up when pick i is in
  // sector s, and the a-weighted sum is capped by total/3
  for (Int s = 1; s <= 6; s++) {
    for (size_t i = 0; i < n; i++)
      os << "(assert (or (<= 1 e" << i + 1 << "_" << s << ") (not (= "
         << pick_var("s", i) << " " << s << "))))\n";
    os << "(assert (<= (+";
    for (size_t i = 0; i < n; i++)
      os << " (* " << d.a[i] << " e" << i + 1 << "_" << s << ")";
    os << " 0) " << cap3 << "))\n";
  }
  for (size_t i = 0; i < n; i++)
    os << "(assert (or (<= 1 " << pick_var("f", i) << ") (not (= "
       << pick_var("c", i) << " 1))))\n";
  os << "(assert (<= (+";
  for (size_t i = 0; i < n; i++)
    os << " (* " << d.a[i] << " " << pick_var("f", i) << ")";
  os << " 0) " << cap4 << "))\n";
  os << "(maximize (+";
  for (size_t i = 0; i < n; i++)
    os << " (* " << d.a[i] << " " << pick_var("d", i) << ")";
  os << " 0))\n";
}

void emit_foreign_keys(std::ostringstream& os, const BenchSpec& spec) {
  Rng rng(spec.seed);
  size_t R = spec.rows;
  size_t m = spec.picks;
  os << "; foreign-keys: " << m << " income IDs referencing " << R
     << " employees, seed " << spec.seed << "\n";
  std::vector<bool> symbolic(m);
  for (size_t i = 0; i < m; i++)
    symbolic[i] = rng.uniform(0, 99) < spec.symbolic_pct;
  for (size_t i = 0; i < m; i++)
    if (symbolic[i]) os << "(declare-int " << pick_var("id", i) << ")\n";
  os << "(table employees (";
  for (size_t i = 1; i <= R; i++) os << "(" << i << ") ";
  os << "))\n";
  for (size_t i = 0; i < m; i++) {
    if (symbolic[i])
      os << "(assert (exists (sel r (= r " << pick_var("id", i)
         << ") employees)))\n";
    else
      os << "(assert (exists (sel r (= r "
         << rng.uniform(1, static_cast<Int>(R)) << ") employees)))\n";
  }
}

void emit_how_to(std::ostringstream& os, const BenchSpec& spec) {
  Rng rng(spec.seed);
  size_t R = spec.rows;
  size_t B = std::max<size_t>(spec.picks, 1);
  os << "; how-to: synthesize bonuses so a young employee clears 60000, seed "
     << spec.seed << "\n";
  for (size_t j = 0; j < B; j++) {
    os << "(declare-int " << pick_var("bid", j) << " 1 " << R << ")\n";
    os << "(declare-int " << pick_var("bamt", j) << " 0 30000)\n";
  }
  os << "(table employees (";
  for (size_t i = 1; i <= R; i++) {
    Int age = rng.uniform(25, 64);
    Int level = rng.uniform(1, 3);
    Int salary = rng.uniform(30000, 55000);
    os << "(" << i << " " << age << " " << level << " " << salary << ") ";
  }
  os << "))\n(table bonuses (";
  for (size_t j = 0; j < B; j++)
    os << "(?" << pick_var("bid", j) << " ?" << pick_var("bamt", j) << ") ";
  os << "))\n";
  // e = (id, (age, (level, salary))), b = (bid, bamt); the bonus row must
  // reference a young employee whose income then exceeds the threshold
  os << "(assert (exists (sel p (and"
     << " (<= (fst (snd (fst p))) 29)"
     << " (= (fst (snd p)) (fst (fst p)))"
     << " (<= 60001 (+ (snd (snd (snd (fst p))))"
     << " (* 50 (fst (snd (snd (fst p)))))"
     << " (snd (snd p))))) (prod employees bonuses))))\n";
}

void emit_geo_box(std::ostringstream& os, const BenchSpec& spec) {
  Rng rng(spec.seed);
  size_t R = spec.rows;
  size_t n = std::max<size_t>(spec.picks, 1);
  Int target = rng.uniform(1, 6);  // species 6 never observed -> unsat
  os << "; geo-box: " << n << " sightings of species " << target
     << " inside one symbolic rectangle, seed " << spec.seed << "\n";
  os << "(declare-int lngmin 0 100)\n(declare-int lngmax 0 100)\n"
     << "(declare-int latmin 0 100)\n(declare-int latmax 0 100)\n";
  for (size_t i = 0; i < n; i++) {
    os << "(declare-int " << pick_var("ox", i) << " 0 100)\n";
    os << "(declare-int " << pick_var("oy", i) << " 0 100)\n";
  }
  os << "(table observations (";
  for (size_t i = 0; i < R; i++)
    os << "(" << rng.uniform(1, 5) << " " << rng.uniform(0, 100) << " "
       << rng.uniform(0, 100) << ") ";
  os << "))\n";
  os << "(assert (<= lngmin lngmax))\n(assert (<= latmin latmax))\n";
  for (size_t i = 0; i < n; i++) {
    os << "(assert (exists (sel o (and (= (fst o) " << target << ") (= (fst (snd o)) "
       << pick_var("ox", i) << ") (= (snd (snd o)) " << pick_var("oy", i)
       << ")) observations)))\n";
    os << "(assert (<= lngmin " << pick_var("ox", i) << "))\n";
    os << "(assert (<= " << pick_var("ox", i) << " lngmax))\n";
    os << "(assert (<= latmin " << pick_var("oy", i) << "))\n";
    os << "(assert (<= " << pick_var("oy", i) << " latmax))\n";
  }
  for (size_t i = 0; i < n; i++)
    for (size_t j = i + 1; j < n; j++)
      os << "(assert (or (not (= " << pick_var("ox", i) << " "
         << pick_var("ox", j) << ")) (not (= " << pick_var("oy", i) << " "
         << pick_var("oy", j) << "))))\n";
}

}  // namespace

PortfolioData portfolio_data(const BenchSpec& spec) {
  Rng rng(spec.seed);
  PortfolioData d;
  for (size_t i = 1; i <= spec.rows; i++) {
    d.stocks.push_back({static_cast<Int>(i), rng.uniform(1, 3), rng.uniform(1, 6)});
    d.quotes.push_back({static_cast<Int>(i), rng.uniform(-50, 150)});
  }
  // equal partition: any pick with a_i > total/3 would alone break the
  // sector cap, so unequal partitions are (nearly) always infeasible
  Int share = 10 * rng.uniform(5, 15);
  d.a.assign(spec.picks, share);
  return d;
}

std::string bench_gen(const BenchSpec& spec) {
  if (spec.rows < 1) throw Error("bench: rows must be >= 1");
  if (spec.picks < 1) throw Error("bench: picks must be >= 1");
  if (spec.symbolic_pct < 0 || spec.symbolic_pct > 100)
    throw Error("bench: symbolic share must be within 0..100");
  std::ostringstream os;
  if (spec.family == "portfolio") {
    emit_portfolio(os, spec, portfolio_data(spec));
  } else if (spec.family == "foreign-keys") {
    emit_foreign_keys(os, spec);
  } else if (spec.family == "how-to") {
    emit_how_to(os, spec);
  } else if (spec.family == "geo-box") {
    emit_geo_box(os, spec);
  } else {
    throw Error("bench: unknown family '" + spec.family + "'");
  }
  return os.str();
}

}  // namespace dz
