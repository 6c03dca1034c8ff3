#ifndef DZ_BENCH_HPP
#define DZ_BENCH_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dz/ast.hpp"

namespace dz {

/// Parameters for the four generated problem families.
struct BenchSpec {
  std::string family;       // portfolio | foreign-keys | how-to | geo-box
  size_t rows = 6;          // main table size
  size_t picks = 2;         // tuples to select (portfolio, geo-box)
  int symbolic_pct = 100;   // share of symbolic cells (foreign-keys)
  std::uint64_t seed = 0;
};

/// Deterministic per seed; returns problem text in the surface syntax.
std::string bench_gen(const BenchSpec& spec);

/// Raw data behind a portfolio instance, for independent enumeration:
/// stocks (id, cap, sector) with cap in 1..3 (1 = smallcap) and sector in
/// 1..6, quotes (id, diff), and the fixed capital partition a.
struct PortfolioData {
  std::vector<std::array<Int, 3>> stocks;
  std::vector<std::array<Int, 2>> quotes;
  std::vector<Int> a;
};

PortfolioData portfolio_data(const BenchSpec& spec);

}  // namespace dz

#endif
