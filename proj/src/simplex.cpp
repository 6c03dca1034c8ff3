#include "dz/simplex.hpp"

#include <map>

namespace dz {

namespace {

/// Dense exact tableau. Row layout: m constraint rows then the cost row.
/// Column layout: structural | slack | artificial | rhs.
struct Tableau {
  size_t m = 0, ncols = 0;
  std::vector<std::vector<Rational>> a;  // (m+1) x (ncols+1)
  std::vector<size_t> basis;             // column basic in each row

  Rational& at(size_t i, size_t j) { return a[i][j]; }
  Rational& rhs(size_t i) { return a[i][ncols]; }
  Rational& cost(size_t j) { return a[m][j]; }

  void pivot(size_t r, size_t c) {
    Rational p = a[r][c];
    for (auto& x : a[r]) x /= p;
    for (size_t i = 0; i <= m; i++) {
      if (i == r) continue;
      Rational f = a[i][c];
      if (f == 0) continue;
      for (size_t j = 0; j <= ncols; j++) a[i][j] -= f * a[r][j];
    }
    basis[r] = c;
  }

  /// Bland's rule: entering = lowest eligible column with negative reduced
  /// cost, leaving = min ratio breaking ties on lowest basis column.
  /// Returns false once optimal. `last_real` bounds eligible columns.
  bool iterate(size_t last_real) {
    while (true) {
      size_t enter = ncols;
      for (size_t j = 0; j < last_real; j++) {
        if (cost(j) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == ncols) return true;  // optimal
      size_t leave = m;
      Rational best;
      for (size_t i = 0; i < m; i++) {
        if (a[i][enter] <= 0) continue;
        Rational ratio = rhs(i) / a[i][enter];
        if (leave == m || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) throw Error("internal: unbounded LP over box bounds");
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult lp_check(const BoundsStore& bounds,
                  const std::vector<GuardedLinearConstraint>& constraints,
                  const std::vector<std::pair<VarId, Int>>* objective) {
  // Columns only for variables that actually occur; the rest sit at lb.
  std::map<VarId, size_t> col;
  auto touch = [&](VarId v) {
    if (!col.count(v)) {
      size_t c = col.size();
      col[v] = c;
    }
  };
  std::vector<const LinearAtom*> active;
  for (const auto& c : constraints) {
    if (!constraint_active(bounds, c)) continue;
    active.push_back(&c.atom);
    for (auto& [v, a] : c.atom.terms) touch(v);
  }
  if (objective)
    for (auto& [v, a] : *objective) touch(v);

  LpResult res;
  res.values.resize(bounds.size());
  for (size_t v = 0; v < bounds.size(); v++) {
    auto l = bounds.lb(static_cast<VarId>(v));
    auto u = bounds.ub(static_cast<VarId>(v));
    if (!l || !u) throw Error("internal: LP requires finite bounds");
    if (*l > *u) return res;  // Infeasible
    res.values[v] = *l;
  }

  // Shift x = lb + z with z >= 0; each touched variable gets an upper-bound
  // row z <= ub - lb, each active atom a row sum a*z <= rhs - sum a*lb.
  size_t nstruct = col.size();
  size_t m = active.size() + nstruct;
  std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(nstruct, 0));
  std::vector<Rational> rhs(m, 0);
  size_t r = 0;
  for (const LinearAtom* at : active) {
    Rational b = at->rhs;
    for (auto& [v, a] : at->terms) {
      rows[r][col[v]] += a;
      b -= Rational(a) * Rational(*bounds.lb(v));
    }
    rhs[r++] = b;
  }
  for (auto& [v, j] : col) {
    rows[r][j] = 1;
    rhs[r++] = Rational(*bounds.ub(v)) - Rational(*bounds.lb(v));
  }

  // Negative-rhs rows are flipped (slack coeff -1) and given an artificial.
  size_t nslack = m;
  std::vector<size_t> art_rows;
  for (size_t i = 0; i < m; i++)
    if (rhs[i] < 0) art_rows.push_back(i);
  size_t nart = art_rows.size();

  Tableau t;
  t.m = m;
  t.ncols = nstruct + nslack + nart;
  t.a.assign(m + 1, std::vector<Rational>(t.ncols + 1, 0));
  t.basis.resize(m);
  size_t next_art = 0;
  for (size_t i = 0; i < m; i++) {
    bool flip = rhs[i] < 0;
    Rational sign = flip ? -1 : 1;
    for (size_t j = 0; j < nstruct; j++) t.at(i, j) = sign * rows[i][j];
    t.at(i, nstruct + i) = sign;  // slack
    t.rhs(i) = sign * rhs[i];
    if (flip) {
      size_t ac = nstruct + nslack + next_art++;
      t.at(i, ac) = 1;
      t.basis[i] = ac;
    } else {
      t.basis[i] = nstruct + i;
    }
  }

  if (nart > 0) {
    // Phase 1: minimize the artificial sum (cost row priced out on the
    // artificial basis).
    for (size_t k = 0; k < nart; k++) t.cost(nstruct + nslack + k) = 1;
    for (size_t i : art_rows)
      for (size_t j = 0; j <= t.ncols; j++) t.a[m][j] -= t.a[i][j];
    t.iterate(nstruct + nslack);
    if (t.rhs(m) < 0) return res;  // artificial sum > 0: infeasible
    // Pivot any leftover basic artificial (degenerate, value 0) onto a real
    // column; an all-zero row is redundant and harmless.
    for (size_t i = 0; i < m; i++) {
      if (t.basis[i] < nstruct + nslack) continue;
      for (size_t j = 0; j < nstruct + nslack; j++) {
        if (t.at(i, j) != 0) {
          t.pivot(i, j);
          break;
        }
      }
    }
    for (size_t j = 0; j <= t.ncols; j++) t.a[m][j] = 0;
  }

  Rational obj_const = 0;
  if (objective) {
    for (auto& [v, a] : *objective) {
      t.cost(col[v]) += a;
      obj_const += Rational(a) * Rational(*bounds.lb(v));
    }
    for (size_t i = 0; i < m; i++) {
      Rational f = t.cost(t.basis[i]);
      if (f == 0) continue;
      for (size_t j = 0; j <= t.ncols; j++) t.a[m][j] -= f * t.a[i][j];
    }
  }
  t.iterate(nstruct + nslack);

  res.status = LpResult::Status::Optimal;
  for (size_t i = 0; i < m; i++) {
    if (t.basis[i] >= nstruct) continue;
    for (auto& [v, j] : col)
      if (j == t.basis[i]) res.values[v] = Rational(*bounds.lb(v)) + t.rhs(i);
  }
  res.objective = obj_const - t.rhs(m);
  return res;
}

std::optional<std::pair<VarId, Int>> first_fractional(const LpResult& r) {
  for (size_t v = 0; v < r.values.size(); v++) {
    const Rational& x = r.values[v];
    if (denominator(x) != 1) {
      boost::multiprecision::cpp_int q = numerator(x) / denominator(x);
      if (x < 0) q--;  // truncation -> floor for non-integral negatives
      return std::make_pair(static_cast<VarId>(v), static_cast<Int>(q));
    }
  }
  return std::nullopt;
}

}  // namespace dz
