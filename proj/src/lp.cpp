#include "sts/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace sts {

namespace {

/// Dense simplex tableau.  Columns: structural variables (shifted to lower
/// bound 0), then one slack/surplus per row, then artificials.
struct Tableau {
  size_t rows = 0, cols = 0;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<int> basis;          // basis[i] = column basic in row i
  std::vector<bool> banned;        // columns excluded from entering
  std::vector<Rational> cost;      // reduced-cost row
  Rational cost_val;               // negated objective value

  void pivot(size_t r, size_t c) {
    Rational p = a[r][c];
    for (auto& v : a[r]) v /= p;
    b[r] /= p;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    if (cost[c] != 0) {
      Rational f = cost[c];
      for (size_t j = 0; j < cols; ++j) cost[j] -= f * a[r][j];
      cost_val -= f * b[r];
    }
    basis[r] = static_cast<int>(c);
  }

  /// Bland's rule; returns false on optimality, throws on unboundedness.
  bool step() {
    size_t enter = cols;
    for (size_t j = 0; j < cols; ++j) {
      if (!banned[j] && cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) return false;
    size_t leave = rows;
    for (size_t i = 0; i < rows; ++i) {
      if (a[i][enter] <= 0) continue;
      if (leave == rows) {
        leave = i;
        continue;
      }
      Rational cur = b[i] / a[i][enter];
      Rational best = b[leave] / a[leave][enter];
      if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
    }
    if (leave == rows) throw std::runtime_error("lp: unbounded");
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const int n = lp.num_vars();

  // Shift structural variables to lower bound zero and fold upper bounds into
  // extra <= rows.
  struct NormRow {
    std::vector<Rational> coeffs;
    RowSense sense;
    Rational rhs;
    int origin;  // index into lp.rows, or -1 for a bound row
  };
  std::vector<NormRow> norm;
  for (size_t ri = 0; ri < lp.rows.size(); ++ri) {
    const auto& row = lp.rows[ri];
    NormRow r{std::vector<Rational>(n, Rational(0)), row.sense, row.rhs,
              static_cast<int>(ri)};
    for (const auto& [j, c] : row.coeffs) {
      r.coeffs[j] = c;
      r.rhs -= c * lp.lower[j];
    }
    norm.push_back(std::move(r));
  }
  for (int j = 0; j < n; ++j) {
    if (!lp.upper[j]) continue;
    Rational span = *lp.upper[j] - lp.lower[j];
    if (span < 0) return {LpStatus::Infeasible, {}, Rational(0), {}};
    NormRow r{std::vector<Rational>(n, Rational(0)), RowSense::Le, span, -1};
    r.coeffs[j] = 1;
    norm.push_back(std::move(r));
  }

  const size_t m = norm.size();
  Tableau t;
  t.rows = m;

  // Count columns: structural + one slack/surplus per inequality + artificials.
  size_t slack_count = 0;
  for (const auto& r : norm)
    if (r.sense != RowSense::Eq) ++slack_count;
  size_t art_base = n + slack_count;
  t.cols = art_base + m;  // upper bound; unused artificial columns stay zero
  t.a.assign(m, std::vector<Rational>(t.cols, Rational(0)));
  t.b.assign(m, Rational(0));
  t.basis.assign(m, -1);
  t.banned.assign(t.cols, false);
  t.cost.assign(t.cols, Rational(0));
  t.cost_val = 0;

  std::vector<int> art_origin(t.cols, -1);
  std::vector<bool> art_used(t.cols, false);
  size_t slack = n;
  size_t art = art_base;
  std::vector<size_t> art_rows;
  for (size_t i = 0; i < m; ++i) {
    auto r = norm[i];
    int sign = 1;
    if (r.rhs < 0) {
      sign = -1;
      r.rhs = -r.rhs;
      for (auto& c : r.coeffs) c = -c;
      if (r.sense == RowSense::Le) r.sense = RowSense::Ge;
      else if (r.sense == RowSense::Ge) r.sense = RowSense::Le;
    }
    for (int j = 0; j < n; ++j) t.a[i][j] = r.coeffs[j];
    t.b[i] = r.rhs;
    if (r.sense == RowSense::Le) {
      t.a[i][slack] = 1;
      t.basis[i] = static_cast<int>(slack);
      ++slack;
    } else {
      if (r.sense == RowSense::Ge) t.a[i][slack++] = -1;
      t.a[i][art] = 1;
      t.basis[i] = static_cast<int>(art);
      art_origin[art] = r.origin;
      art_used[art] = true;
      art_rows.push_back(i);
      ++art;
    }
    (void)sign;
  }
  for (size_t j = art_base; j < t.cols; ++j)
    if (!art_used[j]) t.banned[j] = true;

  // Phase 1: minimize the sum of artificials.
  if (!art_rows.empty()) {
    for (size_t i : art_rows) {
      for (size_t j = 0; j < t.cols; ++j)
        if (j < art_base) t.cost[j] -= t.a[i][j];
      t.cost_val -= t.b[i];
    }
    while (t.step()) {
    }
    if (t.cost_val != 0) {
      LpResult res;
      res.status = LpStatus::Infeasible;
      for (size_t i = 0; i < m; ++i) {
        int bj = t.basis[i];
        if (bj >= static_cast<int>(art_base) && t.b[i] > 0 &&
            art_origin[bj] >= 0)
          res.certificate_rows.push_back(art_origin[bj]);
      }
      return res;
    }
    // Ban artificials from re-entering; pivot basic zero artificials out
    // where possible.
    for (size_t j = art_base; j < t.cols; ++j) t.banned[j] = true;
    for (size_t i = 0; i < m; ++i) {
      if (t.basis[i] < static_cast<int>(art_base)) continue;
      for (size_t j = 0; j < art_base; ++j) {
        if (t.a[i][j] != 0) {
          t.pivot(i, j);
          break;
        }
      }
    }
  }

  LpResult res;
  res.status = LpStatus::Optimal;
  if (!lp.objective.empty()) {
    // Phase 2: rebuild the reduced-cost row for the true objective.
    std::fill(t.cost.begin(), t.cost.end(), Rational(0));
    t.cost_val = 0;
    for (const auto& [j, c] : lp.objective) {
      t.cost[j] += c;
      t.cost_val += c * lp.lower.at(j);  // constant shift
    }
    Rational shift = t.cost_val;
    t.cost_val = 0;
    for (size_t i = 0; i < m; ++i) {
      int bj = t.basis[i];
      if (bj >= 0 && t.cost[bj] != 0) {
        Rational f = t.cost[bj];
        for (size_t j = 0; j < t.cols; ++j) t.cost[j] -= f * t.a[i][j];
        t.cost_val -= f * t.b[i];
      }
    }
    try {
      while (t.step()) {
      }
    } catch (const std::runtime_error&) {
      res.status = LpStatus::Unbounded;
      return res;
    }
    res.objective = -t.cost_val + shift;
  }

  res.values.assign(n, Rational(0));
  for (size_t i = 0; i < m; ++i)
    if (t.basis[i] >= 0 && t.basis[i] < n) res.values[t.basis[i]] = t.b[i];
  for (int j = 0; j < n; ++j) res.values[j] += lp.lower[j];
  return res;
}

}  // namespace sts
