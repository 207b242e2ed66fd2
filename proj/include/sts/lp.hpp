#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sts/rational.hpp"

namespace sts {

enum class RowSense { Le, Eq, Ge };

struct LinearRow {
  std::map<int, Rational> coeffs;
  RowSense sense = RowSense::Le;
  Rational rhs;
  std::string tag;
};

/// A linear program over variables with rational bounds.  The objective is
/// minimized; an empty objective makes this a pure feasibility problem.
struct LinearProgram {
  std::vector<Rational> lower;
  std::vector<std::optional<Rational>> upper;
  std::vector<LinearRow> rows;
  std::map<int, Rational> objective;

  int add_var(const Rational& lb = Rational(0),
              std::optional<Rational> ub = std::nullopt) {
    lower.push_back(lb);
    upper.push_back(std::move(ub));
    return static_cast<int>(lower.size()) - 1;
  }
  int num_vars() const { return static_cast<int>(lower.size()); }
  void add_row(LinearRow row) { rows.push_back(std::move(row)); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> values;       // basic feasible (vertex) solution
  Rational objective;                 // meaningful when Optimal
  std::vector<int> certificate_rows;  // rows still violated when Infeasible
};

/// Exact two-phase simplex with Bland's rule.  Returns a vertex of the
/// feasible region (optimal when an objective is present).
LpResult solve_lp(const LinearProgram& lp);

}  // namespace sts
