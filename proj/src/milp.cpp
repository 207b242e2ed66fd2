#include "sts/milp.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace sts {

namespace {

void add_coeff(LinearRow& row, int var, const Rational& c) {
  if (c == 0) return;
  row.coeffs[var] += c;
  if (row.coeffs[var] == 0) row.coeffs.erase(var);
}

bool is_integral(const Rational& x) { return denominator(x) == 1; }

}  // namespace

MilpModel build_milp(const ClassifiedInstance& ci, const Pool& pool,
                     const Eps& eps, int burst_limit, int machines) {
  MilpModel model;
  LinearProgram& lp = model.lp;
  const Rational C = pool.c_nice;
  const Rational e2 = eps.eps2();
  const long inv = eps.inv();
  const int nt = static_cast<int>(pool.containers.size());
  const int nc = static_cast<int>(pool.configurations.size());

  // Containers per machine never exceed the configuration load bound divided
  // by the unit minimum container load.
  const Rational span = std::max(Rational(C * eps.one_plus()), Rational(C + 1));
  const long cap_per_machine = floor_long(span) + 1;

  // only v carries explicit upper bounds: the rest are implied by rows
  // ((7)/(8)/(10) bound w and z through v <= m, the assignment equalities
  // (1)/(4) bound y and x by 1), and explicit bounds on the large grids would
  // blow up the simplex tableau
  for (int c = 0; c < nc; ++c)
    model.v_var.push_back(lp.add_var(Rational(0), Rational(machines)));
  for (int t = 0; t < nt; ++t) model.w_var.push_back(lp.add_var());
  // z only matters for the short-container budget (9): long containers are
  // already tied to configurations per rounded-load class by (10), so the
  // grid is restricted to short containers to keep the model small
  for (int c = 0; c < nc; ++c)
    for (int t = 0; t < nt; ++t)
      if (pool.loads[t].is_short)
        model.z_var[{c, t}] = lp.add_var();
  model.integral_vars.assign(model.v_var.begin(), model.v_var.end());
  model.integral_vars.insert(model.integral_vars.end(), model.w_var.begin(),
                             model.w_var.end());
  for (const auto& [key, id] : model.z_var) model.integral_vars.push_back(id);

  model.tiny_ids = ci.jobs_in_class(JobClass::Tiny);
  model.medium_ids = ci.jobs_in_class(JobClass::Medium);
  const int ntiny = static_cast<int>(model.tiny_ids.size());
  const int nmed = static_cast<int>(model.medium_ids.size());
  for (int j = 0; j < ntiny; ++j)
    for (int t = 0; t < nt; ++t)
      for (int k = 0; k < static_cast<int>(pool.containers[t].blocks.size()); ++k)
        model.y_var[{j, t, k}] = lp.add_var();
  for (int j = 0; j < nmed; ++j)
    for (int c = 0; c < nc; ++c)
      model.x_var[{j, c}] = lp.add_var();

  // (1) every tiny job starts in exactly one block of one container copy
  for (int j = 0; j < ntiny; ++j) {
    LinearRow row;
    for (int t = 0; t < nt; ++t)
      for (int k = 0; k < static_cast<int>(pool.containers[t].blocks.size()); ++k)
        add_coeff(row, model.y_var.at({j, t, k}), Rational(1));
    row.sense = RowSense::Eq;
    row.rhs = 1;
    row.tag = "eq1";
    lp.add_row(std::move(row));
  }

  // (2) tiny load per block within the declared budget of the copies
  for (int t = 0; t < nt; ++t) {
    const auto& blocks = pool.containers[t].blocks;
    for (int k = 0; k < static_cast<int>(blocks.size()); ++k) {
      if (ntiny == 0) break;
      LinearRow row;
      for (int j = 0; j < ntiny; ++j)
        add_coeff(row, model.y_var.at({j, t, k}),
                  ci.rounded.rounded(model.tiny_ids[j]));
      if (blocks[k].tiny_flag)
        add_coeff(row, model.w_var[t],
                  Rational(-(blocks[k].tiny_units + 1)) * e2);
      row.sense = RowSense::Le;
      row.rhs = 0;
      row.tag = "eq2";
      lp.add_row(std::move(row));
    }
  }

  // (3) exact slot counts for every small size
  for (size_t l = 0; l < pool.small_sizes.size(); ++l) {
    LinearRow row;
    for (int t = 0; t < nt; ++t) {
      long slots = 0;
      for (const auto& b : pool.containers[t].blocks)
        slots += b.small_counts[l];
      add_coeff(row, model.w_var[t], Rational(slots));
    }
    row.sense = RowSense::Eq;
    row.rhs = ci.count_of_size_in_class(pool.small_sizes[l], JobClass::Small);
    row.tag = "eq3";
    lp.add_row(std::move(row));
  }

  // (4) every medium job on exactly one configuration copy
  for (int j = 0; j < nmed; ++j) {
    LinearRow row;
    for (int c = 0; c < nc; ++c)
      add_coeff(row, model.x_var.at({j, c}), Rational(1));
    row.sense = RowSense::Eq;
    row.rhs = 1;
    row.tag = "eq4";
    lp.add_row(std::move(row));
  }

  // (5) medium load within the configuration budget
  for (int c = 0; c < nc; ++c) {
    if (nmed == 0) break;
    const Configuration& cfg = pool.configurations[c];
    LinearRow row;
    for (int j = 0; j < nmed; ++j)
      add_coeff(row, model.x_var.at({j, c}),
                ci.rounded.rounded(model.medium_ids[j]));
    if (cfg.medium_flag)
      add_coeff(row, model.v_var[c],
                Rational(-(cfg.medium_units + 1)) * e2 * C);
    row.sense = RowSense::Le;
    row.rhs = 0;
    row.tag = "eq5";
    lp.add_row(std::move(row));
  }

  // (6) exact slot counts for every large size
  for (size_t l = 0; l < ci.large_sizes.size(); ++l) {
    LinearRow row;
    for (int c = 0; c < nc; ++c)
      add_coeff(row, model.v_var[c],
                Rational(pool.configurations[c].large_counts[l]));
    row.sense = RowSense::Eq;
    row.rhs = ci.count_of_size_in_class(ci.large_sizes[l], JobClass::Large);
    row.tag = "eq6";
    lp.add_row(std::move(row));
  }

  // (7) short-container copies all land in configurations
  for (int t = 0; t < nt; ++t) {
    if (!pool.loads[t].is_short) continue;
    LinearRow row;
    for (int c = 0; c < nc; ++c)
      add_coeff(row, model.z_var.at({c, t}), Rational(1));
    add_coeff(row, model.w_var[t], Rational(-1));
    row.sense = RowSense::Eq;
    row.rhs = 0;
    row.tag = "eq7";
    lp.add_row(std::move(row));
  }

  // (8) unchosen configurations receive no containers
  for (int c = 0; c < nc; ++c)
    for (int t = 0; t < nt; ++t) {
      if (!pool.loads[t].is_short) continue;
      LinearRow row;
      add_coeff(row, model.z_var.at({c, t}), Rational(1));
      add_coeff(row, model.v_var[c], Rational(-cap_per_machine));
      row.sense = RowSense::Le;
      row.rhs = 0;
      row.tag = "eq8";
      lp.add_row(std::move(row));
    }

  // (9) short-container load within the configuration budget
  for (int c = 0; c < nc; ++c) {
    const Configuration& cfg = pool.configurations[c];
    LinearRow row;
    bool any_short = false;
    for (int t = 0; t < nt; ++t)
      if (pool.loads[t].is_short) {
        add_coeff(row, model.z_var.at({c, t}), pool.loads[t].load);
        any_short = true;
      }
    if (!any_short) continue;
    if (cfg.short_flag)
      add_coeff(row, model.v_var[c],
                Rational(-(cfg.short_units + 1)) * e2 * C);
    row.sense = RowSense::Le;
    row.rhs = 0;
    row.tag = "eq9";
    lp.add_row(std::move(row));
  }

  // (10) long containers of each rounded load match their slots
  for (size_t l = 0; l < pool.long_load_classes.size(); ++l) {
    LinearRow row;
    for (int t = 0; t < nt; ++t)
      if (!pool.loads[t].is_short &&
          pool.loads[t].rounded_load == pool.long_load_classes[l])
        add_coeff(row, model.w_var[t], Rational(1));
    for (int c = 0; c < nc; ++c)
      add_coeff(row, model.v_var[c],
                Rational(-pool.configurations[c].long_counts[l]));
    row.sense = RowSense::Eq;
    row.rhs = 0;
    row.tag = "eq10";
    lp.add_row(std::move(row));
  }

  // (11) average burst constraints over windows of 1/eps + 1 blocks; windows
  // are truncated at the container end so that short containers and the last
  // blocks are covered as well (any nice schedule still satisfies them, as
  // the truncated window is a subset of a real unit-plus-eps window)
  // (without tiny jobs the rows reduce to the per-window burst check already
  // enforced during container enumeration, so they are omitted)
  for (int t = 0; t < nt && ntiny > 0; ++t) {
    const auto& blocks = pool.containers[t].blocks;
    const int nk = static_cast<int>(blocks.size());
    for (int i = 0; i < nk; ++i) {
      LinearRow row;
      Rational wcoef = blocks[i].carry_in ? Rational(1 - burst_limit)
                                          : Rational(-burst_limit);
      for (int k = i; k <= std::min(i + static_cast<int>(inv), nk - 1); ++k) {
        long smalls = 0;
        for (int cnt : blocks[k].small_counts) smalls += cnt;
        wcoef += smalls;
        for (int j = 0; j < ntiny; ++j)
          add_coeff(row, model.y_var.at({j, t, k}), Rational(1));
      }
      add_coeff(row, model.w_var[t], wcoef);
      row.sense = RowSense::Le;
      row.rhs = 0;
      row.tag = "eq11";
      lp.add_row(std::move(row));
    }
  }

  // (12) one configuration per machine
  {
    LinearRow row;
    for (int c = 0; c < nc; ++c) add_coeff(row, model.v_var[c], Rational(1));
    row.sense = RowSense::Eq;
    row.rhs = machines;
    row.tag = "eq12";
    lp.add_row(std::move(row));
  }

  return model;
}

std::optional<MilpSolution> solve_milp(const MilpModel& model,
                                       const MilpBudget& budget) {
  LinearProgram lp = model.lp;
  long nodes = 0;

  std::function<std::optional<std::vector<Rational>>()> dfs =
      [&]() -> std::optional<std::vector<Rational>> {
    if (++nodes > budget.max_nodes)
      throw std::runtime_error("solver budget exceeded");
    // most-fractional branching over the integral variables; the LP result
    // is released before recursing so deep dives stay within memory
    int branch = -1;
    Rational x;
    {
      LpResult r = solve_lp(lp);
      if (r.status != LpStatus::Optimal) return std::nullopt;
      Rational best_dist{0};
      for (int id : model.integral_vars) {
        const Rational& v = r.values[id];
        if (is_integral(v)) continue;
        Rational frac = v - floor_rat(v);
        Rational dist = std::min(frac, Rational(1 - frac));
        if (branch < 0 || dist > best_dist) {
          branch = id;
          best_dist = dist;
        }
      }
      if (branch < 0) return std::move(r.values);
      x = r.values[branch];
    }
    Rational fl(floor_rat(x));
    bool up_first = x - fl >= Rational(1, 2);
    for (int side = 0; side < 2; ++side) {
      bool up = side == 0 ? up_first : !up_first;
      Rational save_lo = lp.lower[branch];
      auto save_hi = lp.upper[branch];
      if (up)
        lp.lower[branch] = fl + 1;
      else
        lp.upper[branch] = fl;
      if (lp.upper[branch] && lp.lower[branch] > *lp.upper[branch]) {
        lp.lower[branch] = save_lo;
        lp.upper[branch] = save_hi;
        continue;
      }
      auto sub = dfs();
      lp.lower[branch] = save_lo;
      lp.upper[branch] = save_hi;
      if (sub) return sub;
    }
    return std::nullopt;
  };

  auto vals = dfs();
  if (!vals) return std::nullopt;

  MilpSolution sol;
  for (int id : model.v_var) sol.v.push_back(floor_long((*vals)[id]));
  for (int id : model.w_var) sol.w.push_back(floor_long((*vals)[id]));
  for (const auto& [key, id] : model.z_var) sol.z[key] = floor_long((*vals)[id]);
  for (const auto& [key, id] : model.x_var)
    if ((*vals)[id] != 0) sol.x[key] = (*vals)[id];
  for (const auto& [key, id] : model.y_var)
    if ((*vals)[id] != 0) sol.y[key] = (*vals)[id];
  return sol;
}

Verdict verify_milp_solution(const MilpModel& model, const MilpSolution& sol) {
  const LinearProgram& lp = model.lp;
  std::vector<Rational> vals(lp.num_vars(), Rational(0));
  if (sol.v.size() != model.v_var.size() || sol.w.size() != model.w_var.size())
    return Verdict::fail("solution dimensions do not match the model");
  for (size_t i = 0; i < model.v_var.size(); ++i) {
    if (sol.v[i] < 0) return Verdict::fail("negative v");
    vals[model.v_var[i]] = sol.v[i];
  }
  for (size_t i = 0; i < model.w_var.size(); ++i) {
    if (sol.w[i] < 0) return Verdict::fail("negative w");
    vals[model.w_var[i]] = sol.w[i];
  }
  for (const auto& [key, z] : sol.z) {
    auto it = model.z_var.find(key);
    if (it == model.z_var.end()) return Verdict::fail("unknown z key");
    if (z < 0) return Verdict::fail("negative z");
    vals[it->second] = z;
  }
  for (const auto& [key, x] : sol.x) {
    auto it = model.x_var.find(key);
    if (it == model.x_var.end()) return Verdict::fail("unknown x key");
    vals[it->second] = x;
  }
  for (const auto& [key, y] : sol.y) {
    auto it = model.y_var.find(key);
    if (it == model.y_var.end()) return Verdict::fail("unknown y key");
    vals[it->second] = y;
  }

  for (int id = 0; id < lp.num_vars(); ++id) {
    if (vals[id] < lp.lower[id] || (lp.upper[id] && vals[id] > *lp.upper[id]))
      return Verdict::fail("variable out of bounds");
  }
  for (int id : model.integral_vars)
    if (!is_integral(vals[id])) return Verdict::fail("integrality violated");

  for (size_t r = 0; r < lp.rows.size(); ++r) {
    const LinearRow& row = lp.rows[r];
    Rational lhs{0};
    for (const auto& [id, c] : row.coeffs) lhs += c * vals[id];
    bool ok = row.sense == RowSense::Le   ? lhs <= row.rhs
              : row.sense == RowSense::Ge ? lhs >= row.rhs
                                          : lhs == row.rhs;
    if (!ok)
      return Verdict::fail("row " + std::to_string(r) + " (" + row.tag +
                           ") violated");
  }
  return Verdict::pass();
}

std::string format_milp(const MilpModel& model) {
  const LinearProgram& lp = model.lp;
  std::ostringstream out;
  out << "vars " << lp.num_vars() << " rows " << lp.rows.size() << "\n";
  for (int id = 0; id < lp.num_vars(); ++id) {
    out << "x" << id << " in [" << format_rational(lp.lower[id]) << ", "
        << (lp.upper[id] ? format_rational(*lp.upper[id]) : std::string("inf"))
        << "]";
    if (std::find(model.integral_vars.begin(), model.integral_vars.end(), id) !=
        model.integral_vars.end())
      out << " int";
    out << "\n";
  }
  for (const auto& row : lp.rows) {
    out << row.tag << ":";
    for (const auto& [id, c] : row.coeffs)
      out << " " << format_rational(c) << "*x" << id;
    out << (row.sense == RowSense::Le   ? " <= "
            : row.sense == RowSense::Ge ? " >= "
                                        : " = ")
        << format_rational(row.rhs) << "\n";
  }
  return out.str();
}

}  // namespace sts
