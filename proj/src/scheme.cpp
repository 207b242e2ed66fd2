#include "sts/scheme.hpp"

#include <algorithm>
#include <stdexcept>

#include "sts/extract.hpp"
#include "sts/lp.hpp"
#include "sts/rounding.hpp"

namespace sts {

std::optional<Schedule> small_makespan_case(const Instance& inst,
                                            const Eps& eps) {
  (void)eps;  // the regime is eps-free; kept for interface symmetry
  const int n = static_cast<int>(inst.jobs.size());
  const int m = inst.machines;
  if (n == 0) return Schedule{};
  Rational pmax{0};
  for (const auto& j : inst.jobs) pmax = std::max(pmax, j.size);
  if (pmax >= 1) return std::nullopt;
  if (n > inst.burst_limit * m) return std::nullopt;

  // balanced cardinalities; n <= B*m keeps every count within B
  std::vector<long> caps(m, n / m);
  for (int k = 0; k < n % m; ++k) ++caps[k];

  // min-max fractional assignment with those exact cardinalities
  LinearProgram lp;
  std::vector<std::vector<int>> var(n, std::vector<int>(m, -1));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < m; ++k) var[j][k] = lp.add_var(Rational(0), Rational(1));
  int t = lp.add_var();  // the makespan bound being minimized
  lp.objective[t] = 1;
  for (int j = 0; j < n; ++j) {
    LinearRow row;
    for (int k = 0; k < m; ++k) row.coeffs[var[j][k]] = 1;
    row.sense = RowSense::Eq;
    row.rhs = 1;
    row.tag = "job";
    lp.add_row(std::move(row));
  }
  for (int k = 0; k < m; ++k) {
    LinearRow count;
    for (int j = 0; j < n; ++j) count.coeffs[var[j][k]] = 1;
    count.sense = RowSense::Eq;
    count.rhs = caps[k];
    count.tag = "count";
    lp.add_row(std::move(count));
    LinearRow load;
    for (int j = 0; j < n; ++j) load.coeffs[var[j][k]] = inst.jobs[j].size;
    load.coeffs[t] = -1;
    load.sense = RowSense::Le;
    load.rhs = 0;
    load.tag = "load";
    lp.add_row(std::move(load));
  }
  auto r = solve_lp(lp);
  if (r.status != LpStatus::Optimal) return std::nullopt;

  std::vector<Rational> sizes;
  for (const auto& j : inst.jobs) sizes.push_back(j.size);
  TinyFractional y;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < m; ++k)
      if (r.values[var[j][k]] != 0) y[{j, k}] = r.values[var[j][k]];
  auto where = best_fit_round(sizes, caps, y);

  Schedule s;
  std::vector<Rational> pos(m, Rational(0));
  for (int j = 0; j < n; ++j) {
    s.assignments.push_back({inst.jobs[j].id, where[j], pos[where[j]],
                             inst.jobs[j].size});
    pos[where[j]] += inst.jobs[j].size;
  }
  if (!check_time_constraint(s, inst.burst_limit) || makespan(s) >= 1)
    return std::nullopt;
  return s;
}

EptasResult eptas(const Instance& inst, const Eps& eps,
                  const EptasCaps& caps) {
  inst.validate();
  if (inst.jobs.empty()) return {Schedule{}, Rational(0), false};

  RoundedInstance ri = round_instance(inst, eps);
  GuessGrid grid = makespan_guesses(ri, eps);

  if (grid.below_one_flag) {
    auto s = small_makespan_case(inst, eps);
    if (s) return {*s, Rational(0), true};
  }

  for (const Rational& guess : grid.values) {
    ClassifiedInstance ci = classify_jobs(ri, eps, guess);
    Pool pool;
    try {
      pool = enumerate_containers(ci, eps, guess, caps.enum_caps);
      enumerate_configurations(pool, ci, eps, caps.enum_caps);
    } catch (const std::runtime_error&) {
      continue;  // pool caps or block budget exceeded at this guess
    }
    // the variable grid grows with the pool; keep the exact solver honest
    long nshort = 0;
    for (const auto& l : pool.loads)
      if (l.is_short) ++nshort;
    long blocks = 0;
    for (const auto& t : pool.containers)
      blocks += static_cast<long>(t.blocks.size());
    const long ntiny =
        static_cast<long>(ci.jobs_in_class(JobClass::Tiny).size());
    const long nmed =
        static_cast<long>(ci.jobs_in_class(JobClass::Medium).size());
    const long nc = static_cast<long>(pool.configurations.size());
    const long vars = nc + static_cast<long>(pool.containers.size()) +
                      nshort * nc + ntiny * blocks + nmed * nc;
    if (vars > caps.max_model_vars) continue;

    MilpModel model =
        build_milp(ci, pool, eps, inst.burst_limit, inst.machines);
    std::optional<MilpSolution> sol;
    try {
      sol = solve_milp(model, caps.milp_budget);
    } catch (const std::runtime_error&) {
      continue;  // solver budget exceeded at this guess
    }
    if (!sol) continue;

    Schedule s = round_milp_to_schedule(*sol, pool, ci, eps, inst.burst_limit);
    // the pipeline schedules the rounded sizes; shrinking each job back to its
    // original size keeps starts, disjointness, and the time constraint
    for (auto& a : s.assignments)
      for (const auto& j : inst.jobs)
        if (j.id == a.id) {
          a.size = j.size;
          break;
        }
    auto v = check_time_constraint(s, inst.burst_limit);
    if (!v)
      throw std::logic_error("scheme output failed validation: " +
                             (v.witness ? *v.witness : std::string()));
    return {std::move(s), guess, false};
  }
  throw std::runtime_error("no guess admitted a solution");
}

}  // namespace sts
