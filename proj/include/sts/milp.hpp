#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sts/containers.hpp"
#include "sts/lp.hpp"
#include "sts/schedule.hpp"

namespace sts {

/// The feasibility MILP over (v, w, x, y, z): configuration counters v_c and
/// container counters w_t, container-to-configuration assignments z_ct (all
/// integral), plus fractional tiny-job assignments y_{jkt} and medium-job
/// assignments x_{jc}.
struct MilpModel {
  LinearProgram lp;
  std::vector<int> integral_vars;  // v, w, z variable ids

  std::vector<int> v_var;  // parallel to pool.configurations
  std::vector<int> w_var;  // parallel to pool.containers
  std::map<std::pair<int, int>, int> z_var;  // (config c, container t) -> id

  std::vector<std::string> tiny_ids;    // sorted job ids
  std::vector<std::string> medium_ids;  // sorted job ids
  // (tiny index j, container t, block k) -> id; only blocks k in K_t exist
  std::map<std::tuple<int, int, int>, int> y_var;
  std::map<std::pair<int, int>, int> x_var;  // (medium index j, config c) -> id
};

struct MilpSolution {
  std::vector<long> v;                       // per configuration
  std::vector<long> w;                       // per container
  std::map<std::pair<int, int>, long> z;     // (c, t)
  std::map<std::pair<int, int>, Rational> x;            // (medium j, c)
  std::map<std::tuple<int, int, int>, Rational> y;      // (tiny j, t, k)
};

struct MilpBudget {
  long max_nodes = 200000;  // LP relaxations solved during branch-and-bound
};

/// Rows are tagged "eq1".."eq12" after their constraint family; variable
/// bounds carry the box constraints.
MilpModel build_milp(const ClassifiedInstance& ci, const Pool& pool,
                     const Eps& eps, int burst_limit, int machines);

/// Depth-first branch-and-bound on the integral variables with exact LP
/// relaxations and most-fractional branching; feasibility only.  Returns the
/// first solution whose (v, w, z) are integral, or nothing if the search
/// space is exhausted.  Throws "solver budget exceeded" when the node budget
/// runs out before either outcome.
std::optional<MilpSolution> solve_milp(const MilpModel& model,
                                       const MilpBudget& budget = {});

/// Exact re-check of every row and the integrality/box requirements.
Verdict verify_milp_solution(const MilpModel& model, const MilpSolution& sol);

/// Plain-text rendering of the model with row tags (--dump-milp).
std::string format_milp(const MilpModel& model);

}  // namespace sts
