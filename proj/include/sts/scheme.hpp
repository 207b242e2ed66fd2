#pragma once

#include <optional>

#include "sts/milp.hpp"
#include "sts/schedule.hpp"

namespace sts {

struct EptasCaps {
  EptasCaps() {
    enum_caps.max_containers = 20000;
    enum_caps.max_configurations = 20000;
  }
  EnumCaps enum_caps;
  MilpBudget milp_budget;
  long max_model_vars = 20000;  // guesses beyond this are skipped
};

struct EptasResult {
  Schedule schedule;
  Rational guess;               // accepted C (0 for the sub-1 regime)
  bool used_small_case = false;
};

/// The sub-1 regime: balanced per-machine cardinalities, a min-max fractional
/// assignment LP, and best-fit rounding.  Returns nothing when the regime does
/// not apply (p_max >= 1 or n > B*m) or when the result fails validation with
/// makespan below 1, in which case the main guess loop takes over.
std::optional<Schedule> small_makespan_case(const Instance& inst,
                                            const Eps& eps);

/// The full approximation scheme: ascending guess grid, container and
/// configuration pools, the feasibility MILP, and the rounding pipeline.  The
/// first guess whose MILP is feasible within the caps wins.  Throws
/// "no guess admitted a solution" when every guess fails within the caps.
EptasResult eptas(const Instance& inst, const Eps& eps,
                  const EptasCaps& caps = {});

}  // namespace sts
