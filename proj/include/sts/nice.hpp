#pragma once

#include "sts/schedule.hpp"

namespace sts {

/// Rounds every size up to its power of 1+eps and multiplies every start by
/// 1+eps: a feasible schedule of the rounded instance with makespan at most
/// 1+eps times the original.
Schedule stretch_schedule(const Schedule& s, const RoundedInstance& ri,
                          const Eps& eps);

/// Converts any feasible schedule into a nice one on the same machines,
/// inflating each machine load by at most a factor 1 + 17*eps.
Schedule to_nice(const Schedule& s, const ClassifiedInstance& ci,
                 const Eps& eps, int burst_limit);

}  // namespace sts
