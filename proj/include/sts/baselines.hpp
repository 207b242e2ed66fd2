#pragma once

#include <chrono>
#include <utility>

#include "sts/schedule.hpp"

namespace sts {

struct OracleCaps {
  int max_jobs = 8;
  int max_machines = 3;
  std::chrono::milliseconds time_budget{60000};
};

/// Earliest feasible start times for a fixed order of jobs on one machine:
/// s_1 = 0, s_i = max(end_{i-1}, end_{i-B} + 1).  Makespan-minimal for the
/// given order.
std::vector<Rational> earliest_start_times(const std::vector<Rational>& sizes,
                                           int burst_limit);

/// Jobs in input order, each placed at the earliest feasible finish over all
/// machines.
Schedule list_scheduling(const Instance& inst);

/// List scheduling after sorting jobs non-increasing by size (id tiebreak).
Schedule lpt(const Instance& inst);

/// Exact optimum by exhaustive search over job->machine partitions and
/// per-machine orders; start times from earliest_start_times.
std::pair<Schedule, Rational> brute_force_opt(const Instance& inst,
                                              const OracleCaps& caps = {});

}  // namespace sts
