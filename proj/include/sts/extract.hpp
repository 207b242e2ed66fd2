#pragma once

#include "sts/containers.hpp"
#include "sts/milp.hpp"
#include "sts/schedule.hpp"

namespace sts {

struct Extraction {
  Pool pool;        // full enumerated pool for the guess
  MilpSolution sol;  // indices refer into the pool
};

/// Reads a nice schedule back into MILP variables: cuts each machine's
/// tiny/small prefix into containers at unit idle gaps (the whole machine is
/// one container when the makespan guess is at most 1/eps), rounds the block
/// sub-vectors down, builds per-machine configurations, and counts copies.
/// The result satisfies every MILP row for the same pool.
Extraction extract_milp_solution(const Schedule& nice,
                                 const ClassifiedInstance& ci, const Eps& eps,
                                 int burst_limit, const EnumCaps& caps = {});

}  // namespace sts
