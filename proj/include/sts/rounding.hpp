#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sts/containers.hpp"
#include "sts/milp.hpp"
#include "sts/schedule.hpp"

namespace sts {

/// One placed copy of a container on a machine.
struct ContainerOccurrence {
  int container = -1;  // pool index
  int machine = -1;
  Rational load;
};

/// An eps-block of one container occurrence, shared bookkeeping for the tiny
/// rounding: Omega is the fractional tiny count the MILP assigns to the block
/// per occurrence, omega_cap its integer capacity after the interval LP.
struct UniversalBlock {
  int occurrence = -1;
  int block = 0;
  Rational omega;
  long omega_cap = 0;
};

/// The per-machine build state between the rounding stages.
struct MachinePlan {
  int machines = 0;
  std::vector<int> config_of_machine;               // pool config indices
  std::vector<ContainerOccurrence> occurrences;
  std::vector<std::vector<int>> machine_occurrences;  // placement order
  std::map<std::string, int> large_machine;
  std::map<std::string, int> medium_machine;
  std::map<std::string, std::pair<int, int>> small_slot;  // (occurrence, block)
  std::map<std::string, std::pair<int, int>> tiny_slot;
};

/// Counted assignments: configurations to machines, large jobs to their size
/// slots, long containers to their rounded-load slots, plus the greedy
/// first-fit passes for medium jobs and short containers.
MachinePlan assign_rigid(const MilpSolution& sol, const Pool& pool,
                         const ClassifiedInstance& ci, const Eps& eps);

/// Sequential first-fit: items in the given order onto machines in order,
/// advancing to the next machine when the current item would overflow its
/// budget.  Throws when items remain after the last machine (which would
/// contradict the MILP budget rows).
std::vector<int> assign_flexible_greedy(const std::vector<Rational>& item_sizes,
                                        const std::vector<Rational>& budgets);

/// Small jobs into their exact per-size block slots.
void assign_small_jobs(MachinePlan& plan, const Pool& pool,
                       const ClassifiedInstance& ci);

/// The occupied universal blocks with their Omega values.
std::vector<UniversalBlock> universal_blocks(const MachinePlan& plan,
                                             const Pool& pool,
                                             const MilpSolution& sol,
                                             const ClassifiedInstance& ci);

/// Integer capacities Omega' via the interval LP: box floor(Omega)..+1 per
/// block, burst-residual rows per window within each occurrence, and total
/// capacity equal to the number of tiny jobs.  The constraint matrix has
/// consecutive ones, so the exact simplex vertex must be integral; a
/// fractional vertex raises "TU violation".
void solve_omega_lp(std::vector<UniversalBlock>& blocks, const Pool& pool,
                    const MachinePlan& plan, const ClassifiedInstance& ci,
                    const Eps& eps, int burst_limit);

/// Fractional tiny assignment per universal block keyed by (tiny index, block
/// index into the universal list).
using TinyFractional = std::map<std::pair<int, int>, Rational>;

/// Rescale rounded-down blocks, pool the leftover fractions, and pack them
/// into the rounded-up blocks so each block carries exactly omega_cap jobs
/// fractionally.  Per-block tiny size grows by less than eps^2.
TinyFractional repair_tiny_fractional(const TinyFractional& y,
                                      const std::vector<UniversalBlock>& blocks,
                                      long tiny_count);

/// Lemma-style rounding of a fractional assignment with integral per-bin
/// cardinalities: returns one bin per job with cardinalities met exactly and
/// per-bin size at most the fractional size plus the largest job.
std::vector<int> best_fit_round(const std::vector<Rational>& sizes,
                                const std::vector<long>& caps,
                                const TinyFractional& y);

/// Lays out every machine: containers in non-decreasing load from time 0,
/// each block canonical (idle, tiny jobs, then small jobs ascending) with
/// overflow pushing the suffix later, a unit idle after each container, then
/// medium and large jobs back to back in non-decreasing size.  Validates the
/// time constraint and the (1+10eps) makespan bound, throwing on failure.
Schedule materialize_schedule(const MachinePlan& plan, const Pool& pool,
                              const ClassifiedInstance& ci, const Eps& eps,
                              int burst_limit);

/// All stages in order.
Schedule round_milp_to_schedule(const MilpSolution& sol, const Pool& pool,
                                const ClassifiedInstance& ci, const Eps& eps,
                                int burst_limit);

}  // namespace sts
