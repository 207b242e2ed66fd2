#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sts/model.hpp"

namespace sts {

struct ScheduledJob {
  std::string id;
  int machine = 0;
  Rational start;  // >= 0
  Rational size;   // > 0

  Rational end() const { return start + size; }
};

/// A non-preemptive schedule: one (machine, start) per job, intervals
/// interior-disjoint per machine.
struct Schedule {
  std::vector<ScheduledJob> assignments;

  /// Jobs on one machine, sorted by start time.
  std::vector<ScheduledJob> machine_jobs(int machine) const;
};

struct Verdict {
  bool ok = true;
  std::optional<std::string> witness;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string w) { return {false, std::move(w)}; }
  explicit operator bool() const { return ok; }
};

/// One eps-block [k*eps, (k+1)*eps) of a machine's timeline.
struct EpsBlockView {
  int machine = 0;
  long block = 0;
  Rational window_start;
  Rational window_end;
  std::vector<std::string> starters;        // jobs starting inside, by start time
  std::optional<std::string> crossing_in;   // job processing at window_start
  Rational idle;                            // idle length inside the window
};

Rational makespan(const Schedule& s);

/// Time constraint: every unit window on every machine meets at most B jobs.
Verdict check_time_constraint(const Schedule& s, int burst_limit);

/// Modified time constraint: windows [t*eps, t*eps + 1 + eps) for integer t >= 0.
Verdict check_modified_time_constraint(const Schedule& s, int burst_limit,
                                       const Eps& eps);

/// The four niceness conditions (class order, block canonical form, unit gaps
/// between distant tiny/small starts, modified time constraint).
Verdict check_nice(const Schedule& s, const ClassifiedInstance& ci,
                   const Eps& eps, int burst_limit);

std::vector<EpsBlockView> eps_blocks(const Schedule& s, int machine, const Eps& eps);

/// Throws if two jobs on one machine overlap in an interior point.
void require_non_overlapping(const Schedule& s);

}  // namespace sts
