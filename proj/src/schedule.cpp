#include "sts/schedule.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace sts {

namespace {

std::map<int, std::vector<ScheduledJob>> by_machine(const Schedule& s) {
  std::map<int, std::vector<ScheduledJob>> m;
  for (const auto& a : s.assignments) m[a.machine].push_back(a);
  for (auto& [i, jobs] : m)
    std::sort(jobs.begin(), jobs.end(), [](const auto& a, const auto& b) {
      if (a.start != b.start) return a.start < b.start;
      return a.id < b.id;
    });
  return m;
}

void require_valid_machine(const std::vector<ScheduledJob>& jobs) {
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (jobs[i].start < 0) throw std::invalid_argument("not a schedule: negative start");
    if (i + 1 < jobs.size() && jobs[i + 1].start < jobs[i].end())
      throw std::invalid_argument("not a schedule: overlapping jobs on machine");
  }
}

Rational machine_load(const std::vector<ScheduledJob>& jobs) {
  Rational load = 0;
  for (const auto& j : jobs) load = std::max(load, j.end());
  return load;
}

}  // namespace

std::vector<ScheduledJob> Schedule::machine_jobs(int machine) const {
  std::vector<ScheduledJob> out;
  for (const auto& a : assignments)
    if (a.machine == machine) out.push_back(a);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.start != b.start) return a.start < b.start;
    return a.id < b.id;
  });
  return out;
}

void require_non_overlapping(const Schedule& s) {
  for (const auto& [i, jobs] : by_machine(s)) require_valid_machine(jobs);
}

Rational makespan(const Schedule& s) {
  Rational m = 0;
  for (const auto& a : s.assignments) m = std::max(m, a.end());
  return m;
}

Verdict check_time_constraint(const Schedule& s, int burst_limit) {
  // A unit window meeting more than B jobs must meet B+1 consecutive jobs on
  // one machine, which happens iff start(a+B) < end(a) + 1 for some a.
  for (const auto& [i, jobs] : by_machine(s)) {
    require_valid_machine(jobs);
    for (size_t a = 0; a + burst_limit < jobs.size(); ++a) {
      if (jobs[a + burst_limit].start < jobs[a].end() + 1)
        return Verdict::fail("machine " + std::to_string(i) + ": jobs " +
                             jobs[a].id + ".." + jobs[a + burst_limit].id +
                             " share a unit window");
    }
  }
  return Verdict::pass();
}

Verdict check_modified_time_constraint(const Schedule& s, int burst_limit,
                                       const Eps& eps) {
  Rational e = eps.value();
  for (const auto& [i, jobs] : by_machine(s)) {
    require_valid_machine(jobs);
    Rational load = machine_load(jobs);
    for (long t = 0; Rational(t) * e < load; ++t) {
      Rational lo = Rational(t) * e;
      Rational hi = lo + 1 + e;
      int count = 0;
      for (const auto& j : jobs)
        if (j.start < hi && j.end() > lo) ++count;
      if (count > burst_limit)
        return Verdict::fail("machine " + std::to_string(i) + ": window [" +
                             format_rational(lo) + "," + format_rational(hi) +
                             ") meets " + std::to_string(count) + " jobs");
    }
  }
  return Verdict::pass();
}

std::vector<EpsBlockView> eps_blocks(const Schedule& s, int machine, const Eps& eps) {
  auto jobs = s.machine_jobs(machine);
  require_valid_machine(jobs);
  std::vector<EpsBlockView> out;
  Rational e = eps.value();
  Rational load = machine_load(jobs);
  if (load == 0) return out;
  long blocks = ceil_rat(load / e).convert_to<long>();
  for (long k = 0; k < blocks; ++k) {
    EpsBlockView v;
    v.machine = machine;
    v.block = k;
    v.window_start = Rational(k) * e;
    v.window_end = Rational(k + 1) * e;
    Rational busy = 0;
    for (const auto& j : jobs) {
      if (j.start >= v.window_start && j.start < v.window_end)
        v.starters.push_back(j.id);
      if (j.start < v.window_start && j.end() > v.window_start)
        v.crossing_in = j.id;
      Rational lo = std::max(j.start, v.window_start);
      Rational hi = std::min(j.end(), v.window_end);
      if (hi > lo) busy += hi - lo;
    }
    v.idle = e - busy;
    out.push_back(std::move(v));
  }
  return out;
}

Verdict check_nice(const Schedule& s, const ClassifiedInstance& ci,
                   const Eps& eps, int burst_limit) {
  Rational e = eps.value();
  Rational inv_eps(eps.inv());
  for (const auto& [i, jobs] : by_machine(s)) {
    require_valid_machine(jobs);

    // Condition 1: tiny/small, then medium, then large.
    int phase = 0;  // 0 = tiny/small, 1 = medium, 2 = large
    for (const auto& j : jobs) {
      JobClass c = ci.klass(j.id);
      int p = (c == JobClass::Medium) ? 1 : (c == JobClass::Large) ? 2 : 0;
      if (p < phase)
        return Verdict::fail("machine " + std::to_string(i) + ": job " + j.id +
                             " breaks the class order");
      phase = p;
    }

    // Condition 2: canonical eps-block layout.
    Rational load = machine_load(jobs);
    long blocks = load == 0 ? 0 : ceil_rat(load / e).convert_to<long>();
    for (long k = 0; k < blocks; ++k) {
      Rational bs = Rational(k) * e;
      Rational be = bs + e;
      const ScheduledJob* crossing = nullptr;
      std::vector<const ScheduledJob*> starters;
      for (const auto& j : jobs) {
        if (j.start < bs && j.end() > bs) crossing = &j;
        if (j.start >= bs && j.start < be) starters.push_back(&j);
      }
      if (starters.empty()) continue;
      Rational base = bs;
      if (crossing) base = crossing->end();
      if (starters.front()->start < base)
        return Verdict::fail("machine " + std::to_string(i) + ": block " +
                             std::to_string(k) + " has a starter inside the crossing job");
      for (size_t a = 0; a + 1 < starters.size(); ++a) {
        if (starters[a + 1]->start != starters[a]->end())
          return Verdict::fail("machine " + std::to_string(i) + ": block " +
                               std::to_string(k) + " starters are not back-to-back");
        if (starters[a + 1]->size < starters[a]->size)
          return Verdict::fail("machine " + std::to_string(i) + ": block " +
                               std::to_string(k) + " starters not in non-decreasing size");
      }
      const ScheduledJob* last = starters.back();
      if (last->end() < be && last->end() < load)
        return Verdict::fail("machine " + std::to_string(i) + ": block " +
                             std::to_string(k) + " has trailing idle after its starters");
    }

    // Condition 3: a unit of idle between tiny/small jobs whose starts are
    // >= 1/eps apart.  Medium and large jobs run back-to-back by design.
    for (size_t a = 0; a < jobs.size(); ++a) {
      JobClass ca = ci.klass(jobs[a].id);
      if (ca == JobClass::Medium || ca == JobClass::Large) continue;
      for (size_t b = a + 1; b < jobs.size(); ++b) {
        JobClass cb = ci.klass(jobs[b].id);
        if (cb == JobClass::Medium || cb == JobClass::Large) continue;
        if (jobs[b].start - jobs[a].start < inv_eps) continue;
        bool has_unit_gap = false;
        for (size_t g = a; g + 1 <= b; ++g) {
          if (jobs[g + 1].start - jobs[g].end() >= 1) {
            has_unit_gap = true;
            break;
          }
        }
        if (!has_unit_gap)
          return Verdict::fail("machine " + std::to_string(i) + ": jobs " +
                               jobs[a].id + " and " + jobs[b].id +
                               " start >= 1/eps apart with no unit idle between");
      }
    }
  }

  // Condition 4.
  Verdict mod = check_modified_time_constraint(s, burst_limit, eps);
  if (!mod.ok) return mod;
  return Verdict::pass();
}

}  // namespace sts
