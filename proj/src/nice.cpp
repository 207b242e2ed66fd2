#include "sts/nice.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace sts {

namespace {

using Timeline = std::vector<ScheduledJob>;  // one machine, sorted by start

Rational load_of(const Timeline& jobs) {
  Rational load = 0;
  for (const auto& j : jobs) load = std::max(load, j.end());
  return load;
}

void sort_by_start(Timeline& jobs) {
  std::sort(jobs.begin(), jobs.end(), [](const auto& a, const auto& b) {
    if (a.start != b.start) return a.start < b.start;
    return a.id < b.id;
  });
}

/// Applies a batch of idle insertions simultaneously: every job whose start
/// (in the coordinates before the batch) is >= an insertion point is pushed
/// later by that insertion's length.
void insert_idle(Timeline& jobs, const std::vector<std::pair<Rational, Rational>>& ins) {
  for (auto& j : jobs) {
    Rational shift = 0;
    for (const auto& [pos, amt] : ins)
      if (pos <= j.start) shift += amt;
    j.start += shift;
  }
  sort_by_start(jobs);
}

const ScheduledJob* job_processing_at(const Timeline& jobs, const Rational& t) {
  for (const auto& j : jobs)
    if (j.start < t && j.end() > t) return &j;
  return nullptr;
}

bool is_medium_or_large(const ClassifiedInstance& ci, const std::string& id) {
  JobClass c = ci.klass(id);
  return c == JobClass::Medium || c == JobClass::Large;
}

void transform_machine(Timeline& jobs, const ClassifiedInstance& ci, const Eps& eps) {
  if (jobs.empty()) return;
  Rational two_eps = 2 * eps.value();

  // Step 1: 2*eps of idle around every original integer point in time.
  {
    Rational load = load_of(jobs);
    std::vector<std::pair<Rational, Rational>> ins;
    for (long t = 1; Rational(t) < load; ++t) {
      if (const ScheduledJob* j = job_processing_at(jobs, Rational(t))) {
        ins.emplace_back(j->start, two_eps);
        ins.emplace_back(j->end(), two_eps);
      } else {
        ins.emplace_back(Rational(t), two_eps);
      }
    }
    insert_idle(jobs, ins);
  }

  // Step 2: two units of idle at the start and end of each medium/large job.
  {
    std::vector<std::pair<Rational, Rational>> ins;
    for (const auto& j : jobs) {
      if (is_medium_or_large(ci, j.id)) {
        ins.emplace_back(j.start, Rational(2));
        ins.emplace_back(j.end(), Rational(2));
      }
    }
    insert_idle(jobs, ins);
  }

  // Step 3: pull the medium and large jobs to the end of the machine, after a
  // unit of idle, in non-decreasing order of size.  The remainder is compacted
  // by exactly the extracted sizes, preserving its gaps.
  {
    Timeline extracted, rest;
    for (const auto& j : jobs)
      (is_medium_or_large(ci, j.id) ? extracted : rest).push_back(j);
    if (!extracted.empty()) {
      for (auto& j : rest) {
        Rational shift = 0;
        for (const auto& x : extracted)
          if (x.end() <= j.start) shift += x.size;
        j.start -= shift;
      }
      Rational cursor = load_of(rest) + 1;
      std::sort(extracted.begin(), extracted.end(), [](const auto& a, const auto& b) {
        if (a.size != b.size) return a.size < b.size;
        return a.id < b.id;
      });
      for (auto& x : extracted) {
        x.start = cursor;
        cursor += x.size;
      }
      jobs = std::move(rest);
      jobs.insert(jobs.end(), extracted.begin(), extracted.end());
      sort_by_start(jobs);
    }
  }

  // Step 4: two units of idle at every multiple of 1/eps (after the crossing
  // job's finish when one exists).
  {
    Rational load = load_of(jobs);
    Rational inv_eps(eps.inv());
    std::vector<std::pair<Rational, Rational>> ins;
    for (long q = 1; Rational(q) * inv_eps < load; ++q) {
      Rational t = Rational(q) * inv_eps;
      if (const ScheduledJob* j = job_processing_at(jobs, t))
        ins.emplace_back(j->end(), Rational(2));
      else
        ins.emplace_back(t, Rational(2));
    }
    insert_idle(jobs, ins);
  }

  // Step 5: per eps-block, consolidate idle to the block start (or to the
  // crossing job's completion) and run the starters back-to-back in
  // non-decreasing size.
  {
    Rational e = eps.value();
    Rational load = load_of(jobs);
    for (long k = 0; Rational(k) * e < load; ++k) {
      Rational bs = Rational(k) * e;
      Rational be = bs + e;
      const ScheduledJob* crossing = nullptr;
      std::vector<ScheduledJob*> starters;
      for (auto& j : jobs) {
        if (j.start < bs && j.end() > bs) crossing = &j;
        if (j.start >= bs && j.start < be) starters.push_back(&j);
      }
      if (starters.empty()) continue;
      Rational window_end = std::min(be, load);
      Rational busy = 0;
      for (const auto& j : jobs) {
        Rational lo = std::max(j.start, bs);
        Rational hi = std::min(j.end(), window_end);
        if (hi > lo) busy += hi - lo;
      }
      Rational idle = (window_end - bs) - busy;
      Rational cursor = crossing ? crossing->end() : bs;
      cursor += idle;
      std::sort(starters.begin(), starters.end(), [](const auto* a, const auto* b) {
        if (a->size != b->size) return a->size < b->size;
        return a->id < b->id;
      });
      for (auto* j : starters) {
        j->start = cursor;
        cursor += j->size;
      }
      sort_by_start(jobs);
    }
  }
}

}  // namespace

Schedule to_nice(const Schedule& s, const ClassifiedInstance& ci,
                 const Eps& eps, int burst_limit) {
  if (!check_time_constraint(s, burst_limit).ok)
    throw std::invalid_argument("input violates time constraint");

  std::map<int, Timeline> machines;
  for (const auto& a : s.assignments) machines[a.machine].push_back(a);

  Schedule out;
  for (auto& [i, jobs] : machines) {
    sort_by_start(jobs);
    transform_machine(jobs, ci, eps);
    out.assignments.insert(out.assignments.end(), jobs.begin(), jobs.end());
  }
  return out;
}

Schedule stretch_schedule(const Schedule& s, const RoundedInstance& ri,
                          const Eps& eps) {
  Schedule out;
  for (const auto& a : s.assignments)
    out.assignments.push_back({a.id, a.machine,
                               Rational(a.start * eps.one_plus()),
                               ri.rounded(a.id)});
  return out;
}

}  // namespace sts
