#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "sts/model.hpp"
#include "sts/schedule.hpp"

namespace sts::testing {

/// The rounded instance as a plain instance (sizes replaced by their rounding).
inline Instance rounded_copy(const RoundedInstance& ri) {
  Instance inst = ri.base;
  for (auto& j : inst.jobs) j.size = ri.rounded(j.id);
  return inst;
}

/// Brute-force time-constraint check by sampling every breakpoint of the
/// "jobs met by [a, a+1)" step function, plus midpoints between breakpoints.
inline bool window_oracle(const Schedule& s, int burst_limit) {
  std::vector<int> machines;
  for (const auto& a : s.assignments) machines.push_back(a.machine);
  std::sort(machines.begin(), machines.end());
  machines.erase(std::unique(machines.begin(), machines.end()), machines.end());
  for (int m : machines) {
    auto jobs = s.machine_jobs(m);
    std::vector<Rational> pts;
    for (const auto& j : jobs) {
      for (Rational p : {j.start, j.end(), Rational(j.start - 1), Rational(j.end() - 1)})
        if (p >= 0) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Rational> cands = pts;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
      cands.push_back((pts[i] + pts[i + 1]) / 2);
    for (const auto& a : cands) {
      int count = 0;
      for (const auto& j : jobs)
        if (j.start < a + 1 && j.end() > a) ++count;
      if (count > burst_limit) return false;
    }
  }
  return true;
}

}  // namespace sts::testing
