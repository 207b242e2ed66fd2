#include "sts/baselines.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace sts {

std::vector<Rational> earliest_start_times(const std::vector<Rational>& sizes,
                                           int burst_limit) {
  if (burst_limit < 2) throw std::invalid_argument("burst limit must be >= 2");
  std::vector<Rational> starts, ends;
  starts.reserve(sizes.size());
  ends.reserve(sizes.size());
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] <= 0) throw std::invalid_argument("job size must be positive");
    Rational s = 0;
    if (i > 0) s = ends[i - 1];
    if (i >= static_cast<size_t>(burst_limit))
      s = std::max(s, Rational(ends[i - burst_limit] + 1));
    starts.push_back(s);
    ends.push_back(s + sizes[i]);
  }
  return starts;
}

namespace {

struct MachineState {
  std::vector<Rational> ends;  // completion times in placement order
};

/// Earliest feasible start for appending one job to a machine's current order.
Rational next_start(const MachineState& m, int burst_limit) {
  Rational s = 0;
  if (!m.ends.empty()) s = m.ends.back();
  if (m.ends.size() >= static_cast<size_t>(burst_limit))
    s = std::max(s, Rational(m.ends[m.ends.size() - burst_limit] + 1));
  return s;
}

Schedule greedy_schedule(const Instance& inst, const std::vector<Job>& order) {
  std::vector<MachineState> machines(inst.machines);
  Schedule out;
  for (const auto& j : order) {
    int best = 0;
    Rational best_end;
    for (int i = 0; i < inst.machines; ++i) {
      Rational end = next_start(machines[i], inst.burst_limit) + j.size;
      if (i == 0 || end < best_end) {
        best = i;
        best_end = end;
      }
    }
    Rational s = next_start(machines[best], inst.burst_limit);
    machines[best].ends.push_back(s + j.size);
    out.assignments.push_back({j.id, best, s, j.size});
  }
  return out;
}

}  // namespace

Schedule list_scheduling(const Instance& inst) {
  inst.validate();
  return greedy_schedule(inst, inst.jobs);
}

Schedule lpt(const Instance& inst) {
  inst.validate();
  std::vector<Job> order = inst.jobs;
  std::sort(order.begin(), order.end(), [](const Job& a, const Job& b) {
    if (a.size != b.size) return a.size > b.size;
    return a.id < b.id;
  });
  return greedy_schedule(inst, order);
}

namespace {

/// Best makespan over all orders of one machine's job set, with the witness
/// order.  Start times for a fixed order come from earliest_start_times.
std::pair<std::vector<size_t>, Rational> best_machine_order(
    const std::vector<size_t>& set, const std::vector<Job>& jobs, int burst_limit) {
  std::vector<size_t> perm = set, best_perm = set;
  std::sort(perm.begin(), perm.end());
  bool first = true;
  Rational best;
  do {
    std::vector<Rational> sizes;
    for (size_t i : perm) sizes.push_back(jobs[i].size);
    auto starts = earliest_start_times(sizes, burst_limit);
    Rational ms = sizes.empty() ? Rational(0) : starts.back() + sizes.back();
    if (first || ms < best) {
      first = false;
      best = ms;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best_perm, best};
}

}  // namespace

std::pair<Schedule, Rational> brute_force_opt(const Instance& inst,
                                              const OracleCaps& caps) {
  inst.validate();
  size_t n = inst.jobs.size();
  if (n > static_cast<size_t>(caps.max_jobs) ||
      inst.machines > caps.max_machines)
    throw std::invalid_argument("instance too large for oracle");
  auto deadline = std::chrono::steady_clock::now() + caps.time_budget;

  std::vector<int> assign(n, 0);
  std::vector<std::vector<size_t>> best_sets;
  Rational best;
  bool found = false;

  // DFS over job->machine assignments; machines are identical, so job i only
  // opens machine min(i, used).
  auto evaluate = [&]() {
    std::vector<std::vector<size_t>> sets(inst.machines);
    for (size_t i = 0; i < n; ++i) sets[assign[i]].push_back(i);
    Rational ms = 0;
    for (const auto& set : sets) {
      auto [perm, m] = best_machine_order(set, inst.jobs, inst.burst_limit);
      ms = std::max(ms, m);
    }
    if (!found || ms < best) {
      found = true;
      best = ms;
      best_sets = sets;
    }
  };

  std::function<void(size_t, int)> dfs = [&](size_t i, int used) {
    if (std::chrono::steady_clock::now() > deadline)
      throw std::runtime_error("oracle time budget exceeded");
    if (i == n) {
      evaluate();
      return;
    }
    int limit = std::min(inst.machines - 1, used);
    for (int m = 0; m <= limit; ++m) {
      assign[i] = m;
      dfs(i + 1, std::max(used, m + 1));
    }
  };
  dfs(0, 0);

  Schedule witness;
  for (int m = 0; m < inst.machines; ++m) {
    auto [perm, ms] = best_machine_order(best_sets.empty() ? std::vector<size_t>{}
                                                           : best_sets[m],
                                         inst.jobs, inst.burst_limit);
    std::vector<Rational> sizes;
    for (size_t i : perm) sizes.push_back(inst.jobs[i].size);
    auto starts = earliest_start_times(sizes, inst.burst_limit);
    for (size_t p = 0; p < perm.size(); ++p)
      witness.assignments.push_back(
          {inst.jobs[perm[p]].id, m, starts[p], sizes[p]});
  }
  if (!found) return {Schedule{}, Rational(0)};
  return {witness, best};
}

}  // namespace sts
