#include "sts/gen.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace sts {

Instance random_instance(std::mt19937_64& rng, const GenConfig& cfg) {
  std::uniform_int_distribution<int> nj(cfg.min_jobs, cfg.max_jobs);
  std::uniform_int_distribution<int> nm(cfg.min_machines, cfg.max_machines);
  std::uniform_int_distribution<int> nb(cfg.min_burst, cfg.max_burst);
  std::uniform_int_distribution<long> units(1, cfg.max_units);
  Instance inst;
  inst.machines = nm(rng);
  inst.burst_limit = nb(rng);
  int n = nj(rng);
  for (int i = 0; i < n; ++i)
    inst.jobs.push_back({"j" + std::to_string(i), Rational(units(rng), cfg.denom)});
  return inst;
}

Schedule random_schedule(std::mt19937_64& rng, const Instance& inst,
                         long max_delay_units, long denom) {
  std::vector<size_t> order(inst.jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_int_distribution<int> pick(0, inst.machines - 1);
  std::uniform_int_distribution<long> delay(0, max_delay_units);

  std::vector<std::vector<Rational>> ends(inst.machines);
  Schedule out;
  for (size_t i : order) {
    int m = pick(rng);
    auto& e = ends[m];
    Rational s = 0;
    if (!e.empty()) s = e.back();
    if (e.size() >= static_cast<size_t>(inst.burst_limit))
      s = std::max(s, Rational(e[e.size() - inst.burst_limit] + 1));
    if (max_delay_units > 0) s += Rational(delay(rng), denom);
    e.push_back(s + inst.jobs[i].size);
    out.assignments.push_back({inst.jobs[i].id, m, s, inst.jobs[i].size});
  }
  return out;
}

}  // namespace sts
