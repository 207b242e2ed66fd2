#include "sts/rounding.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "sts/lp.hpp"

namespace sts {

namespace {

bool is_integral(const Rational& x) { return denominator(x) == 1; }

/// Jobs of one class grouped by rounded size, ids sorted within a size.
std::map<Rational, std::vector<std::string>> by_size(
    const ClassifiedInstance& ci, JobClass c) {
  std::map<Rational, std::vector<std::string>> groups;
  for (const auto& id : ci.jobs_in_class(c))
    groups[ci.rounded.rounded(id)].push_back(id);
  return groups;
}

}  // namespace

std::vector<int> assign_flexible_greedy(const std::vector<Rational>& item_sizes,
                                        const std::vector<Rational>& budgets) {
  std::vector<int> where(item_sizes.size(), -1);
  size_t machine = 0;
  std::vector<Rational> used(budgets.size(), Rational(0));
  for (size_t i = 0; i < item_sizes.size(); ++i) {
    while (machine < budgets.size() &&
           used[machine] + item_sizes[i] > budgets[machine])
      ++machine;
    if (machine == budgets.size())
      throw std::logic_error("greedy assignment ran out of machines");
    used[machine] += item_sizes[i];
    where[i] = static_cast<int>(machine);
  }
  return where;
}

MachinePlan assign_rigid(const MilpSolution& sol, const Pool& pool,
                         const ClassifiedInstance& ci, const Eps& eps) {
  const Rational C = pool.c_nice;
  const Rational e2C = eps.eps2() * C;
  MachinePlan plan;
  plan.machines = ci.rounded.base.machines;

  for (size_t c = 0; c < sol.v.size(); ++c)
    for (long i = 0; i < sol.v[c]; ++i)
      plan.config_of_machine.push_back(static_cast<int>(c));
  if (static_cast<int>(plan.config_of_machine.size()) != plan.machines)
    throw std::logic_error("configuration count mismatch");

  // large jobs exactly into their per-size slots
  auto larges = by_size(ci, JobClass::Large);
  for (size_t l = 0; l < ci.large_sizes.size(); ++l) {
    const auto& ids = larges[ci.large_sizes[l]];
    size_t next = 0;
    for (int i = 0; i < plan.machines; ++i) {
      const Configuration& cfg =
          pool.configurations[plan.config_of_machine[i]];
      for (long s = 0; s < cfg.large_counts[l]; ++s) {
        if (next >= ids.size())
          throw std::logic_error("large job slot mismatch");
        plan.large_machine[ids[next++]] = i;
      }
    }
    if (next != ids.size()) throw std::logic_error("large job slot mismatch");
  }

  // container occurrences: long ones into rounded-load slots, short ones by
  // sequential first-fit against the beta budgets
  std::vector<std::vector<int>> long_by_class(pool.long_load_classes.size());
  std::vector<int> shorts;
  for (size_t t = 0; t < sol.w.size(); ++t)
    for (long i = 0; i < sol.w[t]; ++i) {
      ContainerOccurrence oc;
      oc.container = static_cast<int>(t);
      oc.load = pool.loads[t].load;
      plan.occurrences.push_back(oc);
      int o = static_cast<int>(plan.occurrences.size()) - 1;
      if (pool.loads[t].is_short) {
        shorts.push_back(o);
      } else {
        long l = pool.long_class_index(pool.loads[t].rounded_load);
        if (l < 0) throw std::logic_error("rounded load missing a class");
        long_by_class[l].push_back(o);
      }
    }
  for (size_t l = 0; l < long_by_class.size(); ++l) {
    size_t next = 0;
    for (int i = 0; i < plan.machines; ++i) {
      const Configuration& cfg =
          pool.configurations[plan.config_of_machine[i]];
      for (long s = 0; s < cfg.long_counts[l]; ++s) {
        if (next >= long_by_class[l].size())
          throw std::logic_error("long container slot mismatch");
        plan.occurrences[long_by_class[l][next++]].machine = i;
      }
    }
    if (next != long_by_class[l].size())
      throw std::logic_error("long container slot mismatch");
  }
  {
    std::vector<Rational> sizes, budgets;
    for (int o : shorts) sizes.push_back(plan.occurrences[o].load);
    for (int i = 0; i < plan.machines; ++i) {
      const Configuration& cfg =
          pool.configurations[plan.config_of_machine[i]];
      budgets.push_back(Rational(
          Rational((cfg.short_flag ? cfg.short_units : 0) + 1) * e2C +
          eps.value() * C));
    }
    auto where = assign_flexible_greedy(sizes, budgets);
    for (size_t s = 0; s < shorts.size(); ++s)
      plan.occurrences[shorts[s]].machine = where[s];
  }

  // medium jobs by the same greedy against the delta budgets
  {
    std::vector<std::string> ids = ci.jobs_in_class(JobClass::Medium);
    std::vector<Rational> sizes, budgets;
    for (const auto& id : ids) sizes.push_back(ci.rounded.rounded(id));
    for (int i = 0; i < plan.machines; ++i) {
      const Configuration& cfg =
          pool.configurations[plan.config_of_machine[i]];
      budgets.push_back(Rational(
          Rational((cfg.medium_flag ? cfg.medium_units : 0) + 1) * e2C +
          eps.value() * C));
    }
    auto where = assign_flexible_greedy(sizes, budgets);
    for (size_t j = 0; j < ids.size(); ++j)
      plan.medium_machine[ids[j]] = where[j];
  }

  plan.machine_occurrences.assign(plan.machines, {});
  for (size_t o = 0; o < plan.occurrences.size(); ++o) {
    if (plan.occurrences[o].machine < 0)
      throw std::logic_error("container occurrence left unassigned");
    plan.machine_occurrences[plan.occurrences[o].machine].push_back(
        static_cast<int>(o));
  }
  for (auto& list : plan.machine_occurrences)
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      const auto& oa = plan.occurrences[a];
      const auto& ob = plan.occurrences[b];
      if (oa.load != ob.load) return oa.load < ob.load;
      if (oa.container != ob.container) return oa.container < ob.container;
      return a < b;
    });
  return plan;
}

void assign_small_jobs(MachinePlan& plan, const Pool& pool,
                       const ClassifiedInstance& ci) {
  auto smalls = by_size(ci, JobClass::Small);
  for (size_t l = 0; l < pool.small_sizes.size(); ++l) {
    const auto& ids = smalls[pool.small_sizes[l]];
    size_t next = 0;
    for (size_t o = 0; o < plan.occurrences.size(); ++o) {
      const Container& t = pool.containers[plan.occurrences[o].container];
      for (size_t k = 0; k < t.blocks.size(); ++k)
        for (int s = 0; s < t.blocks[k].small_counts[l]; ++s) {
          if (next >= ids.size())
            throw std::logic_error("small job slot mismatch");
          plan.small_slot[ids[next++]] = {static_cast<int>(o),
                                          static_cast<int>(k)};
        }
    }
    if (next != ids.size()) throw std::logic_error("small job slot mismatch");
  }
}

std::vector<UniversalBlock> universal_blocks(const MachinePlan& plan,
                                             const Pool& pool,
                                             const MilpSolution& sol,
                                             const ClassifiedInstance& ci) {
  const long ntiny =
      static_cast<long>(ci.jobs_in_class(JobClass::Tiny).size());
  std::vector<UniversalBlock> blocks;
  for (size_t o = 0; o < plan.occurrences.size(); ++o) {
    int t = plan.occurrences[o].container;
    const Container& cont = pool.containers[t];
    for (size_t k = 0; k < cont.blocks.size(); ++k) {
      UniversalBlock u;
      u.occurrence = static_cast<int>(o);
      u.block = static_cast<int>(k);
      for (long j = 0; j < ntiny; ++j) {
        auto it = sol.y.find({static_cast<int>(j), t, static_cast<int>(k)});
        if (it != sol.y.end()) u.omega += it->second;
      }
      u.omega /= sol.w[t];
      blocks.push_back(std::move(u));
    }
  }
  return blocks;
}

void solve_omega_lp(std::vector<UniversalBlock>& blocks, const Pool& pool,
                    const MachinePlan& plan, const ClassifiedInstance& ci,
                    const Eps& eps, int burst_limit) {
  const long tiny_count =
      static_cast<long>(ci.jobs_in_class(JobClass::Tiny).size());
  LinearProgram lp;
  std::map<size_t, int> var_of;  // universal block index -> LP variable
  for (size_t u = 0; u < blocks.size(); ++u) {
    blocks[u].omega_cap = 0;
    if (blocks[u].omega > 0) {
      Rational fl(floor_rat(blocks[u].omega));
      var_of[u] = lp.add_var(fl, Rational(fl + 1));
    }
  }

  // burst-residual windows within each occurrence (truncated at its end)
  const long inv = eps.inv();
  std::map<std::pair<int, int>, size_t> index_of;  // (occurrence, block) -> u
  for (size_t u = 0; u < blocks.size(); ++u)
    index_of[{blocks[u].occurrence, blocks[u].block}] = u;
  for (size_t o = 0; o < plan.occurrences.size(); ++o) {
    const Container& t = pool.containers[plan.occurrences[o].container];
    const int nk = static_cast<int>(t.blocks.size());
    for (int i = 0; i < nk; ++i) {
      LinearRow row;
      long rhs = burst_limit - (t.blocks[i].carry_in ? 1 : 0);
      for (int k = i; k <= std::min(i + static_cast<int>(inv), nk - 1); ++k) {
        for (int c : t.blocks[k].small_counts) rhs -= c;
        auto it = var_of.find(index_of.at({static_cast<int>(o), k}));
        if (it != var_of.end()) row.coeffs[it->second] = 1;
      }
      if (row.coeffs.empty()) continue;
      row.sense = RowSense::Le;
      row.rhs = rhs;
      row.tag = "window";
      lp.add_row(std::move(row));
    }
  }
  {
    LinearRow row;
    for (const auto& [u, var] : var_of) row.coeffs[var] = 1;
    row.sense = RowSense::Eq;
    row.rhs = tiny_count;
    row.tag = "total";
    lp.add_row(std::move(row));
  }

  auto r = solve_lp(lp);
  if (r.status != LpStatus::Optimal)
    throw std::logic_error("capacity LP infeasible");
  for (const auto& [u, var] : var_of) {
    if (!is_integral(r.values[var])) throw std::logic_error("TU violation");
    blocks[u].omega_cap = floor_long(r.values[var]);
  }
}

TinyFractional repair_tiny_fractional(const TinyFractional& y,
                                      const std::vector<UniversalBlock>& blocks,
                                      long tiny_count) {
  TinyFractional yp;
  std::map<int, Rational> pool_y;       // job -> unassigned fraction
  std::map<int, Rational> block_count;  // block -> fractional cardinality

  for (const auto& [key, f] : y) {
    const auto& [j, u] = key;
    const UniversalBlock& b = blocks[u];
    if (b.omega == 0) {
      if (f != 0) throw std::logic_error("tiny fraction on an empty block");
      continue;
    }
    if (Rational(b.omega_cap) <= b.omega) {
      Rational scaled = f * b.omega_cap / b.omega;
      if (scaled > 0) yp[key] = scaled;
      pool_y[j] += f - scaled;
    } else {
      yp[key] = f;
    }
  }
  for (const auto& [key, f] : yp) block_count[key.second] += f;

  // fill the rounded-up blocks from the pool to exactly their capacity
  for (size_t u = 0; u < blocks.size(); ++u) {
    const UniversalBlock& b = blocks[u];
    if (!(Rational(b.omega_cap) > b.omega)) continue;
    Rational need = Rational(b.omega_cap) - block_count[u];
    for (auto& [j, rest] : pool_y) {
      if (need == 0) break;
      if (rest == 0) continue;
      Rational room = 1 - yp[{j, static_cast<int>(u)}];
      Rational add = std::min(std::min(rest, need), room);
      if (add <= 0) {
        if (yp[{j, static_cast<int>(u)}] == 0)
          yp.erase({j, static_cast<int>(u)});
        continue;
      }
      yp[{j, static_cast<int>(u)}] += add;
      rest -= add;
      need -= add;
    }
    if (need != 0) throw std::logic_error("tiny fraction pool does not fit");
  }
  for (const auto& [j, rest] : pool_y)
    if (rest != 0) throw std::logic_error("tiny fraction pool does not fit");

  // sanity: every tiny job remains fully assigned
  std::map<int, Rational> per_job;
  for (const auto& [key, f] : yp) per_job[key.first] += f;
  if (static_cast<long>(per_job.size()) != tiny_count)
    throw std::logic_error("tiny job lost during repair");
  for (const auto& [j, s] : per_job)
    if (s != 1) throw std::logic_error("tiny job lost during repair");
  return yp;
}

std::vector<int> best_fit_round(const std::vector<Rational>& sizes,
                                const std::vector<long>& caps,
                                const TinyFractional& y) {
  const int n = static_cast<int>(sizes.size());
  const int bins = static_cast<int>(caps.size());

  std::vector<Rational> row_sum(n, Rational(0));
  std::vector<Rational> col_sum(bins, Rational(0));
  std::vector<std::vector<std::pair<int, Rational>>> bin_jobs(bins);
  for (const auto& [key, f] : y) {
    const auto& [j, k] = key;
    if (j < 0 || j >= n || k < 0 || k >= bins || f < 0 || f > 1)
      throw std::invalid_argument("best fit precondition violated: bad entry");
    if (f == 0) continue;
    row_sum[j] += f;
    col_sum[k] += f;
    bin_jobs[k].push_back({j, f});
  }
  for (int j = 0; j < n; ++j)
    if (row_sum[j] != 1)
      throw std::invalid_argument("best fit precondition violated: job " +
                                  std::to_string(j));
  long total_caps = 0;
  for (int k = 0; k < bins; ++k) {
    if (col_sum[k] != caps[k])
      throw std::invalid_argument("best fit precondition violated: bin " +
                                  std::to_string(k));
    total_caps += caps[k];
  }
  if (total_caps != n)
    throw std::invalid_argument("best fit precondition violated: totals");

  // slot construction: per bin, jobs in non-increasing size fill caps[k]
  // unit-fraction slots in sequence; a job may straddle two slots
  struct Slot {
    int bin;
    std::vector<int> jobs;
  };
  std::vector<Slot> slots;
  std::vector<std::vector<int>> job_slots(n);
  for (int k = 0; k < bins; ++k) {
    auto jobs = bin_jobs[k];
    std::sort(jobs.begin(), jobs.end(),
              [&](const std::pair<int, Rational>& a,
                  const std::pair<int, Rational>& b) {
                if (sizes[a.first] != sizes[b.first])
                  return sizes[a.first] > sizes[b.first];
                return a.first < b.first;
              });
    if (caps[k] == 0) continue;
    int base = static_cast<int>(slots.size());
    for (long s = 0; s < caps[k]; ++s) slots.push_back({k, {}});
    Rational filled{0};  // total fraction placed in this bin so far
    for (const auto& [j, f] : jobs) {
      long s0 = floor_long(filled);
      filled += f;
      long s1 = is_integral(filled) ? floor_long(filled) - 1 : floor_long(filled);
      for (long s = s0; s <= s1; ++s) {
        slots[base + s].jobs.push_back(j);
        job_slots[j].push_back(base + static_cast<int>(s));
      }
    }
  }

  // perfect matching between jobs and slots (greedy, then augmenting paths);
  // one always exists because the slot fractions form a doubly stochastic
  // structure
  const int ns = static_cast<int>(slots.size());
  std::vector<int> slot_of_job(n, -1), job_of_slot(ns, -1);
  for (int s = 0; s < ns; ++s)
    for (int j : slots[s].jobs)
      if (slot_of_job[j] < 0 && job_of_slot[s] < 0) {
        slot_of_job[j] = s;
        job_of_slot[s] = j;
        break;
      }
  std::vector<int> seen(ns, -1);
  std::function<bool(int, int)> augment = [&](int j, int stamp) {
    for (int s : job_slots[j]) {
      if (seen[s] == stamp) continue;
      seen[s] = stamp;
      if (job_of_slot[s] < 0 || augment(job_of_slot[s], stamp)) {
        job_of_slot[s] = j;
        slot_of_job[j] = s;
        return true;
      }
    }
    return false;
  };
  for (int j = 0; j < n; ++j)
    if (slot_of_job[j] < 0 && !augment(j, j))
      throw std::logic_error("best fit matching failed");

  std::vector<int> out(n, -1);
  for (int j = 0; j < n; ++j) out[j] = slots[slot_of_job[j]].bin;

  // the lemma's bound: per-bin size at most fractional load plus the largest
  Rational pmax{0};
  for (const auto& s : sizes) pmax = std::max(pmax, s);
  std::vector<Rational> load(bins, Rational(0)), frac(bins, Rational(0));
  for (int j = 0; j < n; ++j) load[out[j]] += sizes[j];
  for (const auto& [key, f] : y) frac[key.second] += f * sizes[key.first];
  for (int k = 0; k < bins; ++k)
    if (load[k] > frac[k] + pmax)
      throw std::logic_error("best fit bound violated");
  return out;
}

Schedule materialize_schedule(const MachinePlan& plan, const Pool& pool,
                              const ClassifiedInstance& ci, const Eps& eps,
                              int burst_limit) {
  const Rational e = eps.value();
  const Rational e2 = eps.eps2();
  const Rational C = ci.cmax_guess;

  // per (occurrence, block) job lists
  std::map<std::pair<int, int>, std::vector<std::string>> smalls, tinies;
  for (const auto& [id, slot] : plan.small_slot) smalls[slot].push_back(id);
  for (const auto& [id, slot] : plan.tiny_slot) tinies[slot].push_back(id);
  for (auto& [slot, ids] : smalls)
    std::sort(ids.begin(), ids.end(), [&](const auto& a, const auto& b) {
      const Rational& pa = ci.rounded.rounded(a);
      const Rational& pb = ci.rounded.rounded(b);
      if (pa != pb) return pa < pb;
      return a < b;
    });
  for (auto& [slot, ids] : tinies) std::sort(ids.begin(), ids.end());

  Schedule s;
  for (int i = 0; i < plan.machines; ++i) {
    Rational origin{0};
    Rational pos{0};
    for (int o : plan.machine_occurrences[i]) {
      const Container& t = pool.containers[plan.occurrences[o].container];
      pos = origin;
      for (size_t k = 0; k < t.blocks.size(); ++k) {
        Rational bs = origin + e * k;
        pos = std::max(pos, bs);
        pos += e2 * t.blocks[k].idle_units;
        auto ti = tinies.find({o, static_cast<int>(k)});
        if (ti != tinies.end())
          for (const auto& id : ti->second) {
            const Rational& p = ci.rounded.rounded(id);
            s.assignments.push_back({id, i, pos, p});
            pos += p;
          }
        auto si = smalls.find({o, static_cast<int>(k)});
        if (si != smalls.end())
          for (const auto& id : si->second) {
            const Rational& p = ci.rounded.rounded(id);
            s.assignments.push_back({id, i, pos, p});
            pos += p;
          }
      }
      origin = e * Rational(ceil_rat(Rational(pos / e))) + 1;  // unit idle
    }

    std::vector<std::string> rest;
    for (const auto& [id, m] : plan.medium_machine)
      if (m == i) rest.push_back(id);
    for (const auto& [id, m] : plan.large_machine)
      if (m == i) rest.push_back(id);
    std::sort(rest.begin(), rest.end(), [&](const auto& a, const auto& b) {
      const Rational& pa = ci.rounded.rounded(a);
      const Rational& pb = ci.rounded.rounded(b);
      if (pa != pb) return pa < pb;
      return a < b;
    });
    pos = plan.machine_occurrences[i].empty() ? Rational(0) : origin;
    for (const auto& id : rest) {
      const Rational& p = ci.rounded.rounded(id);
      s.assignments.push_back({id, i, pos, p});
      pos += p;
    }
  }

  auto v = check_time_constraint(s, burst_limit);
  if (!v)
    throw std::logic_error("rounded schedule violates the time constraint: " +
                           (v.witness ? *v.witness : std::string()));
  if (makespan(s) > Rational((1 + 10 * e) * C))
    throw std::logic_error("rounded schedule exceeds the makespan bound");
  return s;
}

Schedule round_milp_to_schedule(const MilpSolution& sol, const Pool& pool,
                                const ClassifiedInstance& ci, const Eps& eps,
                                int burst_limit) {
  MachinePlan plan = assign_rigid(sol, pool, ci, eps);
  assign_small_jobs(plan, pool, ci);

  auto tiny_ids = ci.jobs_in_class(JobClass::Tiny);
  if (!tiny_ids.empty()) {
    auto blocks = universal_blocks(plan, pool, sol, ci);
    solve_omega_lp(blocks, pool, plan, ci, eps, burst_limit);

    TinyFractional y;
    for (size_t u = 0; u < blocks.size(); ++u) {
      int t = plan.occurrences[blocks[u].occurrence].container;
      for (size_t j = 0; j < tiny_ids.size(); ++j) {
        auto it = sol.y.find({static_cast<int>(j), t, blocks[u].block});
        if (it != sol.y.end() && it->second != 0)
          y[{static_cast<int>(j), static_cast<int>(u)}] =
              it->second / sol.w[t];
      }
    }
    auto yp = repair_tiny_fractional(y, blocks,
                                     static_cast<long>(tiny_ids.size()));

    std::vector<Rational> sizes;
    for (const auto& id : tiny_ids) sizes.push_back(ci.rounded.rounded(id));
    std::vector<long> caps;
    for (const auto& b : blocks) caps.push_back(b.omega_cap);
    auto where = best_fit_round(sizes, caps, yp);
    for (size_t j = 0; j < tiny_ids.size(); ++j) {
      const UniversalBlock& b = blocks[where[j]];
      plan.tiny_slot[tiny_ids[j]] = {b.occurrence, b.block};
    }
  }
  return materialize_schedule(plan, pool, ci, eps, burst_limit);
}

}  // namespace sts
