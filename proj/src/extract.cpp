#include "sts/extract.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace sts {

namespace {

long size_index(const std::vector<Rational>& sizes, const Rational& p) {
  auto it = std::lower_bound(sizes.begin(), sizes.end(), p);
  if (it == sizes.end() || *it != p)
    throw std::logic_error("job size missing from the size axis");
  return it - sizes.begin();
}

}  // namespace

Extraction extract_milp_solution(const Schedule& nice,
                                 const ClassifiedInstance& ci, const Eps& eps,
                                 int burst_limit, const EnumCaps& caps) {
  const Rational C = ci.cmax_guess;
  auto v = check_nice(nice, ci, eps, burst_limit);
  if (!v)
    throw std::invalid_argument("input schedule is not nice: " +
                                (v.witness ? *v.witness : std::string()));
  if (makespan(nice) > C)
    throw std::invalid_argument("schedule exceeds the makespan guess");

  Extraction out;
  out.pool = enumerate_containers(ci, eps, C, caps);
  enumerate_configurations(out.pool, ci, eps, caps);
  Pool& pool = out.pool;
  MilpSolution& sol = out.sol;
  sol.v.assign(pool.configurations.size(), 0);
  sol.w.assign(pool.containers.size(), 0);

  const Rational e = eps.value();
  const Rational e2 = eps.eps2();
  const long inv = eps.inv();
  const long max_blocks = caps.max_blocks > 0 ? caps.max_blocks : inv * inv;
  const bool one_container = C <= Rational(inv);

  auto tiny_ids = ci.jobs_in_class(JobClass::Tiny);
  auto medium_ids = ci.jobs_in_class(JobClass::Medium);
  auto index_of = [](const std::vector<std::string>& ids, const std::string& id) {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    return static_cast<int>(it - ids.begin());
  };

  const int machines = ci.rounded.base.machines;
  for (int i = 0; i < machines; ++i) {
    auto jobs = nice.machine_jobs(i);
    std::vector<ScheduledJob> prefix;  // tiny and small jobs, by start
    std::vector<ScheduledJob> rest;
    for (const auto& a : jobs) {
      JobClass k = ci.klass(a.id);
      (k == JobClass::Tiny || k == JobClass::Small ? prefix : rest).push_back(a);
    }

    // cut at unit idle gaps between consecutive tiny/small jobs
    std::vector<std::vector<ScheduledJob>> groups;
    for (const auto& a : prefix) {
      if (groups.empty() ||
          (!one_container && a.start - groups.back().back().end() >= 1))
        groups.emplace_back();
      groups.back().push_back(a);
    }

    std::vector<int> machine_containers;
    std::vector<std::pair<int, std::pair<int, int>>> tiny_marks;  // (j,(t,k))
    for (const auto& g : groups) {
      Rational origin = e * Rational(floor_rat(g.front().start / e));
      Rational content_end{origin};
      for (const auto& a : g) content_end = std::max(content_end, a.end());
      long nblocks = ceil_rat((content_end - origin) / e).convert_to<long>();
      if (nblocks > max_blocks)
        throw std::runtime_error("container exceeds the block budget");

      Container t;
      for (long k = 0; k < nblocks; ++k) {
        const Rational bs = origin + e * k;
        const Rational be = bs + e;
        BlockVec b;
        b.small_counts.assign(pool.small_sizes.size(), 0);
        Rational occupied{0}, tiny_total{0};
        for (const auto& a : g) {
          Rational lo = std::max(a.start, bs);
          Rational hi = std::min(a.end(), be);
          if (hi > lo) occupied += hi - lo;
          if (a.start < bs && a.end() > bs) b.carry_in = true;
          if (a.start >= bs && a.start < be) {
            if (ci.klass(a.id) == JobClass::Tiny) {
              tiny_total += a.size;
              b.tiny_flag = true;
            } else {
              ++b.small_counts[size_index(pool.small_sizes, a.size)];
            }
          }
        }
        Rational idle = std::min(be, content_end) - bs - occupied;
        if (idle < 0) idle = 0;
        b.idle_units = static_cast<int>(floor_long(idle / e2));
        b.tiny_units = static_cast<int>(floor_long(tiny_total / e2));
        t.blocks.push_back(std::move(b));
      }
      int ti = pool.container_index(t);
      if (ti < 0)
        throw std::logic_error("extracted container missing from the pool");
      machine_containers.push_back(ti);
      for (const auto& a : g)
        if (ci.klass(a.id) == JobClass::Tiny) {
          long k = floor_long((a.start - origin) / e);
          tiny_marks.push_back(
              {index_of(tiny_ids, a.id), {ti, static_cast<int>(k)}});
        }
    }
    // a machine with no tiny/small jobs still needs one (long) container in
    // the regime where a configuration is exactly one long container
    if (machine_containers.empty() && one_container) {
      int ti = pool.container_index(Container{});
      if (ti < 0)
        throw std::logic_error("extracted container missing from the pool");
      machine_containers.push_back(ti);
    }

    Configuration cfg;
    cfg.long_counts.assign(pool.long_load_classes.size(), 0);
    cfg.large_counts.assign(ci.large_sizes.size(), 0);
    Rational short_total{0}, medium_total{0};
    for (int ti : machine_containers) {
      const ContainerLoad& ld = pool.loads[ti];
      if (ld.is_short) {
        short_total += ld.load;
        cfg.short_flag = true;
      } else {
        long l = pool.long_class_index(ld.rounded_load);
        if (l < 0) throw std::logic_error("rounded load missing a class");
        ++cfg.long_counts[l];
      }
    }
    std::vector<int> machine_mediums;
    for (const auto& a : rest) {
      if (ci.klass(a.id) == JobClass::Large) {
        ++cfg.large_counts[size_index(ci.large_sizes, a.size)];
      } else {
        medium_total += a.size;
        cfg.medium_flag = true;
        machine_mediums.push_back(index_of(medium_ids, a.id));
      }
    }
    cfg.short_units = floor_long(short_total / (e2 * C));
    cfg.medium_units = floor_long(medium_total / (e2 * C));

    int cidx = pool.configuration_index(cfg);
    if (cidx < 0)
      throw std::logic_error("extracted configuration missing from the pool");
    ++sol.v[cidx];
    for (int ti : machine_containers) {
      ++sol.w[ti];
      if (pool.loads[ti].is_short) ++sol.z[{cidx, ti}];
    }
    for (int j : machine_mediums) sol.x[{j, cidx}] = 1;
    for (const auto& [j, tk] : tiny_marks) sol.y[{j, tk.first, tk.second}] = 1;
  }
  return out;
}

}  // namespace sts
