#include "sts/containers.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace sts {

namespace {

bool has_job(const BlockVec& b) {
  if (b.tiny_flag) return true;
  for (int c : b.small_counts)
    if (c > 0) return true;
  return false;
}

bool content_free(const BlockVec& b) {
  return !has_job(b) && b.idle_units == 0 && b.tiny_units == 0;
}

}  // namespace

int Pool::container_index(const Container& t) const {
  auto it = std::lower_bound(containers.begin(), containers.end(), t);
  if (it == containers.end() || *it != t) return -1;
  return static_cast<int>(it - containers.begin());
}

int Pool::configuration_index(const Configuration& c) const {
  auto it = std::lower_bound(configurations.begin(), configurations.end(), c);
  if (it == configurations.end() || *it != c) return -1;
  return static_cast<int>(it - configurations.begin());
}

long Pool::long_class_index(const Rational& rounded_load) const {
  auto it = std::lower_bound(long_load_classes.begin(), long_load_classes.end(),
                             rounded_load);
  if (it == long_load_classes.end() || *it != rounded_load) return -1;
  return it - long_load_classes.begin();
}

ContainerLayout layout_container(const Container& t,
                                 const std::vector<Rational>& small_sizes,
                                 const Eps& eps) {
  ContainerLayout out;
  const Rational e = eps.value();
  const Rational e2 = eps.eps2();
  Rational cursor = 0;
  bool last_is_job = false;
  Rational last_job_start = 0;

  for (size_t k = 0; k < t.blocks.size(); ++k) {
    const BlockVec& b = t.blocks[k];
    Rational bs = e * static_cast<long>(k);
    out.in_process.push_back(last_is_job && last_job_start < bs && cursor > bs);

    Rational pos = std::max(cursor, bs);
    bool placed = false;
    if (b.idle_units > 0) {
      Rational len = e2 * b.idle_units;
      out.items.push_back({pos, len, static_cast<int>(k), false, false, -1});
      pos += len;
      placed = true;
      last_is_job = false;
    }
    if (b.tiny_flag && b.tiny_units > 0) {
      Rational len = e2 * b.tiny_units;
      out.items.push_back({pos, len, static_cast<int>(k), true, true, -1});
      last_is_job = true;
      last_job_start = pos;
      pos += len;
      placed = true;
    }
    for (size_t l = 0; l < b.small_counts.size(); ++l) {
      for (int rep = 0; rep < b.small_counts[l]; ++rep) {
        out.items.push_back({pos, small_sizes[l], static_cast<int>(k), true,
                             false, static_cast<int>(l)});
        last_is_job = true;
        last_job_start = pos;
        pos += small_sizes[l];
        placed = true;
      }
    }
    if (placed) cursor = pos;
  }
  out.content_end = cursor;
  return out;
}

bool container_feasible(const Container& t, const std::vector<Rational>& small_sizes,
                        const Eps& eps) {
  const long inv = eps.inv();
  if (static_cast<long>(t.blocks.size()) > inv * inv) return false;
  for (size_t k = 0; k < t.blocks.size(); ++k) {
    const BlockVec& b = t.blocks[k];
    if (b.small_counts.size() != small_sizes.size()) return false;
    for (int c : b.small_counts)
      if (c < 0) return false;
    if (b.tiny_units < 0 || b.tiny_units > inv) return false;
    if (b.idle_units < 0 || b.idle_units > inv) return false;
    if (!b.tiny_flag && b.tiny_units != 0) return false;
    if (k == 0 && b.carry_in) return false;  // containers begin after idle
  }

  auto layout = layout_container(t, small_sizes, eps);
  const Rational e = eps.value();
  for (size_t k = 0; k < t.blocks.size(); ++k)
    if (layout.in_process[k] && !t.blocks[k].carry_in) return false;
  std::vector<int> crossings(t.blocks.size(), 0);
  for (const auto& it : layout.items) {
    Rational be = e * (it.declared_block + 1);
    if (it.start >= be) return false;  // declared content must fit its block
    if (it.is_job && it.start + it.size > be) ++crossings[it.declared_block];
  }
  for (int c : crossings)
    if (c > 1) return false;
  return true;
}

ContainerLoad container_load(const Container& t, const std::vector<Rational>& small_sizes,
                             const Eps& eps, const Rational& c_nice) {
  const Rational e2 = eps.eps2();
  Rational load = 1;  // trailing unit idle
  for (const auto& b : t.blocks) {
    load += e2 * b.idle_units;
    load += e2 * b.tiny_units;
    for (size_t l = 0; l < b.small_counts.size(); ++l)
      load += small_sizes[l] * b.small_counts[l];
  }
  ContainerLoad out;
  out.load = load;
  out.rounded_load = eps.pow(eps.floor_log(load));
  out.is_short = load <= eps.value() * c_nice;
  return out;
}

Rational configuration_load(const Configuration& c, const Pool& pool,
                            const ClassifiedInstance& ci, const Eps& eps) {
  Rational unit = eps.eps2() * pool.c_nice;
  Rational load = unit * c.short_units + unit * c.medium_units;
  for (size_t l = 0; l < c.long_counts.size(); ++l)
    load += pool.long_load_classes[l] * c.long_counts[l];
  for (size_t l = 0; l < c.large_counts.size(); ++l)
    load += ci.large_sizes[l] * c.large_counts[l];
  return load;
}

bool configuration_feasible(const Configuration& c, const Pool& pool,
                            const ClassifiedInstance& ci, const Eps& eps) {
  if (c.long_counts.size() != pool.long_load_classes.size()) return false;
  if (c.large_counts.size() != ci.large_sizes.size()) return false;
  for (long v : c.long_counts)
    if (v < 0) return false;
  for (long v : c.large_counts)
    if (v < 0) return false;
  if (c.short_units < 0 || c.medium_units < 0) return false;
  if (c.short_units > 0 && !c.short_flag) return false;
  if (c.medium_units > 0 && !c.medium_flag) return false;

  Rational bound = std::max(Rational(pool.c_nice * eps.one_plus()), Rational(pool.c_nice + 1));
  if (configuration_load(c, pool, ci, eps) > bound) return false;

  if (pool.c_nice <= Rational(eps.inv())) {
    // One long container and nothing else in this regime.
    long total_long = 0;
    for (long v : c.long_counts) total_long += v;
    if (total_long != 1) return false;
    if (c.short_units != 0 || c.short_flag) return false;
    if (c.medium_units != 0 || c.medium_flag) return false;
    for (long v : c.large_counts)
      if (v != 0) return false;
  }
  return true;
}

Pool enumerate_containers(const ClassifiedInstance& ci, const Eps& eps,
                          const Rational& c_nice, const EnumCaps& caps) {
  Pool pool;
  pool.c_nice = c_nice;
  pool.small_sizes = ci.small_sizes;

  const Rational e = eps.value();
  const Rational e2 = eps.eps2();
  const long inv = eps.inv();
  int max_blocks = static_cast<int>(inv * inv);
  if (caps.max_blocks > 0 && caps.max_blocks < max_blocks)
    max_blocks = caps.max_blocks;
  const size_t ns = pool.small_sizes.size();

  std::vector<long> avail(ns, 0);
  for (size_t l = 0; l < ns; ++l)
    avail[l] = ci.count_of_size_in_class(pool.small_sizes[l], JobClass::Small);
  const long tiny_count =
      static_cast<long>(ci.jobs_in_class(JobClass::Tiny).size());
  const long tiny_budget = floor_long(ci.total_size_in_class(JobClass::Tiny) / e2);
  // A nice schedule never yields a container heavier than 2/eps + 1.
  const Rational content_cap = std::min(c_nice, Rational(2 * inv));

  std::vector<Container> out;
  // Necessary burst condition: over every truncated window of 1/eps + 1
  // blocks, declared small jobs, tiny presence, and the crossing-in job
  // already exceed B makes the container unusable in any schedule.
  const int burst = ci.rounded.base.burst_limit;
  auto violates_burst = [&](const Container& t) {
    const int nk = static_cast<int>(t.blocks.size());
    for (int i = 0; i < nk; ++i) {
      long cnt = t.blocks[i].carry_in ? 1 : 0;
      for (int k = i; k <= std::min<int>(i + static_cast<int>(inv), nk - 1);
           ++k) {
        for (int c : t.blocks[k].small_counts) cnt += c;
        if (t.blocks[k].tiny_flag) ++cnt;
      }
      if (cnt > burst) return true;
    }
    return false;
  };
  // Within one container, consecutive jobs are less than one time unit apart
  // in the schedule (a unit idle gap starts a new container).  Canonical
  // positions trail the real ones by at most the drift bound of 2*eps, so a
  // canonical gap of 1 + 2*eps or more is impossible to extract.
  const Rational gap_limit = Rational(1) + 2 * e;
  auto has_wide_gap = [&](const Container& t) {
    auto lay = layout_container(t, pool.small_sizes, eps);
    bool seen_job = false;
    Rational last_end{0};
    for (const auto& item : lay.items) {
      if (!item.is_job) continue;
      if (seen_job && item.start - last_end >= gap_limit) return true;
      last_end = item.start + item.size;
      seen_job = true;
    }
    return false;
  };
  auto push = [&](Container t) {
    if (violates_burst(t)) return;
    if (has_wide_gap(t)) return;
    out.push_back(std::move(t));
    if (static_cast<long>(out.size()) > caps.max_containers)
      throw std::runtime_error(
          "container explosion: raise caps or shrink ε-regime");
  };

  struct St {
    std::vector<BlockVec> blocks;
    Rational cursor{0};
    bool last_is_job = false;
    Rational last_job_start{0};
    Rational content{0};
    Rational drift{0};       // bound on how far canonical positions lag real ones
    Rational tail_drift{0};  // same bound for content ending in the last block
    std::vector<long> used_small;
    long used_tiny = 0;
    long used_flags = 0;
  };
  St st;
  st.used_small.assign(ns, 0);

  // Emitting a container appends the blocks a crossing-out last job still
  // covers (all-zero, carry_in set), as extraction from a schedule would.
  auto emit = [&](const St& s) {
    Container t{s.blocks};
    int k = static_cast<int>(t.blocks.size());
    auto append_carry = [&]() {
      BlockVec b;
      b.small_counts.assign(ns, 0);
      b.carry_in = true;
      t.blocks.push_back(b);
      ++k;
    };
    // blocks the canonical crossing certainly covers
    while (k < max_blocks && s.last_is_job && s.cursor > e * k) append_carry();
    push(t);
    // the real end of the last job may lag-cover further blocks
    while (k < max_blocks && s.last_is_job &&
           s.cursor + s.tail_drift > e * k) {
      append_carry();
      push(t);
    }
  };

  std::function<void(int, St&)> dfs = [&](int k, St& s) {
    // Ending here is valid only when the last block holds a job; pure-idle or
    // crossing-only tails are produced by emit() on shorter prefixes.
    if (s.blocks.empty() || has_job(s.blocks.back())) emit(s);
    if (k >= max_blocks) return;
    const Rational bs = e * k;
    const Rational be = e * (k + 1);

    if (s.cursor >= be) {
      // A job from an earlier block spans this whole block.
      if (s.last_is_job) {
        BlockVec b;
        b.small_counts.assign(ns, 0);
        b.carry_in = true;
        s.blocks.push_back(std::move(b));
        dfs(k + 1, s);
        s.blocks.pop_back();
      }
      return;
    }

    // A crossing into this block is certain when the canonical cursor passes
    // the block start, and still possible (in some realizing schedule) when
    // the cursor plus the drift bound passes it; in the latter case both
    // declarations are reachable, so branch on the P bit.
    const bool forced_carry = s.last_is_job && s.cursor > bs;
    const bool possible_carry =
        s.last_is_job && !forced_carry && s.cursor + s.drift > bs;
    const Rational pos0 = std::max(s.cursor, bs);

    auto finish_block = [&](BlockVec&& b0, const Rational& endpos, bool placed,
                            bool job_placed, const Rational& job_start,
                            const Rational& add_content, long add_tiny,
                            const std::vector<long>& add_small) {
      if (k == 0 && !has_job(b0)) return;  // containers start with a job
      for (int cv = 0; cv < 2; ++cv) {
        const bool carry = cv == 1;
        if (carry && !forced_carry && !possible_carry) continue;
        if (!carry && forced_carry) continue;
        if (content_free(b0) && !carry) continue;  // all-zero needs a crossing
        BlockVec b = b0;
        b.carry_in = carry;

        St next;
        next.blocks = s.blocks;
        next.blocks.push_back(std::move(b));
        next.cursor = placed ? endpos : s.cursor;
        next.last_is_job = job_placed || (!placed && s.last_is_job);
        next.last_job_start = job_placed ? job_start : s.last_job_start;
        next.content = s.content + add_content;
        next.used_small = s.used_small;
        for (size_t l = 0; l < ns; ++l) next.used_small[l] += add_small[l];
        next.used_tiny = s.used_tiny + add_tiny;
        next.used_flags = s.used_flags + (next.blocks.back().tiny_flag ? 1 : 0);

        // Any schedule realizing this prefix keeps its real position within
        // "drift" ahead of the canonical cursor; per block the gap grows by
        // strictly less than eps^2 for the idle floor plus eps^2 for the tiny
        // floor when tiny jobs start here.  A real non-final block is full, so
        // recursing deeper requires cursor + drift + loss to clear the block.
        Rational loss = next.blocks.back().tiny_flag ? e2 * 2 : e2;
        next.tail_drift = s.drift + loss;
        if (next.cursor + s.drift + loss > be) {
          if (next.cursor >= be)
            next.drift =
                next.cursor == be ? Rational(0) : Rational(s.drift + loss);
          else
            next.drift = std::min(Rational(s.drift + loss),
                                  Rational(be - next.cursor));
          dfs(k + 1, next);
        } else if (has_job(next.blocks.back())) {
          emit(next);
        }
      }
    };

    const long dmax = floor_long((be - pos0) / e2);
    for (long D = 0; D <= dmax; ++D) {
      Rational idle_len = e2 * D;
      if (s.content + idle_len > content_cap) break;
      Rational pos1 = pos0 + idle_len;

      long tmax = std::min(inv, tiny_budget + (k + 1) - s.used_tiny);
      bool may_flag = tiny_count > 0 && s.used_flags < tiny_count;
      for (int tf = 0; tf <= (may_flag ? 1 : 0); ++tf) {
        long thigh = tf ? std::max<long>(tmax, 0) : 0;
        for (long T = 0; T <= thigh; ++T) {
          Rational tiny_len = e2 * T;
          if (T > 0 && pos1 >= be) break;  // virtual tiny must start in-block
          Rational base_content = idle_len + tiny_len;
          if (s.content + base_content > content_cap) break;
          Rational pos2 = pos1 + tiny_len;
          bool tiny_job = tf == 1 && T > 0;

          // Small-job counts per size, non-decreasing sizes laid out in order.
          std::vector<int> counts(ns, 0);
          std::vector<long> add_small(ns, 0);
          std::function<void(size_t, Rational, Rational, bool, Rational)> gen2 =
              [&](size_t l, Rational pos, Rational ac, bool jp, Rational js) {
                if (l == ns) {
                  BlockVec b;
                  b.small_counts = counts;
                  b.tiny_units = static_cast<int>(T);
                  b.tiny_flag = tf == 1;
                  b.idle_units = static_cast<int>(D);
                  bool placed = D > 0 || tiny_job || jp;
                  finish_block(std::move(b), pos, placed, tiny_job || jp,
                               jp ? js : pos1, ac, T, add_small);
                  return;
                }
                const Rational& sz = pool.small_sizes[l];
                Rational p = pos;
                Rational acc = ac;
                counts[l] = 0;
                add_small[l] = 0;
                gen2(l + 1, p, acc, jp, js);
                for (long c = 1; c + s.used_small[l] <= avail[l]; ++c) {
                  if (p >= be) break;
                  Rational jstart = p;
                  p += sz;
                  acc += sz;
                  if (s.content + acc > content_cap) break;
                  counts[l] = static_cast<int>(c);
                  add_small[l] = c;
                  gen2(l + 1, p, acc, true, jstart);
                }
                counts[l] = 0;
                add_small[l] = 0;
              };
          gen2(0, pos2, base_content, false, Rational(0));
        }
      }
    }
  };
  dfs(0, st);

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (const auto& t : out) {
    if (!container_feasible(t, pool.small_sizes, eps))
      throw std::logic_error("enumerated container failed self-check");
    pool.loads.push_back(container_load(t, pool.small_sizes, eps, c_nice));
  }
  pool.containers = std::move(out);
  return pool;
}

void enumerate_configurations(Pool& pool, const ClassifiedInstance& ci,
                              const Eps& eps, const EnumCaps& caps) {
  pool.long_load_classes.clear();
  for (const auto& ld : pool.loads)
    if (!ld.is_short) pool.long_load_classes.push_back(ld.rounded_load);
  std::sort(pool.long_load_classes.begin(), pool.long_load_classes.end());
  pool.long_load_classes.erase(std::unique(pool.long_load_classes.begin(),
                                           pool.long_load_classes.end()),
                               pool.long_load_classes.end());

  const size_t nl = pool.long_load_classes.size();
  const size_t ng = ci.large_sizes.size();
  std::vector<Configuration> out;
  auto push = [&](Configuration c) {
    out.push_back(std::move(c));
    if (static_cast<long>(out.size()) > caps.max_configurations)
      throw std::runtime_error(
          "container explosion: raise caps or shrink ε-regime");
  };

  if (pool.c_nice <= Rational(eps.inv())) {
    // One long container per machine, nothing else.
    for (size_t l = 0; l < nl; ++l) {
      Configuration c;
      c.long_counts.assign(nl, 0);
      c.long_counts[l] = 1;
      c.large_counts.assign(ng, 0);
      push(std::move(c));
    }
  } else {
    const Rational bound =
        std::max(Rational(pool.c_nice * eps.one_plus()), Rational(pool.c_nice + 1));
    const Rational unit = eps.eps2() * pool.c_nice;
    Configuration cur;
    cur.long_counts.assign(nl, 0);
    cur.large_counts.assign(ng, 0);

    std::function<void(size_t, Rational)> gen_large = [&](size_t l,
                                                          Rational load) {
      if (l == ng) {
        long dmax = floor_long((bound - load) / unit);
        for (int df = 0; df <= 1; ++df) {
          cur.medium_flag = df == 1;
          long hi = df ? dmax : 0;
          for (long d = 0; d <= hi; ++d) {
            cur.medium_units = d;
            push(cur);
          }
        }
        cur.medium_units = 0;
        cur.medium_flag = false;
        return;
      }
      long cap = ci.count_of_size_in_class(ci.large_sizes[l], JobClass::Large);
      Rational ld = load;
      for (long c = 0; c <= cap && ld <= bound; ++c) {
        cur.large_counts[l] = c;
        gen_large(l + 1, ld);
        ld += ci.large_sizes[l];
      }
      cur.large_counts[l] = 0;
    };
    std::function<void(Rational)> gen_short = [&](Rational load) {
      long bmax = floor_long((bound - load) / unit);
      for (int bf = 0; bf <= 1; ++bf) {
        cur.short_flag = bf == 1;
        long hi = bf ? bmax : 0;
        for (long b = 0; b <= hi; ++b) {
          cur.short_units = b;
          gen_large(0, load + unit * b);
        }
      }
      cur.short_units = 0;
      cur.short_flag = false;
    };
    std::function<void(size_t, Rational)> gen_long = [&](size_t l,
                                                         Rational load) {
      if (l == nl) {
        gen_short(load);
        return;
      }
      Rational ld = load;
      for (long a = 0; ld <= bound; ++a) {
        cur.long_counts[l] = a;
        gen_long(l + 1, ld);
        ld += pool.long_load_classes[l];
      }
      cur.long_counts[l] = 0;
    };
    gen_long(0, Rational(0));
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (const auto& c : out)
    if (!configuration_feasible(c, pool, ci, eps))
      throw std::logic_error("enumerated configuration failed self-check");
  pool.configurations = std::move(out);
}

}  // namespace sts
