#pragma once

#include <compare>
#include <vector>

#include "sts/model.hpp"

namespace sts {

/// Per-eps-block sub-vector of a container: small-job counts by size,
/// tiny load and presence, idle length (both in eps^2 units), and whether a
/// job crosses into the block.
struct BlockVec {
  std::vector<int> small_counts;  // aligned with the pool's small-size axis
  int tiny_units = 0;             // T:  tiny load lower bound / eps^2
  bool tiny_flag = false;         // T': some tiny job starts here
  int idle_units = 0;             // D:  idle lower bound / eps^2
  bool carry_in = false;          // P:  a job crosses into this block

  auto operator<=>(const BlockVec&) const = default;
};

struct Container {
  std::vector<BlockVec> blocks;

  bool empty() const { return blocks.empty(); }
  auto operator<=>(const Container&) const = default;
};

struct ContainerLoad {
  Rational load;          // L_t, includes the trailing unit idle
  Rational rounded_load;  // L'_t = (1+eps)^floor(log_{1+eps} L_t)
  bool is_short = false;  // load <= eps * C_nice
};

/// Per-machine summary: long containers by rounded load class, short-container
/// load budget, large-job counts, and medium-load budget.
struct Configuration {
  std::vector<long> long_counts;   // alpha, aligned with long_load_classes
  long short_units = 0;            // beta  (units of eps^2 * C_nice)
  bool short_flag = false;         // beta'
  std::vector<long> large_counts;  // gamma, aligned with ci.large_sizes
  long medium_units = 0;           // delta (units of eps^2 * C_nice)
  bool medium_flag = false;        // delta'

  auto operator<=>(const Configuration&) const = default;
};

struct Pool {
  Rational c_nice;
  std::vector<Rational> small_sizes;        // S-axis shared by all containers
  std::vector<Container> containers;        // canonical (lexicographic) order
  std::vector<ContainerLoad> loads;         // parallel to containers
  std::vector<Rational> long_load_classes;  // realized L' of long containers
  std::vector<Configuration> configurations;

  int container_index(const Container& t) const;      // -1 if absent
  int configuration_index(const Configuration&) const;
  long long_class_index(const Rational& rounded_load) const;
};

struct EnumCaps {
  long max_containers = 200000;
  long max_configurations = 100000;
  int max_blocks = 0;  // 0 = use (1/eps)^2
};

/// Canonical partial schedule of a container: sequential items (idle, virtual
/// tiny job, small jobs) laid out block by block.
struct ContainerLayout {
  struct Item {
    Rational start;
    Rational size;
    int declared_block = 0;
    bool is_job = false;          // false for idle
    bool is_virtual_tiny = false;
    int small_size_index = -1;    // into the pool's small-size axis
  };
  std::vector<Item> items;
  std::vector<bool> in_process;  // a job spans the start of block k
  Rational content_end;          // end of the last item
};

ContainerLayout layout_container(const Container& t,
                                 const std::vector<Rational>& small_sizes,
                                 const Eps& eps);

/// A container is feasible when its canonical layout has every constructed
/// crossing declared (P bit set) and at most one job of each block running
/// past the block's end.
bool container_feasible(const Container& t, const std::vector<Rational>& small_sizes,
                        const Eps& eps);

ContainerLoad container_load(const Container& t, const std::vector<Rational>& small_sizes,
                             const Eps& eps, const Rational& c_nice);

Rational configuration_load(const Configuration& c, const Pool& pool,
                            const ClassifiedInstance& ci, const Eps& eps);

bool configuration_feasible(const Configuration& c, const Pool& pool,
                            const ClassifiedInstance& ci, const Eps& eps);

/// All feasible containers under instance-induced pruning, in canonical order.
Pool enumerate_containers(const ClassifiedInstance& ci, const Eps& eps,
                          const Rational& c_nice, const EnumCaps& caps = {});

/// Fills pool.long_load_classes and pool.configurations.
void enumerate_configurations(Pool& pool, const ClassifiedInstance& ci,
                              const Eps& eps, const EnumCaps& caps = {});

}  // namespace sts
