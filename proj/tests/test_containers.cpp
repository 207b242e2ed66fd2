#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "sts/containers.hpp"
#include "sts/gen.hpp"

using namespace sts;

namespace {

BlockVec blk(std::vector<int> smalls, int T, bool Tf, int D, bool P) {
  BlockVec b;
  b.small_counts = std::move(smalls);
  b.tiny_units = T;
  b.tiny_flag = Tf;
  b.idle_units = D;
  b.carry_in = P;
  return b;
}

ClassifiedInstance classify(const Instance& inst, const Eps& e, const Rational& guess) {
  return classify_jobs(round_instance(inst, e), e, guess);
}

}  // namespace

TEST_CASE("container load formula") {
  Eps e(4);
  std::vector<Rational> sizes{Rational(2)};
  Rational c_nice = e.pow(4);  // 625/256

  Container one;
  one.blocks = {blk({1}, 0, false, 0, false)};
  auto ld = container_load(one, sizes, e, c_nice);
  CHECK(ld.load == Rational(3));
  CHECK(ld.rounded_load == Rational(625, 256));  // (5/4)^4
  CHECK_FALSE(ld.is_short);

  Container empty;
  CHECK(container_load(empty, sizes, e, c_nice).load == Rational(1));

  Container td;
  td.blocks = {blk({0}, 2, true, 1, false)};
  CHECK(container_load(td, sizes, e, c_nice).load == Rational(3, 16) + 1);
}

TEST_CASE("container feasibility") {
  Eps e(4);
  std::vector<Rational> sizes{Rational(2)};

  Container ok;
  ok.blocks = {blk({1}, 0, false, 0, false)};
  CHECK(container_feasible(ok, sizes, e));

  // two size-2 jobs in one eps-block: the second cannot start inside it
  Container bad;
  bad.blocks = {blk({2}, 0, false, 0, false)};
  CHECK_FALSE(container_feasible(bad, sizes, e));

  Container all_zero;
  all_zero.blocks = {blk({0}, 0, false, 0, false)};
  CHECK(container_feasible(all_zero, sizes, e));

  // declared crossing must match the constructed layout
  Container undeclared;
  undeclared.blocks = {blk({1}, 0, false, 0, false), blk({0}, 0, false, 0, false)};
  CHECK_FALSE(container_feasible(undeclared, sizes, e));
  Container declared;
  declared.blocks = {blk({1}, 0, false, 0, false), blk({0}, 0, false, 0, true)};
  CHECK(container_feasible(declared, sizes, e));

  // structural invariants
  Container p0;
  p0.blocks = {blk({1}, 0, false, 0, true)};
  CHECK_FALSE(container_feasible(p0, sizes, e));
  Container tflag;
  tflag.blocks = {blk({0}, 3, false, 0, false)};
  CHECK_FALSE(container_feasible(tflag, sizes, e));
  Container toomuch;
  toomuch.blocks = {blk({0}, 5, true, 0, false)};
  CHECK_FALSE(container_feasible(toomuch, sizes, e));
}

TEST_CASE("canonical layout places idle, virtual tiny, then smalls") {
  Eps e(4);
  std::vector<Rational> sizes{Rational(1, 4)};
  Container t;
  t.blocks = {blk({1}, 1, true, 2, false)};
  auto lay = layout_container(t, sizes, e);
  REQUIRE(lay.items.size() == 3);
  CHECK(lay.items[0].start == Rational(0));      // idle 2/16
  CHECK_FALSE(lay.items[0].is_job);
  CHECK(lay.items[1].start == Rational(1, 8));   // virtual tiny 1/16
  CHECK(lay.items[1].is_virtual_tiny);
  CHECK(lay.items[2].start == Rational(3, 16));  // small 1/4
  CHECK(lay.items[2].small_size_index == 0);
  CHECK(lay.content_end == Rational(7, 16));
}

TEST_CASE("enumeration: no tiny or small jobs gives only the empty container") {
  Eps e(4);
  Instance inst;
  inst.jobs = {{"m", Rational(5)}};
  auto ci = classify(inst, e, Rational(100));
  REQUIRE(ci.klass("m") == JobClass::Medium);
  auto pool = enumerate_containers(ci, e, Rational(100));
  REQUIRE(pool.containers.size() == 1);
  CHECK(pool.containers[0].empty());
  CHECK(pool.loads[0].load == Rational(1));
}

TEST_CASE("enumeration contains the extraction-shaped container") {
  Eps e(4);
  Instance inst;
  inst.jobs = {{"s", Rational(2)}};
  Rational c_nice = e.pow(4);
  auto ci = classify(inst, e, c_nice);
  REQUIRE(ci.klass("s") == JobClass::Small);
  auto pool = enumerate_containers(ci, e, c_nice);

  // the rounded job occupies [0, 625/256): block 0 holds it, blocks 1..9 are
  // covered crossings (9/4 < 625/256 < 10/4)
  Container expect;
  expect.blocks.push_back(blk({1}, 0, false, 0, false));
  for (int k = 1; k < 10; ++k) expect.blocks.push_back(blk({0}, 0, false, 0, true));
  CHECK(pool.container_index(expect) >= 0);

  for (size_t i = 0; i < pool.containers.size(); ++i) {
    CHECK(container_feasible(pool.containers[i], pool.small_sizes, e));
    long total = 0;
    for (const auto& b : pool.containers[i].blocks)
      total += b.small_counts[0];
    CHECK(total <= 1);  // never more copies than the instance owns
  }
}

TEST_CASE("enumeration cap errors out") {
  Eps e(4);
  Instance inst;
  inst.jobs = {{"s", Rational(2)}};
  auto ci = classify(inst, e, Rational(625, 256));
  EnumCaps caps;
  caps.max_containers = 0;
  CHECK_THROWS_AS(enumerate_containers(ci, e, Rational(625, 256), caps),
                  std::runtime_error);
}

TEST_CASE("configurations in the small-guess regime") {
  Eps e(4);
  Instance inst;
  inst.jobs = {{"s1", Rational(2)}, {"s2", Rational(1)}};
  Rational c_nice = e.pow(5);  // 3125/1024 < 4
  auto ci = classify(inst, e, c_nice);
  auto pool = enumerate_containers(ci, e, c_nice);
  enumerate_configurations(pool, ci, e);

  CHECK(!pool.long_load_classes.empty());
  // every container is long here (eps * c_nice < 1 <= load)
  for (const auto& ld : pool.loads) CHECK_FALSE(ld.is_short);
  CHECK(pool.configurations.size() == pool.long_load_classes.size());
  for (const auto& c : pool.configurations) {
    long total = 0;
    for (long a : c.long_counts) total += a;
    CHECK(total == 1);
    CHECK(c.short_units == 0);
    CHECK(c.medium_units == 0);
    CHECK(configuration_feasible(c, pool, ci, e));
  }

  // the class-count bound: |CN_L| <= log_{1+eps}(2/eps) + 2
  CHECK(static_cast<long>(pool.long_load_classes.size()) <=
        e.ceil_log(Rational(2 * e.inv())) + 2);
}

TEST_CASE("configuration feasibility: indicators and load bound") {
  Eps e(4);
  Instance inst;
  inst.jobs = {{"s", Rational(2)}, {"m", Rational(5)}, {"l", Rational(20)}};
  Rational c_nice = e.pow(16);  // ~ 35.5, general regime
  auto ci = classify(inst, e, c_nice);
  REQUIRE(ci.klass("l") == JobClass::Large);
  auto pool = enumerate_containers(ci, e, c_nice);
  enumerate_configurations(pool, ci, e);

  for (const auto& c : pool.configurations)
    CHECK(configuration_feasible(c, pool, ci, e));

  Configuration c;
  c.long_counts.assign(pool.long_load_classes.size(), 0);
  c.large_counts.assign(ci.large_sizes.size(), 0);
  CHECK(configuration_feasible(c, pool, ci, e));  // all-zero is fine here
  c.short_units = 1;  // beta > 0 without beta'
  CHECK_FALSE(configuration_feasible(c, pool, ci, e));
  c.short_flag = true;
  CHECK(configuration_feasible(c, pool, ci, e));

  // hand count: single long class alpha range 0..floor(bound/class)
  Instance single;
  single.jobs = {{"s", Rational(2)}};
  auto ci2 = classify(single, e, c_nice);
  auto pool2 = enumerate_containers(ci2, e, c_nice);
  enumerate_configurations(pool2, ci2, e);
  Rational bound = c_nice * Rational(5, 4);
  for (const auto& cfg : pool2.configurations) {
    Rational load = configuration_load(cfg, pool2, ci2, e);
    CHECK(load <= bound);
  }
}

TEST_CASE("fuzzed enumeration pools stay consistent") {
  Eps e(4);
  std::mt19937_64 rng(555);
  GenConfig cfg;
  cfg.max_jobs = 4;
  cfg.max_units = 8;
  for (int it = 0; it < 40; ++it) {
    Instance inst = random_instance(rng, cfg);
    auto ri = round_instance(inst, e);
    auto grid = makespan_guesses(ri, e);
    Rational guess = grid.values[it % std::min<size_t>(3, grid.values.size())];
    auto ci = classify_jobs(ri, e, guess);
    EnumCaps caps;
    caps.max_containers = 2000000;
    auto pool = enumerate_containers(ci, e, guess, caps);
    enumerate_configurations(pool, ci, e, caps);
    CHECK(!pool.containers.empty());
    for (size_t i = 0; i + 1 < pool.containers.size(); ++i)
      CHECK(pool.containers[i] < pool.containers[i + 1]);
    for (const auto& ld : pool.loads) {
      CHECK(ld.rounded_load <= ld.load);
      CHECK(ld.load < ld.rounded_load * Rational(5, 4));
      if (!ld.is_short) CHECK(ld.load <= guess + 1);
    }
  }
}
