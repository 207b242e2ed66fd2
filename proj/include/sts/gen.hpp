#pragma once

#include <random>

#include "sts/schedule.hpp"

namespace sts {

/// Knobs for the seeded instance generator; sizes are multiples of 1/denom.
struct GenConfig {
  int min_jobs = 1;
  int max_jobs = 6;
  int min_machines = 1;
  int max_machines = 2;
  int min_burst = 2;
  int max_burst = 3;
  long denom = 4;
  long max_units = 8;  // largest size = max_units/denom
};

Instance random_instance(std::mt19937_64& rng, const GenConfig& cfg = {});

/// Jobs in random order on random machines at their earliest feasible start,
/// each optionally delayed; always satisfies the time constraint.
Schedule random_schedule(std::mt19937_64& rng, const Instance& inst,
                         long max_delay_units = 0, long denom = 4);

}  // namespace sts
