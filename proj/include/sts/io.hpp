#pragma once

#include <optional>
#include <string>

#include "sts/schedule.hpp"

namespace sts {

/// Instance JSON:
///   {"b": 2, "machines": 1, "epsilon": "1/4",
///    "jobs": [{"id": "a", "size": "1/2"}]}
/// "epsilon" is optional; sizes are exact-rational strings ("p/q", "p", or a
/// plain decimal).
struct InstanceFile {
  Instance instance;
  std::optional<Eps> eps;
};

InstanceFile parse_instance_json(const std::string& text);
std::string instance_to_json(const Instance& inst,
                             const std::optional<Eps>& eps = std::nullopt);

/// Schedule JSON: [{"id": "a", "machine": 0, "start": "0"}].  Sizes come from
/// the instance on parse; unknown ids are an error.
Schedule parse_schedule_json(const std::string& text, const Instance& inst);
std::string schedule_to_json(const Schedule& s);

std::string verdict_to_json(const Verdict& v);

}  // namespace sts
