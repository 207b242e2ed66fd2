#include "sts/io.hpp"

#include <map>
#include <stdexcept>

#include "json.hpp"

namespace sts {

namespace {
using nlohmann::json;

Rational rational_field(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw std::invalid_argument(std::string("field '") + key +
                              "' must be an integer or a rational string");
}
}  // namespace

InstanceFile parse_instance_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  InstanceFile f;
  f.instance.burst_limit = j.at("b").get<int>();
  f.instance.machines = j.at("machines").get<int>();
  for (const json& job : j.at("jobs"))
    f.instance.jobs.push_back(
        {job.at("id").get<std::string>(), rational_field(job, "size")});
  if (j.contains("epsilon"))
    f.eps = Eps::parse(j.at("epsilon").get<std::string>());
  f.instance.validate();
  return f;
}

std::string instance_to_json(const Instance& inst,
                             const std::optional<Eps>& eps) {
  json j;
  j["b"] = inst.burst_limit;
  j["machines"] = inst.machines;
  if (eps) j["epsilon"] = "1/" + std::to_string(eps->inv());
  j["jobs"] = json::array();
  for (const auto& job : inst.jobs)
    j["jobs"].push_back({{"id", job.id}, {"size", format_rational(job.size)}});
  return j.dump(2) + "\n";
}

Schedule parse_schedule_json(const std::string& text, const Instance& inst) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  std::map<std::string, Rational> size_of;
  for (const auto& job : inst.jobs) size_of[job.id] = job.size;
  Schedule s;
  for (const json& a : j) {
    std::string id = a.at("id").get<std::string>();
    auto it = size_of.find(id);
    if (it == size_of.end())
      throw std::invalid_argument("schedule refers to unknown job '" + id +
                                  "' or schedules it twice");
    s.assignments.push_back({id, a.at("machine").get<int>(),
                             rational_field(a, "start"), it->second});
    size_of.erase(it);
  }
  if (s.assignments.size() != inst.jobs.size())
    throw std::invalid_argument("schedule does not cover every job once");
  return s;
}

std::string schedule_to_json(const Schedule& s) {
  json j = json::array();
  for (const auto& a : s.assignments)
    j.push_back({{"id", a.id},
                 {"machine", a.machine},
                 {"start", format_rational(a.start)}});
  return j.dump(2) + "\n";
}

std::string verdict_to_json(const Verdict& v) {
  json j;
  j["ok"] = v.ok;
  if (v.witness) j["witness"] = *v.witness;
  return j.dump(2) + "\n";
}

}  // namespace sts
