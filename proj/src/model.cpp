#include "sts/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sts {

Eps::Eps(long inv) : inv_(inv) {
  if (inv <= 3) throw std::invalid_argument("eps must be 1/k for an integer k > 3");
}

Eps Eps::parse(const std::string& s) {
  Rational v = parse_rational(s);
  if (v <= 0 || numerator(v) != 1)
    throw std::invalid_argument("eps must be 1/k for an integer k > 3");
  return Eps(denominator(v).convert_to<long>());
}

Rational Eps::pow(long e) const {
  BigInt num = 1, den = 1;
  BigInt a = inv_ + 1, b = inv_;
  long n = e >= 0 ? e : -e;
  for (long i = 0; i < n; ++i) {
    num *= a;
    den *= b;
  }
  if (e >= 0) return Rational(num, den);
  return Rational(den, num);
}

long Eps::ceil_log(const Rational& x) const {
  if (x <= 0) throw std::invalid_argument("ceil_log: x must be positive");
  Rational base = one_plus();
  long e = 0;
  Rational v = 1;
  if (v >= x) {
    while (v >= x) {
      v /= base;
      --e;
    }
    return e + 1;
  }
  while (v < x) {
    v *= base;
    ++e;
  }
  return e;
}

long Eps::floor_log(const Rational& x) const {
  long e = ceil_log(x);
  return pow(e) == x ? e : e - 1;
}

void Instance::validate() const {
  if (machines < 1) throw std::invalid_argument("machines must be >= 1");
  if (burst_limit < 2) throw std::invalid_argument("burst limit must be >= 2");
  std::set<std::string> ids;
  for (const auto& j : jobs) {
    if (j.size <= 0) throw std::invalid_argument("job size must be positive: " + j.id);
    if (!ids.insert(j.id).second)
      throw std::invalid_argument("duplicate job id: " + j.id);
  }
}

const Rational& RoundedInstance::rounded(const std::string& id) const {
  return rounded_sizes.at(id);
}

Rational RoundedInstance::max_rounded_size() const {
  Rational m = 0;
  for (const auto& [id, p] : rounded_sizes) m = std::max(m, p);
  return m;
}

std::vector<std::string> ClassifiedInstance::jobs_in_class(JobClass c) const {
  std::vector<std::string> out;
  for (const auto& [id, k] : class_of)
    if (k == c) out.push_back(id);
  return out;  // map order is already sorted by id
}

Rational ClassifiedInstance::total_size_in_class(JobClass c) const {
  Rational s = 0;
  for (const auto& [id, k] : class_of)
    if (k == c) s += rounded.rounded(id);
  return s;
}

long ClassifiedInstance::count_of_size_in_class(const Rational& size, JobClass c) const {
  long n = 0;
  for (const auto& [id, k] : class_of)
    if (k == c && rounded.rounded(id) == size) ++n;
  return n;
}

RoundedInstance round_instance(const Instance& inst, const Eps& eps) {
  inst.validate();
  RoundedInstance ri;
  ri.base = inst;
  for (const auto& j : inst.jobs)
    ri.rounded_sizes[j.id] = eps.pow(eps.ceil_log(j.size));
  return ri;
}

GuessGrid makespan_guesses(const RoundedInstance& ri, const Eps& eps) {
  if (ri.base.jobs.empty()) throw std::invalid_argument("no jobs");
  Rational p_max = ri.max_rounded_size();
  Rational lo = std::max(Rational(1), p_max);
  Rational n = static_cast<long>(ri.base.jobs.size());
  Rational hi = eps.one_plus() * n * (1 + p_max);

  GuessGrid grid;
  grid.below_one_flag = p_max < 1;
  for (long e = eps.ceil_log(lo); eps.pow(e) <= hi; ++e)
    grid.values.push_back(eps.pow(e));
  if (grid.values.empty()) grid.values.push_back(eps.pow(eps.ceil_log(lo)));
  return grid;
}

ClassifiedInstance classify_jobs(const RoundedInstance& ri, const Eps& eps,
                                 const Rational& cmax_guess) {
  ClassifiedInstance ci;
  ci.rounded = ri;
  ci.cmax_guess = cmax_guess;
  Rational inv_eps = Rational(eps.inv());
  ci.theta = std::max(Rational(eps.value() * cmax_guess), inv_eps);

  std::set<Rational> smalls, larges;
  for (const auto& [id, p] : ri.rounded_sizes) {
    if (p > cmax_guess) throw std::invalid_argument("guess too small");
    JobClass c;
    if (p <= eps.eps2()) {
      c = JobClass::Tiny;
    } else if (p <= inv_eps) {
      c = JobClass::Small;
      smalls.insert(p);
    } else if (p <= ci.theta) {
      c = JobClass::Medium;
    } else {
      c = JobClass::Large;
      larges.insert(p);
    }
    ci.class_of[id] = c;
  }
  ci.small_sizes.assign(smalls.begin(), smalls.end());
  ci.large_sizes.assign(larges.begin(), larges.end());
  return ci;
}

}  // namespace sts
