#pragma once

#include <map>
#include <string>
#include <vector>

#include "sts/rational.hpp"

namespace sts {

/// Accuracy parameter. Restricted to reciprocals of integers >= 4 so that
/// 1/eps is an integer and all block/boundary arithmetic stays exact.
class Eps {
 public:
  explicit Eps(long inv);
  static Eps parse(const std::string& s);  // accepts "1/4"

  long inv() const { return inv_; }
  Rational value() const { return Rational(1, inv_); }
  Rational one_plus() const { return Rational(inv_ + 1, inv_); }
  Rational eps2() const { return Rational(1, inv_ * inv_); }

  /// (1+eps)^e for any integer e, exact.
  Rational pow(long e) const;
  /// Smallest integer e with (1+eps)^e >= x; requires x > 0.
  long ceil_log(const Rational& x) const;
  /// Largest integer e with (1+eps)^e <= x; requires x > 0.
  long floor_log(const Rational& x) const;

 private:
  long inv_;
};

struct Job {
  std::string id;
  Rational size;  // > 0
};

struct Instance {
  std::vector<Job> jobs;
  int machines = 1;      // m >= 1
  int burst_limit = 2;   // B >= 2

  void validate() const;  // throws on malformed instances
};

/// Instance with each size rounded up to an exact integer power of 1+eps.
struct RoundedInstance {
  Instance base;
  std::map<std::string, Rational> rounded_sizes;

  const Rational& rounded(const std::string& id) const;
  Rational max_rounded_size() const;
};

enum class JobClass { Tiny, Small, Medium, Large };

struct ClassifiedInstance {
  RoundedInstance rounded;
  Rational cmax_guess;
  Rational theta;
  std::map<std::string, JobClass> class_of;
  std::vector<Rational> small_sizes;  // distinct rounded sizes, ascending
  std::vector<Rational> large_sizes;  // distinct rounded sizes, ascending

  JobClass klass(const std::string& id) const { return class_of.at(id); }
  std::vector<std::string> jobs_in_class(JobClass c) const;  // sorted by id
  Rational total_size_in_class(JobClass c) const;
  long count_of_size_in_class(const Rational& size, JobClass c) const;
};

/// Candidate makespan values for the dual-approximation loop.
struct GuessGrid {
  std::vector<Rational> values;  // ascending powers of 1+eps, all >= 1
  bool below_one_flag = false;   // a sub-1 makespan must also be tried
};

RoundedInstance round_instance(const Instance& inst, const Eps& eps);

GuessGrid makespan_guesses(const RoundedInstance& ri, const Eps& eps);

ClassifiedInstance classify_jobs(const RoundedInstance& ri, const Eps& eps,
                                 const Rational& cmax_guess);

}  // namespace sts
