#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sts/baselines.hpp"
#include "sts/extract.hpp"
#include "sts/gen.hpp"
#include "sts/io.hpp"
#include "sts/nice.hpp"
#include "sts/scheme.hpp"

namespace {

using namespace sts;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open '" + path + "' for writing");
  f << text;
}

Verdict validate_schedule(const Schedule& s, const Instance& inst) {
  if (s.assignments.size() != inst.jobs.size())
    return Verdict::fail("schedule does not cover every job once");
  try {
    require_non_overlapping(s);
  } catch (const std::exception& e) {
    return Verdict::fail(e.what());
  }
  return check_time_constraint(s, inst.burst_limit);
}

struct SolveArgs {
  std::string in = "-";
  std::string out;
  std::string algo = "eptas";
  std::string epsilon;
  long caps_containers = 200000;
  long caps_configs = 100000;
  long caps_nodes = 200000;
  int oracle_max_jobs = 8;
  int oracle_max_machines = 3;
  bool dump_pools = false;
  bool dump_milp = false;
  bool dump_plan = false;
};

int run_solve(const SolveArgs& a) {
  InstanceFile file = parse_instance_json(read_input(a.in));
  const Instance& inst = file.instance;
  Eps eps = !a.epsilon.empty() ? Eps::parse(a.epsilon)
                               : file.eps.value_or(Eps(4));

  Schedule s;
  std::string summary;
  if (a.algo == "ls") {
    s = list_scheduling(inst);
  } else if (a.algo == "lpt") {
    s = lpt(inst);
  } else if (a.algo == "bruteforce") {
    OracleCaps caps;
    caps.max_jobs = a.oracle_max_jobs;
    caps.max_machines = a.oracle_max_machines;
    auto [sched, opt] = brute_force_opt(inst, caps);
    s = sched;
    summary = "opt " + format_rational(opt);
  } else if (a.algo == "eptas") {
    EptasCaps caps;
    caps.enum_caps.max_containers = a.caps_containers;
    caps.enum_caps.max_configurations = a.caps_configs;
    caps.milp_budget.max_nodes = a.caps_nodes;
    EptasResult r = eptas(inst, eps, caps);
    s = r.schedule;
    summary = r.used_small_case ? "regime sub-1"
                                : "guess " + format_rational(r.guess);
    if ((a.dump_pools || a.dump_milp || a.dump_plan) && !r.used_small_case) {
      auto ci = classify_jobs(round_instance(inst, eps), eps, r.guess);
      auto pool = enumerate_containers(ci, eps, r.guess, caps.enum_caps);
      enumerate_configurations(pool, ci, eps, caps.enum_caps);
      if (a.dump_pools)
        std::cerr << "pools: " << pool.containers.size() << " containers, "
                  << pool.configurations.size() << " configurations, "
                  << pool.long_load_classes.size() << " long load classes\n";
      auto model = build_milp(ci, pool, eps, inst.burst_limit, inst.machines);
      if (a.dump_milp) std::cerr << format_milp(model);
      if (a.dump_plan) {
        auto sol = solve_milp(model, caps.milp_budget);
        if (sol) {
          std::cerr << "plan:";
          for (size_t c = 0; c < sol->v.size(); ++c)
            if (sol->v[c] > 0)
              std::cerr << " config" << c << "x" << sol->v[c];
          for (size_t t = 0; t < sol->w.size(); ++t)
            if (sol->w[t] > 0)
              std::cerr << " container" << t << "x" << sol->w[t];
          std::cerr << "\n";
        }
      }
    }
  } else {
    throw std::invalid_argument("unknown algorithm '" + a.algo + "'");
  }

  auto v = validate_schedule(s, inst);
  if (!v) {
    std::cerr << "validation failed: " << v.witness.value_or("") << "\n";
    return 1;
  }
  write_output(a.out, schedule_to_json(s));
  std::cerr << "makespan " << format_rational(makespan(s))
            << (summary.empty() ? "" : " (" + summary + ")") << "\n";
  return 0;
}

struct BenchArgs {
  unsigned long seed = 1;
  int count = 10;
  std::string epsilon = "1/4";
  std::string out;
  int max_jobs = 4;
  int max_machines = 2;
  int max_burst = 3;
  long max_units = 4;
  bool timing = false;
};

int run_bench(const BenchArgs& a) {
  Eps eps = Eps::parse(a.epsilon);
  std::mt19937_64 rng(a.seed);
  GenConfig cfg;
  cfg.max_jobs = a.max_jobs;
  cfg.max_machines = a.max_machines;
  cfg.max_burst = a.max_burst;
  cfg.max_units = a.max_units;

  std::ostringstream csv;
  csv << "instance,algo,makespan,opt,ratio,ms\n";
  for (int i = 0; i < a.count; ++i) {
    Instance inst = random_instance(rng, cfg);
    std::string id = "i" + std::to_string(a.seed) + "-" + std::to_string(i);
    auto [opt_s, opt] = brute_force_opt(inst);

    struct Run {
      std::string algo;
      std::optional<Schedule> s;
      long ms;
    };
    std::vector<Run> runs;
    auto timed = [&](const std::string& algo, auto&& f) {
      auto t0 = std::chrono::steady_clock::now();
      std::optional<Schedule> s;
      try {
        s = f();
      } catch (const std::runtime_error&) {
        // the approximation scheme may fail within its caps; recorded as "na"
      }
      auto t1 = std::chrono::steady_clock::now();
      long ms = a.timing
                    ? std::chrono::duration_cast<std::chrono::milliseconds>(
                          t1 - t0)
                          .count()
                    : 0;
      runs.push_back({algo, std::move(s), ms});
    };
    timed("ls", [&] { return list_scheduling(inst); });
    timed("lpt", [&] { return lpt(inst); });
    timed("bruteforce", [&] { return opt_s; });
    timed("eptas", [&] { return eptas(inst, eps).schedule; });

    for (const auto& r : runs) {
      if (!r.s) {
        csv << id << "," << r.algo << ",na," << format_rational(opt) << ",na,"
            << r.ms << "\n";
        continue;
      }
      auto v = validate_schedule(*r.s, inst);
      if (!v) {
        std::cerr << id << "/" << r.algo
                  << " failed validation: " << v.witness.value_or("") << "\n";
        return 1;
      }
      Rational mk = makespan(*r.s);
      csv << id << "," << r.algo << "," << format_rational(mk) << ","
          << format_rational(opt) << "," << format_rational(Rational(mk / opt))
          << "," << r.ms << "\n";
    }
  }
  write_output(a.out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scheduling with time restrictions: solvers and validators"};
  app.require_subcommand(1);

  SolveArgs sa;
  CLI::App* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("--in", sa.in, "Instance JSON file ('-' for stdin)");
  solve->add_option("--out", sa.out, "Schedule JSON output (default stdout)");
  solve->add_option("--algo", sa.algo, "ls|lpt|bruteforce|eptas");
  solve->add_option("--epsilon", sa.epsilon, "Accuracy, e.g. 1/4");
  solve->add_option("--caps-containers", sa.caps_containers);
  solve->add_option("--caps-configs", sa.caps_configs);
  solve->add_option("--caps-nodes", sa.caps_nodes);
  solve->add_option("--oracle-max-jobs", sa.oracle_max_jobs);
  solve->add_option("--oracle-max-machines", sa.oracle_max_machines);
  solve->add_flag("--dump-pools", sa.dump_pools);
  solve->add_flag("--dump-milp", sa.dump_milp);
  solve->add_flag("--dump-plan", sa.dump_plan);

  std::string vi, vs;
  CLI::App* validate = app.add_subcommand("validate", "Check a schedule");
  validate->add_option("--instance", vi)->required();
  validate->add_option("--schedule", vs)->required();

  BenchArgs ba;
  CLI::App* bench = app.add_subcommand("bench", "Seeded benchmark CSV");
  bench->add_option("--seed", ba.seed);
  bench->add_option("--count", ba.count);
  bench->add_option("--epsilon", ba.epsilon);
  bench->add_option("--out", ba.out);
  bench->add_option("--max-jobs", ba.max_jobs);
  bench->add_option("--max-machines", ba.max_machines);
  bench->add_option("--max-burst", ba.max_burst);
  bench->add_option("--max-units", ba.max_units);
  bench->add_flag("--timing", ba.timing, "Report wall times (not reproducible)");

  std::string ti = "-", ts, to, teps;
  CLI::App* nice = app.add_subcommand(
      "transform-nice", "Stretch and normalize a schedule into a nice one");
  nice->add_option("--in", ti, "Instance JSON file");
  nice->add_option("--schedule", ts)->required();
  nice->add_option("--epsilon", teps);
  nice->add_option("--out", to);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(sa);
    if (*validate) {
      InstanceFile file = parse_instance_json(read_input(vi));
      Schedule s = parse_schedule_json(read_input(vs), file.instance);
      auto v = validate_schedule(s, file.instance);
      std::cout << verdict_to_json(v);
      return v.ok ? 0 : 1;
    }
    if (*bench) return run_bench(ba);
    if (*nice) {
      InstanceFile file = parse_instance_json(read_input(ti));
      Eps eps = !teps.empty() ? Eps::parse(teps) : file.eps.value_or(Eps(4));
      Schedule s = parse_schedule_json(read_input(ts), file.instance);
      auto v = validate_schedule(s, file.instance);
      if (!v) {
        std::cerr << "input schedule invalid: " << v.witness.value_or("")
                  << "\n";
        return 1;
      }
      RoundedInstance ri = round_instance(file.instance, eps);
      Schedule stretched = stretch_schedule(s, ri, eps);
      Rational m = makespan(stretched) * (1 + 17 * eps.value());
      if (m < 1) m = 1;
      Rational guess = eps.pow(eps.ceil_log(m));
      auto ci = classify_jobs(ri, eps, guess);
      Schedule out =
          to_nice(stretched, ci, eps, file.instance.burst_limit);
      write_output(to, schedule_to_json(out));
      std::cerr << "guess " << format_rational(guess) << ", makespan "
                << format_rational(makespan(out)) << "\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
