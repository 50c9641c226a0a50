#include "gathersim/checker.hpp"
#include "gathersim/engine.hpp"
#include "gathersim/plot.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <set>

using namespace gathersim;
using nlohmann::json;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> steps;
  std::string delta;
  std::string scheduler;
  std::string algorithm;
  std::string adversary;
  std::optional<std::uint64_t> fairness_bound;
  std::optional<unsigned> move_span_cap;
};

void add_override_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "Adversary seed");
  cmd->add_option("--steps", o.steps, "Step budget (rounds or ASYNC events)");
  cmd->add_option("--delta", o.delta, "Minimum move distance, p/q");
  cmd->add_option("--scheduler", o.scheduler, "fsync|ssync|ssync-unfair|async");
  cmd->add_option("--algorithm", o.algorithm, "elect-one-lds|lu-gather|six-color|lu-gather-async|three-color");
  cmd->add_option("--adversary", o.adversary, "random|round-robin|ssync-embedded|min-move");
  cmd->add_option("--fairness-bound", o.fairness_bound, "Fairness bound B");
  cmd->add_option("--move-span-cap", o.move_span_cap, "Longest move in time units");
}

// Applies command-line overrides to the raw scenario JSON before validation.
void apply_overrides(json& j, const Overrides& o) {
  if (o.seed) j["adversary"]["seed"] = *o.seed;
  if (!o.adversary.empty()) j["adversary"]["policy"] = o.adversary;
  if (o.steps) j["step_budget"] = *o.steps;
  if (!o.delta.empty()) j["delta"] = o.delta;
  if (!o.scheduler.empty()) j["scheduler"] = o.scheduler;
  if (!o.algorithm.empty()) j["algorithm"] = o.algorithm;
  if (o.fairness_bound) j["fairness_bound"] = *o.fairness_bound;
  if (o.move_span_cap) j["move_span_cap"] = *o.move_span_cap;
}

Scenario load_scenario(const std::string& path, const Overrides& o) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& ex) {
    throw ScenarioError(ex.what());
  }
  if (!j.is_object()) throw ScenarioError("scenario must be a JSON object");
  apply_overrides(j, o);
  return scenario_from_json(j);
}

Trace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TraceFormatError("cannot open " + path);
  return read_trace(in);
}

std::string final_shape(const Config& c) {
  std::vector<Point> pts;
  for (const RobotEntry& r : c) pts.push_back(r.position);
  if (!collinear(pts)) return to_string(hull_of(pts)->classification);
  std::vector<std::pair<Point, Mark>> marks;
  for (const RobotEntry& r : c) {
    const char letter = r.color.phase != Phase::None ? phase_letter(r.color.phase) : inner_letter(r.color.inner);
    marks.push_back({r.position, Mark{letter ? letter : 'O'}});
  }
  return classify_line(marks).to_string();
}

json summary(const Trace& t) {
  std::set<std::string> colors;
  long time = 0;
  for (const Event& e : t.events) {
    if (e.kind != Event::ConfigAt) continue;
    time = e.t;
    for (const RobotEntry& r : e.config) colors.insert(to_string(r.color));
  }
  return json{{"status", to_string(t.status)},
              {"time", time},
              {"steps", t.steps},
              {"colors", colors},
              {"final", final_shape(t.final_config())}};
}

const std::vector<std::string> kCheckNames{"monotone", "cycle", "switch", "shrink", "gather", "equivariance", "all"};

int cmd_run(const std::string& scenario_path, const std::string& out_path, const Overrides& o, bool annotate,
            const std::vector<std::string>& checks) {
  Scenario s;
  try {
    s = load_scenario(scenario_path, o);
  } catch (const ScenarioError& ex) {
    std::cerr << "invalid scenario: " << ex.what() << '\n';
    return kExitInvalid;
  }
  const Trace t = run(s);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    write_trace(out, t, annotate);
  }
  json sum = summary(t);
  int code = t.status == RunStatus::BudgetExhausted ? kExitBudget : 0;
  if (!checks.empty()) {
    const Report r = run_checks(t, checks);
    sum["report"] = r.to_json();
    if (!r.pass() && code == 0) code = kExitViolation;
  }
  std::cout << sum.dump(2) << '\n';
  return code;
}

struct FuzzArgs {
  FuzzOptions opt;
  std::string algorithm = "three-color";
  std::string scheduler;
  std::vector<std::string> deltas{"1"};
  int runs = 1;
  std::uint64_t seed = 0;
  std::string out_path;
};

std::uint64_t run_seed(std::uint64_t master, int i) {
  return master ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(i + 1));
}

int cmd_fuzz(FuzzArgs& a, const std::vector<std::string>& checks) {
  auto alg = parse_algorithm(a.algorithm);
  if (!alg) {
    std::cerr << "unknown algorithm " << a.algorithm << '\n';
    return kExitInvalid;
  }
  a.opt.algorithm = *alg;
  if (a.scheduler.empty()) {
    a.opt.scheduler = (*alg == AlgorithmId::ElectOneLds || *alg == AlgorithmId::LuGather) ? SchedulerKind::UnfairSSync
                                                                                           : SchedulerKind::Async;
  } else if (auto sch = parse_scheduler(a.scheduler)) {
    a.opt.scheduler = *sch;
  } else {
    std::cerr << "unknown scheduler " << a.scheduler << '\n';
    return kExitInvalid;
  }
  a.opt.deltas.clear();
  for (const std::string& d : a.deltas) {
    auto r = parse_rat(d);
    if (!r || sgn(*r) <= 0) {
      std::cerr << "invalid delta " << d << '\n';
      return kExitInvalid;
    }
    a.opt.deltas.push_back(*r);
  }

  std::map<std::string, int> statuses;
  int failing = 0;
  std::size_t violations = 0;
  std::size_t undecided = 0;
  auto failures = json::array();
  for (int i = 0; i < a.runs; ++i) {
    const std::uint64_t seed = run_seed(a.seed, i);
    Scenario s;
    try {
      s = random_scenario(a.opt, seed);
    } catch (const std::exception& ex) {
      std::cerr << "cannot generate scenario: " << ex.what() << '\n';
      return kExitInvalid;
    }
    const Trace t = run(s);
    const Report r = run_checks(t, checks);
    ++statuses[to_string(t.status)];
    violations += r.violations.size();
    undecided += r.undecided.size();
    if (!r.pass() || !r.undecided.empty()) {
      ++failing;
      if (failures.size() < 20) failures.push_back({{"run", i}, {"scenario", scenario_to_json(s)}, {"report", r.to_json()}});
    }
  }
  const json report{{"runs", a.runs},       {"algorithm", a.algorithm}, {"scheduler", to_string(a.opt.scheduler)},
                    {"seed", a.seed},       {"status", statuses},       {"failing_runs", failing},
                    {"violations", violations}, {"undecided", undecided}, {"failures", failures}};
  if (!a.out_path.empty()) {
    std::ofstream out(a.out_path);
    out << report.dump(2) << '\n';
  }
  std::cout << report.dump(2) << '\n';
  return failing ? kExitViolation : 0;
}

int cmd_check(const std::string& trace_path, const std::vector<std::string>& checks) {
  Trace t;
  try {
    t = load_trace(trace_path);
  } catch (const TraceFormatError& ex) {
    std::cerr << "unreadable trace: " << ex.what() << '\n';
    return kExitInvalid;
  }
  const Report r = run_checks(t, checks);
  std::cout << r.to_json().dump(2) << '\n';
  return r.pass() ? 0 : kExitViolation;
}

int cmd_enumerate(const std::string& scenario_path, const Overrides& o, int depth,
                  const std::vector<std::string>& fractions, std::size_t ceiling) {
  Scenario s;
  EnumerationOptions opt;
  try {
    s = load_scenario(scenario_path, o);
    opt.fractions.clear();
    for (const std::string& f : fractions) {
      auto r = parse_rat(f);
      if (!r || sgn(*r) <= 0 || *r > 1) throw ScenarioError("fraction outside (0,1]: " + f);
      opt.fractions.push_back(*r);
    }
  } catch (const ScenarioError& ex) {
    std::cerr << "invalid input: " << ex.what() << '\n';
    return kExitInvalid;
  }
  opt.depth = depth;
  opt.node_ceiling = ceiling;
  EnumerationResult res;
  try {
    res = enumerate_unfair(s.robots, s.algorithm, s.delta, opt);
  } catch (const std::invalid_argument& ex) {
    std::cerr << ex.what() << '\n';
    return kExitInvalid;
  }
  json j = res.report.to_json();
  j["nodes"] = res.nodes;
  j["edges"] = res.edges;
  j["maximal_paths"] = res.maximal_paths;
  j["truncated_paths"] = res.truncated_paths;
  j["aborted"] = res.aborted;
  std::cout << j.dump(2) << '\n';
  return res.report.pass() ? 0 : kExitViolation;
}

int cmd_plot(const std::string& trace_path, const std::string& out_path) {
  Trace t;
  try {
    t = load_trace(trace_path);
  } catch (const TraceFormatError& ex) {
    std::cerr << "unreadable trace: " << ex.what() << '\n';
    return kExitInvalid;
  }
  if (out_path.empty()) {
    write_svg(std::cout, t);
  } else {
    std::ofstream out(out_path);
    write_svg(out, t);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Luminous robot gathering simulator and checker"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, trace_path;
  Overrides over;
  bool annotate = false;
  std::vector<std::string> checks;

  auto* run_cmd = app.add_subcommand("run", "Run one scenario and write its trace");
  run_cmd->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  run_cmd->add_option("--out", out_path, "Trace output (JSON Lines)");
  run_cmd->add_flag("--annotate", annotate, "Add potential vectors to Config lines");
  run_cmd->add_option("--check", checks, "Checks to run on the trace")->delimiter(',')->check(CLI::IsMember(kCheckNames));
  add_override_flags(run_cmd, over);

  FuzzArgs fuzz;
  std::vector<std::string> fuzz_checks{"all"};
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Random scenarios and adversaries, all applicable checks");
  fuzz_cmd->add_option("--algorithm", fuzz.algorithm, "Algorithm id");
  fuzz_cmd->add_option("--scheduler", fuzz.scheduler, "Scheduler (default by algorithm)");
  fuzz_cmd->add_option("--runs", fuzz.runs, "Number of runs")->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--seed", fuzz.seed, "Master seed");
  fuzz_cmd->add_option("--steps", fuzz.opt.step_budget, "Step budget per run");
  fuzz_cmd->add_option("--delta", fuzz.deltas, "Delta values to draw from")->delimiter(',');
  fuzz_cmd->add_option("--n-min", fuzz.opt.n_min, "Fewest robots")->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--n-max", fuzz.opt.n_max, "Most robots")->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--bound", fuzz.opt.bound, "Numerator bound of coordinates")->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--denominator", fuzz.opt.denominator, "Largest coordinate denominator")
      ->check(CLI::PositiveNumber);
  fuzz_cmd->add_flag("--line", fuzz.opt.on_line, "Start on a random line");
  fuzz_cmd->add_option("--adversary", fuzz.opt.adversary, "Adversary policy");
  fuzz_cmd->add_option("--fairness-bound", fuzz.opt.fairness_bound, "Fairness bound B");
  fuzz_cmd->add_option("--move-span-cap", fuzz.opt.move_span_cap, "Longest move in time units");
  fuzz_cmd->add_option("--check", fuzz_checks, "Checks per run")->delimiter(',')->check(CLI::IsMember(kCheckNames));
  fuzz_cmd->add_option("--out", fuzz.out_path, "Aggregate report JSON");

  std::vector<std::string> check_names{"all"};
  auto* check_cmd = app.add_subcommand("check", "Run checks on a trace file");
  check_cmd->add_option("--trace", trace_path, "Trace (JSON Lines)")->required();
  check_cmd->add_option("--check", check_names, "Checks")->delimiter(',')->check(CLI::IsMember(kCheckNames));

  int depth = 6;
  std::vector<std::string> fractions{"1"};
  std::size_t ceiling = 100000;
  auto* enum_cmd = app.add_subcommand("enumerate", "Exhaustive unfair SSYNC exploration of a small scenario");
  enum_cmd->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  enum_cmd->add_option("--depth", depth, "Rounds to explore")->check(CLI::NonNegativeNumber);
  enum_cmd->add_option("--fractions", fractions, "Move fractions to try")->delimiter(',');
  enum_cmd->add_option("--ceiling", ceiling, "Node ceiling");
  add_override_flags(enum_cmd, over);

  auto* plot_cmd = app.add_subcommand("plot", "Trajectory SVG of a trace");
  plot_cmd->add_option("--trace", trace_path, "Trace (JSON Lines)")->required();
  plot_cmd->add_option("--out", out_path, "SVG output");

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) return cmd_run(scenario_path, out_path, over, annotate, checks);
  if (fuzz_cmd->parsed()) {
    if (fuzz.opt.n_max < fuzz.opt.n_min) {
      std::cerr << "--n-max is below --n-min\n";
      return kExitInvalid;
    }
    return cmd_fuzz(fuzz, fuzz_checks);
  }
  if (check_cmd->parsed()) return cmd_check(trace_path, check_names);
  if (enum_cmd->parsed()) return cmd_enumerate(scenario_path, over, depth, fractions, ceiling);
  if (plot_cmd->parsed()) return cmd_plot(trace_path, out_path);
  return 0;
}
