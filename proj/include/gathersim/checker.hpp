#pragma once

#include "gathersim/engine.hpp"
#include "gathersim/potentials.hpp"

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace gathersim {

struct Violation {
  long t = 0;
  std::string detail;
};

struct Report {
  std::string check;
  std::vector<Violation> violations;
  std::vector<Violation> undecided;
  std::vector<std::string> notes;

  bool pass() const { return violations.empty(); }
  // Appends the other report's findings; the check name of `this` wins.
  void merge(const Report& other);
  nlohmann::json to_json() const;
};

// One Look-Compute-Move cycle as recovered from the event log.
struct CycleRecord {
  int robot = -1;
  long t_look = -1;
  long t_compute = -1;  // -1 while the trace ends before Compute
  long t_begin = -1;    // -1 for a cycle without movement
  long t_end = -1;
  Config seen;
  Color color;  // light chosen by Compute
  Point origin;
  Point destination;
  Point stop;
};

// Configurations C(0..T) re-derived from the events, plus the cycles.
struct Replay {
  std::vector<Config> configs;
  std::vector<CycleRecord> cycles;
  // Round-based traces: activated robots per round.
  std::vector<std::vector<int>> rounds;
  Report report{"replay"};
};

// Re-derives every configuration from the event stream and compares it with
// the logged Config lines. With `verify_compute`, each Compute must equal the
// algorithm's output on the snapshot seen at the matching Look.
Replay replay(const Trace& trace, bool verify_compute = true);

// Potential decrease across every effective round of an ElectOneLDS (f) or
// LU-Gather (g) run under a round-based scheduler.
Report check_monotone(const Trace& trace);
// Inner executions of one all-S phase saw the same configuration and the
// all-phase states follow S -> M -> E -> S.
Report check_cycle_snapshot(const Trace& trace);
// First onLDS configuration of a phase-wrapped run matches one of the
// admissible switch shapes and every pending destination lies on its line.
Report check_onlds_switch(const Trace& trace);
// Endpoint distance drops by at least 2 delta per SS loop.
Report check_shrink(const Trace& trace);

struct GatherResult {
  bool gathered = false;
  std::optional<long> time;
  Report report{"gather"};
};
// First time from which every robot stays on one point with none enabled at
// the end of the trace.
GatherResult check_gathered(const Trace& trace);

// Throws std::invalid_argument on an illegal frame.
Report check_equivariance(AlgorithmId alg, const Snapshot& snapshot, const std::vector<Frame>& frames);

// Snapshots where the nearest-endpoint or nearest-vertex rule has no
// frame-independent answer: the observer sits at the midpoint of a collinear
// snapshot with at least three stations and is sent to an endpoint, or at
// the hull center with several nearest vertices and is sent to one.
bool symmetric_tie(const Snapshot& s, const Action& a);

// Equivariance over every snapshot seen in the trace; symmetric ties are
// skipped and counted in the notes.
Report check_trace_equivariance(const Trace& trace, const std::vector<Frame>& frames);
// A few fixed Pythagorean frames with scales and shifts.
std::vector<Frame> standard_frames();

// Number of SS loops seen in a collinear phase-colored run.
int count_ss_loops(const Trace& trace);

// ---- Table conformance ----

// 1-based component indices listed in one row of the change tables.
struct TableRow {
  std::string label;
  std::vector<int> dec;
  std::vector<int> inc;
};
// Checks one transition against a row: components before the first listed
// decrease are unchanged, the first listed decrease is strict, the other
// listed decreases do not increase, listed increases do not decrease and at
// least one strictly increases, unlisted components do not increase.
// Returns the reason on failure.
std::optional<std::string> row_mismatch(const TableRow& row, const PotentialVec& before, const PotentialVec& after);

// ---- Exhaustive enumeration ----

struct EnumerationOptions {
  int depth = 6;
  std::vector<Rat> fractions{Rat(1)};
  std::size_t node_ceiling = 100000;
};

struct EnumerationResult {
  Report report{"enumerate"};
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t maximal_paths = 0;
  std::size_t truncated_paths = 0;
  bool aborted = false;
  // Distinct configurations where no robot is enabled.
  std::vector<Config> terminals;
};

// Explores every non-empty activation subset and fraction choice per round
// of an unfair SSYNC execution up to `depth` rounds. Each effective edge
// must decrease the potential; each maximal path (no robot enabled) must end
// onLDS (ElectOneLDS) or gathered (LU-Gather).
EnumerationResult enumerate_unfair(const Config& start, AlgorithmId alg, const Rat& delta,
                                   const EnumerationOptions& opt = {});

// ---- Fuzzing ----

struct FuzzOptions {
  AlgorithmId algorithm = AlgorithmId::ThreeColor;
  SchedulerKind scheduler = SchedulerKind::Async;
  int n_min = 3;
  int n_max = 6;
  long bound = 100;       // |p| <= bound
  long denominator = 1;   // q in [1, denominator]
  bool on_line = false;   // start on a random line
  std::vector<Rat> deltas{Rat(1)};
  std::string adversary = "random";
  std::uint64_t step_budget = 50000;
  std::uint64_t fairness_bound = 0;
  unsigned move_span_cap = 16;
};

// Random scenario with distinct rational positions; reproducible from seed.
Scenario random_scenario(const FuzzOptions& opt, std::uint64_t seed);

// Checks that apply to the algorithm/scheduler pair, run on one trace.
Report check_all(const Trace& trace);

// Runs the named checks: monotone, cycle, switch, shrink, gather,
// equivariance, all. Throws std::invalid_argument on an unknown name.
Report run_checks(const Trace& trace, const std::vector<std::string>& names);

}  // namespace gathersim
