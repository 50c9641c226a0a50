#pragma once

#include "gathersim/algorithms.hpp"
#include "gathersim/trace.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace gathersim {

struct Scenario {
  std::vector<RobotEntry> robots;
  Rat delta = 1;
  SchedulerKind scheduler = SchedulerKind::Async;
  AlgorithmId algorithm = AlgorithmId::ThreeColor;
  std::string adversary = "random";
  std::uint64_t seed = 0;
  std::uint64_t step_budget = 50000;
  // 0 selects the default 8n.
  std::uint64_t fairness_bound = 0;
  unsigned move_span_cap = 16;

  std::uint64_t effective_fairness_bound() const;
};

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IllegalChoice : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyActivation : std::runtime_error {
  EmptyActivation() : std::runtime_error("empty activation") {}
};

// Throws ScenarioError when robots are missing, delta <= 0, the budget is 0,
// or a light is outside the algorithm's alphabet.
void validate(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

// Reached point of a move: origin + lambda (destination - origin) with lambda
// raised from `fraction` so that at least delta is travelled; the
// destination itself when it is within delta.
Point apply_move(const Point& origin, const Point& destination, const Rat& fraction, const Rat& delta);

// Deterministic bounded integers on top of mt19937_64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n);
  bool coin() { return below(2) == 0; }

 private:
  std::mt19937_64 gen_;
};

Snapshot snapshot_of(const Config& config, std::size_t observer);
// Robot enabled in the configuration (global frame).
bool enabled_in(AlgorithmId alg, const Config& config, std::size_t robot);
bool all_colocated(const Config& config);

// ---- Round-based schedulers (FSYNC, SSYNC, unfair SSYNC) ----

struct RoundChoice {
  std::vector<int> activated;
  // Per activated robot, in the same order; fraction of the move granted.
  std::vector<Rat> fractions;
};

class RoundWorld {
 public:
  explicit RoundWorld(const Scenario& s);

  const Config& config() const { return config_; }
  long time() const { return t_; }
  std::vector<int> enabled() const;
  // Robots an admissible activation must include (one of, for unfair SSYNC).
  std::vector<int> required() const;
  bool unfair_forcing() const;
  // Throws EmptyActivation / IllegalChoice.
  void round(const RoundChoice& choice, std::vector<Event>* log);

 private:
  Scenario scenario_;
  Config config_;
  long t_ = 0;
  std::uint64_t rounds_without_enabled_ = 0;
  std::vector<long> last_activated_;
};

// ---- ASYNC ----

struct AsyncChoice {
  enum Kind { Look, Compute, MoveBegin, MoveEnd, Advance } kind;
  int robot = -1;
  Rat fraction = 1;              // MoveBegin
  std::vector<Rat> progress;     // Advance: one fraction per robot in motion, by id
};

class AsyncWorld {
 public:
  enum class Phase { Idle, Observed, Computed, Moving };
  struct Robot {
    Point position;
    Color light;
    Color shown_light;  // what observers see at the current time
    Point shown_position;
    Phase phase = Phase::Idle;
    Snapshot snapshot;
    Action action;
    long last_time = -1;
    std::uint64_t last_step = 0;
    long t_begin = 0;
    Point stop;
    std::optional<Rat> progress;
  };

  explicit AsyncWorld(const Scenario& s);

  long time() const { return t_; }
  std::uint64_t steps() const { return steps_; }
  const std::vector<Robot>& robots() const { return robots_; }
  // Configuration observed at the current time.
  Config visible() const;
  // Robots whose move began and has not ended, in id order.
  std::vector<int> movers() const;

  // Legal events at this step. Advance entries carry no progress values; any
  // strictly increasing choice below 1 is accepted.
  std::vector<AsyncChoice> legal() const;
  // Throws IllegalChoice naming the violated rule.
  void apply(const AsyncChoice& choice, std::vector<Event>* log);
  // Every robot idle and none enabled in the visible configuration.
  bool quiescent() const;

 private:
  bool starved(const Robot& r) const;
  bool has_event(const Robot& r) const;
  bool advance_allowed() const;

  Scenario scenario_;
  std::vector<Robot> robots_;
  long t_ = 0;
  std::uint64_t steps_ = 0;
  std::uint64_t bound_ = 0;
};

// ---- Adversary policies ----

class RoundPolicy {
 public:
  virtual ~RoundPolicy() = default;
  virtual RoundChoice choose(const RoundWorld& world) = 0;
};

class AsyncPolicy {
 public:
  virtual ~AsyncPolicy() = default;
  // Picks one of `legal` and fills in fractions.
  virtual AsyncChoice choose(const AsyncWorld& world, const std::vector<AsyncChoice>& legal) = 0;
};

// Policies: "random", "round-robin", "ssync-embedded" (ASYNC only), "min-move".
std::unique_ptr<RoundPolicy> make_round_policy(const Scenario& s);
std::unique_ptr<AsyncPolicy> make_async_policy(const Scenario& s);
bool known_policy(const std::string& name);

// Runs until no robot is enabled or the step budget is spent. The trace
// records the final status; BudgetExhausted is reported through status.
Trace run(const Scenario& s);

}  // namespace gathersim
