#include "gathersim/engine.hpp"

#include <algorithm>
#include <set>

namespace gathersim {

using nlohmann::json;

std::uint64_t Scenario::effective_fairness_bound() const {
  return fairness_bound ? fairness_bound : 8 * static_cast<std::uint64_t>(std::max<std::size_t>(robots.size(), 1));
}

bool known_policy(const std::string& name) {
  return name == "random" || name == "round-robin" || name == "ssync-embedded" || name == "min-move";
}

void validate(const Scenario& s) {
  if (s.robots.empty()) throw ScenarioError("scenario has no robots");
  if (sgn(s.delta) <= 0) throw ScenarioError("delta must be positive");
  if (s.step_budget == 0) throw ScenarioError("step budget must be positive");
  if (s.move_span_cap == 0) throw ScenarioError("move span cap must be positive");
  if (!known_policy(s.adversary)) throw ScenarioError("unknown adversary policy " + s.adversary);
  if (s.adversary == "ssync-embedded" && s.scheduler != SchedulerKind::Async) {
    throw ScenarioError("ssync-embedded policy needs the async scheduler");
  }
  for (const RobotEntry& r : s.robots) {
    if (!in_alphabet(s.algorithm, r.color)) {
      throw ScenarioError("light " + to_string(r.color) + " is not used by " + to_string(s.algorithm));
    }
  }
}

namespace {

Rat scenario_rat(const json& j, const char* key) {
  if (!j.contains(key)) throw ScenarioError(std::string("missing field ") + key);
  const json& v = j[key];
  std::optional<Rat> r;
  if (v.is_string()) {
    r = parse_rat(v.get<std::string>());
  } else if (v.is_number_integer()) {
    r = Rat(v.get<long>());
  }
  if (!r) throw ScenarioError(std::string("malformed rational in ") + key);
  return *r;
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw ScenarioError("scenario must be a JSON object");
  Scenario s;
  try {
    if (j.contains("algorithm")) {
      auto a = parse_algorithm(j["algorithm"].get<std::string>());
      if (!a) throw ScenarioError("unknown algorithm");
      s.algorithm = *a;
    }
    if (j.contains("scheduler")) {
      auto sch = parse_scheduler(j["scheduler"].get<std::string>());
      if (!sch) throw ScenarioError("unknown scheduler");
      s.scheduler = *sch;
    }
    if (!j.contains("robots") || !j["robots"].is_array()) throw ScenarioError("missing robots array");
    for (const json& r : j["robots"]) {
      RobotEntry e{{scenario_rat(r, "x"), scenario_rat(r, "y")}, initial_color(s.algorithm)};
      if (r.contains("color")) {
        auto c = parse_color(r["color"].get<std::string>());
        if (!c) throw ScenarioError("malformed color");
        e.color = *c;
      }
      s.robots.push_back(std::move(e));
    }
    if (j.contains("delta")) s.delta = scenario_rat(j, "delta");
    if (j.contains("adversary")) {
      const json& a = j["adversary"];
      s.adversary = a.value("policy", std::string("random"));
      s.seed = a.value("seed", std::uint64_t{0});
    }
    s.step_budget = j.value("step_budget", s.step_budget);
    s.fairness_bound = j.value("fairness_bound", s.fairness_bound);
    s.move_span_cap = j.value("move_span_cap", s.move_span_cap);
  } catch (const json::exception& ex) {
    throw ScenarioError(ex.what());
  }
  validate(s);
  return s;
}

json scenario_to_json(const Scenario& s) {
  auto robots = json::array();
  for (const RobotEntry& r : s.robots) {
    json item = point_json(r.position);
    item["color"] = to_string(r.color);
    robots.push_back(std::move(item));
  }
  return json{{"robots", robots},
              {"delta", format_rat(s.delta)},
              {"scheduler", to_string(s.scheduler)},
              {"algorithm", to_string(s.algorithm)},
              {"adversary", {{"policy", s.adversary}, {"seed", s.seed}}},
              {"step_budget", s.step_budget},
              {"fairness_bound", s.fairness_bound},
              {"move_span_cap", s.move_span_cap}};
}

Point apply_move(const Point& origin, const Point& destination, const Rat& fraction, const Rat& delta) {
  const Point d = destination - origin;
  const Rat len2 = dot(d, d);
  if (sgn(len2) == 0) return origin;
  const Rat delta2 = delta * delta;
  if (len2 <= delta2) return destination;

  Rat lambda = fraction;
  if (lambda >= 1) return destination;
  if (lambda * lambda * len2 >= delta2) return origin + d * lambda;
  if (auto exact = exact_sqrt(delta2 / len2)) return origin + d * *exact;

  // Smallest k / 2^16 with (k / 2^16)^2 |d|^2 >= delta^2.
  constexpr unsigned kBits = 16;
  Int scale = 1;
  scale <<= kBits;
  const Rat x = delta2 * Rat(scale * scale) / len2;
  Int floor_x = x.get_num() / x.get_den();
  Int k;
  mpz_sqrt(k.get_mpz_t(), floor_x.get_mpz_t());
  if (!(x.get_den() == 1 && k * k == floor_x)) k += 1;
  lambda = ratio(k, scale);
  if (lambda >= 1) return destination;
  return origin + d * lambda;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = gen_();
  } while (v >= limit);
  return v % n;
}

Snapshot snapshot_of(const Config& config, std::size_t observer) {
  std::vector<std::pair<Point, Color>> robots;
  robots.reserve(config.size());
  for (const RobotEntry& r : config) robots.push_back({r.position, r.color});
  return make_snapshot(robots, observer);
}

bool enabled_in(AlgorithmId alg, const Config& config, std::size_t robot) {
  const Snapshot s = snapshot_of(config, robot);
  return is_enabled(s, run_algorithm(alg, s));
}

bool all_colocated(const Config& config) {
  return std::all_of(config.begin(), config.end(),
                     [&](const RobotEntry& r) { return r.position == config.front().position; });
}

namespace {

Event config_event(long t, Config c) {
  Event e{Event::ConfigAt, t};
  e.config = std::move(c);
  return e;
}

Event robot_event(Event::Kind kind, long t, int robot) {
  Event e{kind, t};
  e.robot = robot;
  return e;
}

}  // namespace

// ---- RoundWorld ----

RoundWorld::RoundWorld(const Scenario& s)
    : scenario_(s), config_(s.robots), last_activated_(s.robots.size(), -1) {}

std::vector<int> RoundWorld::enabled() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < config_.size(); ++i) {
    if (enabled_in(scenario_.algorithm, config_, i)) out.push_back(static_cast<int>(i));
  }
  return out;
}

bool RoundWorld::unfair_forcing() const {
  return scenario_.scheduler == SchedulerKind::UnfairSSync &&
         rounds_without_enabled_ + 1 >= scenario_.effective_fairness_bound();
}

std::vector<int> RoundWorld::required() const {
  std::vector<int> out;
  const long bound = static_cast<long>(scenario_.effective_fairness_bound());
  for (std::size_t i = 0; i < config_.size(); ++i) {
    const bool need = scenario_.scheduler == SchedulerKind::FSync ||
                      (scenario_.scheduler == SchedulerKind::SSync && t_ - last_activated_[i] >= bound);
    if (need) out.push_back(static_cast<int>(i));
  }
  return out;
}

void RoundWorld::round(const RoundChoice& choice, std::vector<Event>* log) {
  if (choice.activated.empty()) throw EmptyActivation();
  if (choice.fractions.size() != choice.activated.size()) throw IllegalChoice("one fraction per activated robot");
  std::set<int> active(choice.activated.begin(), choice.activated.end());
  if (active.size() != choice.activated.size()) throw IllegalChoice("robot activated twice");
  for (int id : active) {
    if (id < 0 || static_cast<std::size_t>(id) >= config_.size()) throw IllegalChoice("unknown robot id");
  }
  for (const Rat& f : choice.fractions) {
    if (sgn(f) <= 0 || f > 1) throw IllegalChoice("move fraction outside (0,1]");
  }
  for (int id : required()) {
    if (!active.count(id)) throw IllegalChoice("fairness: robot " + std::to_string(id) + " must be activated");
  }
  const std::vector<int> en = enabled();
  const bool hits_enabled = std::any_of(en.begin(), en.end(), [&](int id) { return active.count(id) > 0; });
  if (unfair_forcing() && !en.empty() && !hits_enabled) {
    throw IllegalChoice("unfair fairness bound: an enabled robot must be activated");
  }

  if (log) {
    Event start{Event::RoundStart, t_};
    start.activated.assign(active.begin(), active.end());
    log->push_back(std::move(start));
  }
  Config next = config_;
  for (std::size_t k = 0; k < choice.activated.size(); ++k) {
    const int id = choice.activated[k];
    const Snapshot snap = snapshot_of(config_, id);
    const Action a = run_algorithm(scenario_.algorithm, snap);
    next[id].color = a.new_color;
    if (log) {
      log->push_back(robot_event(Event::Look, t_, id));
      Event c = robot_event(Event::Compute, t_, id);
      c.color = a.new_color;
      c.point = a.destination;
      log->push_back(std::move(c));
    }
    if (a.destination != config_[id].position) {
      const Point stop = apply_move(config_[id].position, a.destination, choice.fractions[k], scenario_.delta);
      next[id].position = stop;
      if (log) {
        Event b = robot_event(Event::MoveBegin, t_, id);
        b.point = stop;
        log->push_back(std::move(b));
        log->push_back(robot_event(Event::MoveEnd, t_, id));
      }
    }
    last_activated_[id] = t_;
  }
  if (en.empty() || hits_enabled) {
    rounds_without_enabled_ = 0;
  } else {
    ++rounds_without_enabled_;
  }
  config_ = std::move(next);
  ++t_;
  if (log) log->push_back(config_event(t_, config_));
}

// ---- AsyncWorld ----

AsyncWorld::AsyncWorld(const Scenario& s) : scenario_(s), bound_(s.effective_fairness_bound()) {
  for (const RobotEntry& r : s.robots) {
    Robot robot;
    robot.position = r.position;
    robot.shown_position = r.position;
    robot.light = r.color;
    robot.shown_light = r.color;
    robots_.push_back(std::move(robot));
  }
}

Config AsyncWorld::visible() const {
  Config out;
  out.reserve(robots_.size());
  for (const Robot& r : robots_) out.push_back({r.shown_position, r.shown_light});
  return out;
}

std::vector<int> AsyncWorld::movers() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < robots_.size(); ++i) {
    if (robots_[i].phase == Phase::Moving) out.push_back(static_cast<int>(i));
  }
  return out;
}

bool AsyncWorld::starved(const Robot& r) const { return steps_ - r.last_step >= bound_; }

bool AsyncWorld::has_event(const Robot& r) const { return r.last_time < t_; }

bool AsyncWorld::advance_allowed() const {
  for (const Robot& r : robots_) {
    if (r.phase == Phase::Moving && t_ >= r.t_begin + static_cast<long>(scenario_.move_span_cap)) return false;
    if (starved(r) && has_event(r)) return false;
  }
  return true;
}

std::vector<AsyncChoice> AsyncWorld::legal() const {
  bool forced = false;
  for (const Robot& r : robots_) forced = forced || (starved(r) && has_event(r));

  std::vector<AsyncChoice> out;
  for (std::size_t i = 0; i < robots_.size(); ++i) {
    const Robot& r = robots_[i];
    if (!has_event(r) || (forced && !starved(r))) continue;
    AsyncChoice c{AsyncChoice::Look, static_cast<int>(i)};
    switch (r.phase) {
      case Phase::Idle: c.kind = AsyncChoice::Look; break;
      case Phase::Observed: c.kind = AsyncChoice::Compute; break;
      case Phase::Computed: c.kind = AsyncChoice::MoveBegin; break;
      case Phase::Moving: c.kind = AsyncChoice::MoveEnd; break;
    }
    out.push_back(std::move(c));
  }
  if (advance_allowed()) out.push_back(AsyncChoice{AsyncChoice::Advance});
  return out;
}

void AsyncWorld::apply(const AsyncChoice& choice, std::vector<Event>* log) {
  if (choice.kind == AsyncChoice::Advance) {
    if (!advance_allowed()) {
      throw IllegalChoice("clock: a starved robot or a move at its span cap must act before time advances");
    }
    const std::vector<int> ms = movers();
    if (choice.progress.size() != ms.size()) throw IllegalChoice("progress: one value per robot in motion");
    for (std::size_t k = 0; k < ms.size(); ++k) {
      const Robot& r = robots_[ms[k]];
      const Rat& p = choice.progress[k];
      if (sgn(p) < 0 || p >= 1) throw IllegalChoice("progress: position must lie on [origin, stop)");
      if (r.progress && p <= *r.progress) throw IllegalChoice("monotonicity: progress must strictly increase");
    }
    ++t_;
    for (std::size_t k = 0; k < ms.size(); ++k) robots_[ms[k]].progress = choice.progress[k];
    for (std::size_t i = 0; i < robots_.size(); ++i) {
      Robot& r = robots_[i];
      r.shown_light = r.light;
      if (r.phase == Phase::Moving) {
        r.shown_position = r.position + (r.stop - r.position) * *r.progress;
        if (log) {
          Event e = robot_event(Event::MoveProgress, t_, static_cast<int>(i));
          e.point = r.shown_position;
          log->push_back(std::move(e));
        }
      } else {
        r.shown_position = r.position;
      }
    }
    ++steps_;
    if (log) log->push_back(config_event(t_, visible()));
    return;
  }

  if (choice.robot < 0 || static_cast<std::size_t>(choice.robot) >= robots_.size()) {
    throw IllegalChoice("unknown robot id");
  }
  Robot& r = robots_[choice.robot];
  if (!has_event(r)) throw IllegalChoice("phase order: one event per robot per time instant");
  if (!starved(r)) {
    for (const Robot& o : robots_) {
      if (starved(o) && has_event(o)) throw IllegalChoice("fairness: a starved robot must act first");
    }
  }
  const int id = choice.robot;
  switch (choice.kind) {
    case AsyncChoice::Look:
      if (r.phase != Phase::Idle) throw IllegalChoice("phase order: Look needs an idle robot");
      r.snapshot = snapshot_of(visible(), id);
      r.phase = Phase::Observed;
      if (log) log->push_back(robot_event(Event::Look, t_, id));
      break;
    case AsyncChoice::Compute: {
      if (r.phase != Phase::Observed) throw IllegalChoice("phase order: Compute needs a prior Look");
      r.action = run_algorithm(scenario_.algorithm, r.snapshot);
      r.light = r.action.new_color;
      r.phase = r.action.destination == r.position ? Phase::Idle : Phase::Computed;
      if (log) {
        Event e = robot_event(Event::Compute, t_, id);
        e.color = r.action.new_color;
        e.point = r.action.destination;
        log->push_back(std::move(e));
      }
      break;
    }
    case AsyncChoice::MoveBegin:
      if (r.phase != Phase::Computed) throw IllegalChoice("phase order: MoveBegin needs a pending move");
      if (sgn(choice.fraction) <= 0 || choice.fraction > 1) throw IllegalChoice("delta: move fraction outside (0,1]");
      r.stop = apply_move(r.position, r.action.destination, choice.fraction, scenario_.delta);
      r.t_begin = t_;
      r.progress.reset();
      r.phase = Phase::Moving;
      if (log) {
        Event e = robot_event(Event::MoveBegin, t_, id);
        e.point = r.stop;
        log->push_back(std::move(e));
      }
      break;
    case AsyncChoice::MoveEnd:
      if (r.phase != Phase::Moving) throw IllegalChoice("phase order: MoveEnd needs a move in progress");
      if (t_ < r.t_begin + 1) throw IllegalChoice("timing: a move ends at t_B + 1 or later");
      r.position = r.stop;
      r.phase = Phase::Idle;
      if (log) log->push_back(robot_event(Event::MoveEnd, t_, id));
      break;
    case AsyncChoice::Advance: break;
  }
  r.last_time = t_;
  r.last_step = ++steps_;
}

bool AsyncWorld::quiescent() const {
  for (const Robot& r : robots_) {
    if (r.phase != Phase::Idle || r.shown_position != r.position || r.shown_light != r.light) return false;
  }
  const Config c = visible();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (enabled_in(scenario_.algorithm, c, i)) return false;
  }
  return true;
}

// ---- Policies ----

namespace {

Rat random_fraction(Rng& rng) {
  if (rng.coin()) return 1;
  return ratio(static_cast<long>(rng.below(7) + 1), 8);
}

const Rat kTinyFraction = ratio(1, 1024);

class RandomRounds : public RoundPolicy {
 public:
  RandomRounds(std::uint64_t seed, bool minimal) : rng_(seed), minimal_(minimal) {}

  RoundChoice choose(const RoundWorld& world) override {
    const int n = static_cast<int>(world.config().size());
    const std::vector<int> en = world.enabled();
    std::set<int> pick;
    switch (rng_.below(4)) {
      case 0:
        for (int i = 0; i < n; ++i) {
          if (rng_.coin()) pick.insert(i);
        }
        break;
      case 1: pick.insert(static_cast<int>(rng_.below(n))); break;
      case 2:
        if (!en.empty()) {
          pick.insert(en[rng_.below(en.size())]);
        } else {
          pick.insert(static_cast<int>(rng_.below(n)));
        }
        break;
      default:
        for (int i = 0; i < n; ++i) pick.insert(i);
        break;
    }
    if (pick.empty()) pick.insert(static_cast<int>(rng_.below(n)));
    for (int id : world.required()) pick.insert(id);
    if (world.unfair_forcing() && !en.empty() &&
        std::none_of(en.begin(), en.end(), [&](int id) { return pick.count(id) > 0; })) {
      pick.insert(en[rng_.below(en.size())]);
    }
    RoundChoice c;
    for (int id : pick) {
      c.activated.push_back(id);
      c.fractions.push_back(minimal_ ? kTinyFraction : random_fraction(rng_));
    }
    return c;
  }

 private:
  Rng rng_;
  bool minimal_;
};

class RoundRobinRounds : public RoundPolicy {
 public:
  RoundChoice choose(const RoundWorld& world) override {
    const int n = static_cast<int>(world.config().size());
    std::set<int> pick{next_++ % n};
    for (int id : world.required()) pick.insert(id);
    const std::vector<int> en = world.enabled();
    if (world.unfair_forcing() && !en.empty() &&
        std::none_of(en.begin(), en.end(), [&](int id) { return pick.count(id) > 0; })) {
      pick.insert(en.front());
    }
    RoundChoice c;
    for (int id : pick) {
      c.activated.push_back(id);
      c.fractions.push_back(1);
    }
    return c;
  }

 private:
  int next_ = 0;
};

std::vector<Rat> fill_progress(const AsyncWorld& world, Rng* rng, bool minimal) {
  std::vector<Rat> out;
  for (int id : world.movers()) {
    const auto& prev = world.robots()[id].progress;
    if (!prev) {
      out.push_back(minimal || !rng ? Rat(0) : ratio(static_cast<long>(rng->below(8)), 8));
      continue;
    }
    const Rat room = 1 - *prev;
    const long step = (minimal || !rng) ? 1 : static_cast<long>(rng->below(7) + 1);
    out.push_back(*prev + room * ratio(step, minimal ? 64 : 8));
  }
  return out;
}

class RandomAsync : public AsyncPolicy {
 public:
  RandomAsync(std::uint64_t seed, bool minimal) : rng_(seed), minimal_(minimal) {}

  AsyncChoice choose(const AsyncWorld& world, const std::vector<AsyncChoice>& legal) override {
    AsyncChoice c = legal[rng_.below(legal.size())];
    if (c.kind == AsyncChoice::MoveBegin) c.fraction = minimal_ ? kTinyFraction : random_fraction(rng_);
    if (c.kind == AsyncChoice::Advance) c.progress = fill_progress(world, &rng_, minimal_);
    return c;
  }

 private:
  Rng rng_;
  bool minimal_;
};

AsyncChoice finish(const AsyncWorld& world, AsyncChoice c) {
  if (c.kind == AsyncChoice::Advance) c.progress = fill_progress(world, nullptr, false);
  return c;
}

// One robot event per time instant, robots taken in cyclic order.
class RoundRobinAsync : public AsyncPolicy {
 public:
  AsyncChoice choose(const AsyncWorld& world, const std::vector<AsyncChoice>& legal) override {
    const int n = static_cast<int>(world.robots().size());
    if (acted_at_ != world.time()) {
      for (int k = 0; k < n; ++k) {
        const int id = (cursor_ + k) % n;
        for (const AsyncChoice& c : legal) {
          if (c.robot == id) {
            cursor_ = id + 1;
            acted_at_ = world.time();
            return finish(world, c);
          }
        }
      }
    }
    for (const AsyncChoice& c : legal) {
      if (c.kind == AsyncChoice::Advance) return finish(world, c);
    }
    acted_at_ = world.time();
    return finish(world, legal.front());
  }

 private:
  int cursor_ = 0;
  long acted_at_ = -1;
};

// Every robot runs the same phase in lock step: all Look, tick, all Compute,
// tick, all MoveBegin, tick, all MoveEnd, tick.
class SsyncEmbeddedAsync : public AsyncPolicy {
 public:
  AsyncChoice choose(const AsyncWorld& world, const std::vector<AsyncChoice>& legal) override {
    for (const AsyncChoice& c : legal) {
      if (c.kind == stage_) return finish(world, c);
    }
    for (const AsyncChoice& c : legal) {
      if (c.kind == AsyncChoice::Advance) {
        stage_ = stage_ == AsyncChoice::MoveEnd ? AsyncChoice::Look : static_cast<AsyncChoice::Kind>(stage_ + 1);
        return finish(world, c);
      }
    }
    return finish(world, legal.front());
  }

 private:
  AsyncChoice::Kind stage_ = AsyncChoice::Look;
};

}  // namespace

std::unique_ptr<RoundPolicy> make_round_policy(const Scenario& s) {
  if (s.adversary == "round-robin") return std::make_unique<RoundRobinRounds>();
  return std::make_unique<RandomRounds>(s.seed, s.adversary == "min-move");
}

std::unique_ptr<AsyncPolicy> make_async_policy(const Scenario& s) {
  if (s.adversary == "round-robin") return std::make_unique<RoundRobinAsync>();
  if (s.adversary == "ssync-embedded") return std::make_unique<SsyncEmbeddedAsync>();
  return std::make_unique<RandomAsync>(s.seed, s.adversary == "min-move");
}

Trace run(const Scenario& s) {
  validate(s);
  Trace trace;
  TraceHeader& h = trace.header;
  h.algorithm = s.algorithm;
  h.scheduler = s.scheduler;
  h.delta = s.delta;
  h.n = static_cast<int>(s.robots.size());
  h.adversary = s.adversary;
  h.seed = s.seed;
  h.fairness_bound = s.effective_fairness_bound();
  h.move_span_cap = s.move_span_cap;
  h.step_budget = s.step_budget;
  trace.events.push_back(config_event(0, s.robots));

  auto finish_with = [&](const Config& c, bool done) {
    if (!done) {
      trace.status = RunStatus::BudgetExhausted;
    } else {
      trace.status = all_colocated(c) ? RunStatus::Gathered : RunStatus::Terminal;
    }
  };

  if (is_round_based(s.scheduler)) {
    RoundWorld world(s);
    auto policy = make_round_policy(s);
    while (true) {
      if (world.enabled().empty()) {
        finish_with(world.config(), true);
        break;
      }
      if (trace.steps >= s.step_budget) {
        finish_with(world.config(), false);
        break;
      }
      world.round(policy->choose(world), &trace.events);
      ++trace.steps;
    }
    return trace;
  }

  AsyncWorld world(s);
  auto policy = make_async_policy(s);
  bool check = true;
  while (true) {
    if (check && world.quiescent()) {
      finish_with(world.visible(), true);
      break;
    }
    if (world.steps() >= s.step_budget) {
      finish_with(world.visible(), false);
      break;
    }
    const AsyncChoice c = policy->choose(world, world.legal());
    world.apply(c, &trace.events);
    check = c.kind == AsyncChoice::Advance;
  }
  trace.steps = world.steps();
  return trace;
}

}  // namespace gathersim
