#include "gathersim/checker.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gathersim {

using nlohmann::json;

void Report::merge(const Report& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  undecided.insert(undecided.end(), other.undecided.begin(), other.undecided.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

json Report::to_json() const {
  auto list = [](const std::vector<Violation>& vs) {
    auto out = json::array();
    for (const Violation& v : vs) out.push_back({{"t", v.t}, {"detail", v.detail}});
    return out;
  };
  json j{{"check", check}, {"pass", pass()}, {"violations", list(violations)}, {"undecided", list(undecided)}};
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

namespace {

std::vector<Point> positions(const Config& c) {
  std::vector<Point> out;
  out.reserve(c.size());
  for (const RobotEntry& r : c) out.push_back(r.position);
  return out;
}

Config sorted(Config c) {
  std::sort(c.begin(), c.end(), [](const RobotEntry& a, const RobotEntry& b) {
    if (a.position != b.position) return a.position < b.position;
    return a.color < b.color;
  });
  return c;
}

std::string describe(const Config& c) {
  std::string out;
  for (const RobotEntry& r : c) {
    if (!out.empty()) out += ' ';
    out += to_string(r.position) + to_string(r.color);
  }
  return out;
}

bool is_phase_wrapped(AlgorithmId a) { return a == AlgorithmId::SixColor || a == AlgorithmId::ThreeColor; }

}  // namespace

// ---- Replay ----

Replay replay(const Trace& trace, bool verify_compute) {
  Replay out;
  Report& rep = out.report;
  const bool rounds = is_round_based(trace.header.scheduler);
  const Rat delta2 = trace.header.delta * trace.header.delta;

  Config state;
  std::vector<int> open;  // index into cycles, -1 when idle
  std::vector<bool> moving;
  std::vector<std::optional<Point>> last_progress;
  std::map<int, Point> progress_now;

  auto now = [&]() { return static_cast<long>(out.configs.size()) - 1; };

  for (const Event& e : trace.events) {
    if (e.kind == Event::ConfigAt) {
      if (out.configs.empty()) {
        if (e.t != 0) rep.violations.push_back({e.t, "first configuration is not at time 0"});
        state = e.config;
        open.assign(state.size(), -1);
        moving.assign(state.size(), false);
        last_progress.assign(state.size(), std::nullopt);
        out.configs.push_back(e.config);
        continue;
      }
      if (e.t != now() + 1) rep.violations.push_back({e.t, "configuration out of time order"});
      Config expected = state;
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (!moving[i]) continue;
        auto it = progress_now.find(static_cast<int>(i));
        if (it == progress_now.end()) {
          rep.violations.push_back({e.t, "robot " + std::to_string(i) + " in motion without a progress point"});
        } else {
          expected[i].position = it->second;
        }
      }
      if (expected != e.config) {
        rep.violations.push_back({e.t, "logged configuration differs from replay: logged " + describe(e.config) +
                                           ", replayed " + describe(expected)});
      }
      progress_now.clear();
      out.configs.push_back(e.config);
      continue;
    }
    if (out.configs.empty()) {
      rep.violations.push_back({e.t, "event before the initial configuration"});
      continue;
    }
    if (e.kind == Event::RoundStart) {
      if (e.t != now() || e.t != static_cast<long>(out.rounds.size())) {
        rep.violations.push_back({e.t, "round out of time order"});
      }
      out.rounds.push_back(e.activated);
      continue;
    }
    const long expect_t = e.kind == Event::MoveProgress ? now() + 1 : now();
    if (e.t != expect_t) {
      rep.violations.push_back({e.t, to_string(e.kind) + " logged at the wrong time"});
      continue;
    }
    if (e.robot < 0 || static_cast<std::size_t>(e.robot) >= state.size()) {
      rep.violations.push_back({e.t, "unknown robot id"});
      continue;
    }
    const int r = e.robot;
    const std::string who = "robot " + std::to_string(r) + ": ";
    CycleRecord* cyc = open[r] >= 0 ? &out.cycles[open[r]] : nullptr;

    switch (e.kind) {
      case Event::Look: {
        if (cyc) {
          rep.violations.push_back({e.t, who + "Look before the previous cycle finished"});
        }
        CycleRecord c;
        c.robot = r;
        c.t_look = e.t;
        c.seen = out.configs.back();
        out.cycles.push_back(std::move(c));
        open[r] = static_cast<int>(out.cycles.size()) - 1;
        break;
      }
      case Event::Compute: {
        if (!cyc || cyc->t_compute >= 0) {
          rep.violations.push_back({e.t, who + "Compute without a pending Look"});
          break;
        }
        if (!rounds && e.t <= cyc->t_look) rep.violations.push_back({e.t, who + "Compute at its Look time"});
        cyc->t_compute = e.t;
        cyc->color = e.color;
        cyc->origin = state[r].position;
        cyc->destination = e.point;
        state[r].color = e.color;
        if (verify_compute) {
          const Action expected = run_algorithm(trace.header.algorithm, snapshot_of(cyc->seen, r));
          if (expected != Action{e.color, e.point}) {
            rep.violations.push_back({e.t, who + "Compute gives " + to_string(e.color) + to_string(e.point) +
                                               ", algorithm gives " + to_string(expected.new_color) +
                                               to_string(expected.destination)});
          }
        }
        if (e.point == cyc->origin) open[r] = -1;
        break;
      }
      case Event::MoveBegin:
        if (!cyc || cyc->t_compute < 0 || cyc->t_begin >= 0) {
          rep.violations.push_back({e.t, who + "MoveBegin without a pending move"});
          break;
        }
        if (!on_segment(e.point, cyc->origin, cyc->destination)) {
          rep.violations.push_back({e.t, who + "stop point off the segment to the destination"});
        } else if (e.point != cyc->destination && dist2(cyc->origin, e.point) < delta2) {
          rep.violations.push_back({e.t, who + "move stopped short of delta"});
        }
        cyc->t_begin = e.t;
        cyc->stop = e.point;
        moving[r] = true;
        last_progress[r].reset();
        break;
      case Event::MoveProgress:
        if (!cyc || !moving[r]) {
          rep.violations.push_back({e.t, who + "progress without a move"});
          break;
        }
        if (!on_segment(e.point, cyc->origin, cyc->stop) || e.point == cyc->stop) {
          rep.violations.push_back({e.t, who + "progress point outside [origin, stop)"});
        } else if (last_progress[r] && dist2(cyc->origin, e.point) <= dist2(cyc->origin, *last_progress[r])) {
          rep.violations.push_back({e.t, who + "progress not strictly increasing"});
        }
        last_progress[r] = e.point;
        progress_now[r] = e.point;
        break;
      case Event::MoveEnd:
        if (!cyc || !moving[r]) {
          rep.violations.push_back({e.t, who + "MoveEnd without a move"});
          break;
        }
        if (!rounds && e.t < cyc->t_begin + 1) rep.violations.push_back({e.t, who + "move ended at its start time"});
        cyc->t_end = e.t;
        state[r].position = cyc->stop;
        moving[r] = false;
        open[r] = -1;
        break;
      default: break;
    }
  }
  if (out.configs.empty()) rep.violations.push_back({0, "trace has no configuration"});
  return out;
}

// ---- Monotonicity ----

namespace {

std::string f_class(const Config& c) {
  const auto pts = positions(c);
  auto hull = hull_of(pts);
  return hull ? to_string(hull->classification) : "onLDS";
}

std::string g_class(const Config& c) {
  std::vector<std::pair<Point, Mark>> marks;
  for (const RobotEntry& r : c) marks.push_back({r.position, Mark{inner_letter(r.color.inner)}});
  return classify_line(marks).to_string();
}

PotentialVec potential_of(AlgorithmId alg, const Config& c) {
  if (alg == AlgorithmId::ElectOneLds) return potential_f(positions(c));
  std::vector<RobotAt> robots;
  for (const RobotEntry& r : c) robots.push_back({r.position, r.color});
  return potential_g(robots);
}

std::string vec_text(const PotentialVec& v) { return to_json(v).dump(); }

}  // namespace

Report check_monotone(const Trace& trace) {
  Report rep{"monotone"};
  const AlgorithmId alg = trace.header.algorithm;
  if (!is_round_based(trace.header.scheduler) ||
      (alg != AlgorithmId::ElectOneLds && alg != AlgorithmId::LuGather)) {
    rep.notes.push_back("not applicable to " + to_string(alg) + " under " + to_string(trace.header.scheduler));
    return rep;
  }
  const Replay rp = replay(trace, false);
  const auto& cfg = rp.configs;
  for (std::size_t t = 0; t < rp.rounds.size() && t + 1 < cfg.size(); ++t) {
    bool effective = false;
    for (const CycleRecord& c : rp.cycles) {
      if (c.t_look != static_cast<long>(t)) continue;
      const RobotEntry& before = c.seen[c.robot];
      if (c.t_compute >= 0 && (c.color != before.color || c.destination != before.position)) effective = true;
    }
    const long tl = static_cast<long>(t);
    if (!effective) {
      if (cfg[t + 1] != cfg[t]) rep.violations.push_back({tl, "round without an enabled robot changed the configuration"});
      continue;
    }
    if (alg == AlgorithmId::LuGather && !is_on_lds(positions(cfg[t]))) {
      rep.violations.push_back({tl, "configuration left the line"});
      continue;
    }
    if (alg == AlgorithmId::LuGather && !is_on_lds(positions(cfg[t + 1]))) {
      rep.violations.push_back({tl + 1, "configuration left the line"});
      continue;
    }
    const PotentialVec before = potential_of(alg, cfg[t]);
    const PotentialVec after = potential_of(alg, cfg[t + 1]);
    const std::string row = alg == AlgorithmId::ElectOneLds ? f_class(cfg[t]) + " -> " + f_class(cfg[t + 1])
                                                            : g_class(cfg[t]) + " -> " + g_class(cfg[t + 1]);
    const Ordering o = lex_compare(after, before);
    if (o == Ordering::Less) continue;
    const std::string detail = "row " + row + ": before " + vec_text(before) + ", after " + vec_text(after);
    if (o == Ordering::Undecided) {
      rep.undecided.push_back({tl, detail});
    } else {
      rep.violations.push_back({tl, "potential " + to_string(o) + " at " + detail});
    }
  }
  return rep;
}

// ---- Phase cycle ----

namespace {

char pure_phase(const Config& c) {
  const Phase p = c.front().color.phase;
  for (const RobotEntry& r : c) {
    if (r.color.phase != p) return 0;
  }
  return phase_letter(p);
}

// First time the configuration is collinear; size() when never.
std::size_t first_on_lds(const std::vector<Config>& configs) {
  for (std::size_t t = 0; t < configs.size(); ++t) {
    if (is_on_lds(positions(configs[t]))) return t;
  }
  return configs.size();
}

}  // namespace

Report check_cycle_snapshot(const Trace& trace) {
  Report rep{"cycle"};
  const AlgorithmId alg = trace.header.algorithm;
  if (!is_phase_wrapped(alg)) {
    rep.notes.push_back("not applicable to " + to_string(alg));
    return rep;
  }
  const Replay rp = replay(trace, false);
  const auto& cfg = rp.configs;
  if (cfg.empty()) return rep;
  // The three-color algorithm leaves the wrapper once the robots are collinear.
  const std::size_t limit = alg == AlgorithmId::ThreeColor ? first_on_lds(cfg) : cfg.size();

  // epoch[t]: index of the maximal all-S run containing t, -1 elsewhere.
  std::vector<long> epoch(cfg.size(), -1);
  long next = 0;
  for (std::size_t t = 0; t < limit; ++t) {
    if (pure_phase(cfg[t]) != 'S') continue;
    epoch[t] = (t > 0 && epoch[t - 1] >= 0) ? epoch[t - 1] : next++;
  }
  std::map<long, Config> first_seen;
  for (const CycleRecord& c : rp.cycles) {
    if (c.t_look < 0 || static_cast<std::size_t>(c.t_look) >= limit || epoch[c.t_look] < 0) continue;
    const Config seen = sorted(c.seen);
    auto [it, fresh] = first_seen.emplace(epoch[c.t_look], seen);
    if (!fresh && it->second != seen) {
      rep.violations.push_back({c.t_look, "robot " + std::to_string(c.robot) +
                                              " ran the inner algorithm on a different configuration: " +
                                              describe(seen) + " vs " + describe(it->second)});
    }
  }

  char last = 0;
  for (std::size_t t = 0; t < limit; ++t) {
    const char p = pure_phase(cfg[t]);
    if (p == 0 || p == last) continue;
    if (last != 0) {
      const bool ok = (last == 'S' && p == 'M') || (last == 'M' && p == 'E') || (last == 'E' && p == 'S');
      if (!ok) rep.violations.push_back({static_cast<long>(t), std::string("phase order ") + last + " -> " + p});
    }
    last = p;
  }
  return rep;
}

// ---- onLDS switch ----

Report check_onlds_switch(const Trace& trace) {
  Report rep{"switch"};
  const AlgorithmId alg = trace.header.algorithm;
  if (!is_phase_wrapped(alg)) {
    rep.notes.push_back("not applicable to " + to_string(alg));
    return rep;
  }
  const Replay rp = replay(trace, false);
  const std::size_t ts = first_on_lds(rp.configs);
  if (ts == rp.configs.size()) {
    rep.notes.push_back("configuration never became onLDS");
    return rep;
  }
  const long t = static_cast<long>(ts);
  const Config& c = rp.configs[ts];

  std::vector<Mark> marks(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) marks[i].letter = phase_letter(c[i].color.phase);
  std::vector<Point> pending_destinations;
  for (const CycleRecord& cy : rp.cycles) {
    if (cy.t_look >= t) continue;
    const bool computed = cy.t_compute >= 0 && cy.t_compute < t;
    if (!computed) {
      // A Compute that keeps the phase leaves nothing pending to show.
      if (cy.t_compute < 0) {
        marks[cy.robot].pending_color = '?';
      } else if (cy.color.phase != c[cy.robot].color.phase) {
        marks[cy.robot].pending_color = phase_letter(cy.color.phase);
      }
      if (cy.t_compute >= 0) pending_destinations.push_back(cy.destination);
      continue;
    }
    const bool moves = cy.destination != cy.origin;
    if (moves && (cy.t_end < 0 || t <= cy.t_end)) {
      marks[cy.robot].pending_move = true;
      pending_destinations.push_back(cy.destination);
    }
  }
  std::vector<std::pair<Point, Mark>> robots;
  for (std::size_t i = 0; i < c.size(); ++i) robots.push_back({c[i].position, marks[i]});
  const LineView line = classify_line(robots);

  static const Pattern kShape1 = Pattern::must("SS^*S");
  static const Pattern kShape2 = Pattern::must(
      "(S|S[pc->M]|M|M[pm])(S|S[pc->M]|M|M[pm])^*(S|S[pc->M]|M|M[pm])");
  static const Pattern kShape3 = Pattern::must(
      "(M|M[pm,pc->E]|E)(M|M[pm,pc->E]|E)^*(M|M[pm,pc->E]|E)");
  static const Pattern kShape4 = Pattern::must("(S|S[pc->M]|M)");
  static const Pattern kShape5 = Pattern::must("(M|M[pc->E]|E)");

  const bool has_m = line.count('M') > 0;
  int shape = 0;
  if (kShape1.matches(line)) {
    shape = 1;
  } else if (has_m && kShape2.matches(line)) {
    shape = 2;
  } else if (has_m && kShape3.matches(line)) {
    shape = 3;
  } else if (has_m && kShape4.matches(line)) {
    shape = 4;
  } else if (has_m && kShape5.matches(line)) {
    shape = 5;
  }
  if (shape == 0) {
    rep.violations.push_back({t, "first onLDS color configuration " + line.to_string() + " matches no switch shape"});
  } else {
    rep.notes.push_back("shape " + std::to_string(shape) + " at t=" + std::to_string(t) + ": " + line.to_string());
  }
  if (line.stations.size() >= 2) {
    for (const Point& d : pending_destinations) {
      if (sgn(orient(line.left(), line.right(), d)) != 0) {
        rep.violations.push_back({t, "pending destination " + to_string(d) + " is off the line"});
      }
    }
  }
  return rep;
}

// ---- 2 delta shrink ----

namespace {

struct LoopMark {
  long t;
  bool ss;  // false: EE^*E
  Rat dis2;
};

std::vector<LoopMark> loop_marks(const std::vector<Config>& cfg) {
  static const Pattern kSS = Pattern::must("SS");
  static const Pattern kEE = Pattern::must("EE^*E");
  std::vector<LoopMark> out;
  int prev = 0;  // 0 none, 1 SS, 2 EE*E
  for (std::size_t t = 0; t < cfg.size(); ++t) {
    int now = 0;
    const auto pts = positions(cfg[t]);
    if (is_on_lds(pts)) {
      std::vector<std::pair<Point, Mark>> robots;
      for (const RobotEntry& r : cfg[t]) robots.push_back({r.position, Mark{phase_letter(r.color.phase)}});
      const LineView line = classify_line(robots);
      if (kSS.matches(line)) {
        now = 1;
      } else if (kEE.matches(line)) {
        now = 2;
      }
      if (now != 0 && now != prev) out.push_back({static_cast<long>(t), now == 1, dist2(line.left(), line.right())});
    }
    prev = now;
  }
  return out;
}

bool applies_shrink(AlgorithmId a) { return a == AlgorithmId::LuGatherAsync || a == AlgorithmId::ThreeColor; }

}  // namespace

int count_ss_loops(const Trace& trace) {
  const Replay rp = replay(trace, false);
  int n = 0;
  for (const LoopMark& m : loop_marks(rp.configs)) n += m.ss ? 1 : 0;
  return n;
}

Report check_shrink(const Trace& trace) {
  Report rep{"shrink"};
  if (!applies_shrink(trace.header.algorithm)) {
    rep.notes.push_back("not applicable to " + to_string(trace.header.algorithm));
    return rep;
  }
  const Replay rp = replay(trace, false);
  const auto marks = loop_marks(rp.configs);
  const RootSum two_delta = RootSum::rational(2 * trace.header.delta);

  auto require = [&](const LoopMark& from, const LoopMark& to, const char* what) {
    RootSum gap = RootSum::sqrt_of(from.dis2) - RootSum::sqrt_of(to.dis2);
    gap = gap - two_delta;
    const Ordering o = sign_of(gap);
    const std::string detail = std::string(what) + " from t=" + std::to_string(from.t) + ": endpoint distance^2 " +
                               format_rat(from.dis2) + " -> " + format_rat(to.dis2);
    if (o == Ordering::Undecided) {
      rep.undecided.push_back({to.t, detail});
    } else if (o == Ordering::Less) {
      rep.violations.push_back({to.t, "shrink below 2 delta, " + detail});
    }
  };

  for (std::size_t i = 0; i < marks.size(); ++i) {
    if (!marks[i].ss) continue;
    bool seen_e = false;
    for (std::size_t j = i + 1; j < marks.size(); ++j) {
      if (!marks[j].ss && !seen_e) {
        require(marks[i], marks[j], "SS to EE*E");
        seen_e = true;
      }
      if (marks[j].ss) {
        require(marks[i], marks[j], "SS to SS");
        break;
      }
    }
  }
  return rep;
}

// ---- Gathering ----

GatherResult check_gathered(const Trace& trace) {
  GatherResult out;
  const Replay rp = replay(trace, false);
  const auto& cfg = rp.configs;
  if (cfg.empty()) return out;

  std::optional<std::size_t> since;
  for (std::size_t t = 0; t < cfg.size(); ++t) {
    if (all_colocated(cfg[t])) {
      if (!since) since = t;
    } else if (since) {
      out.report.violations.push_back({static_cast<long>(t), "robots left the gathering point reached at t=" +
                                                                 std::to_string(*since)});
      since.reset();
    }
  }
  bool quiet = true;
  for (std::size_t i = 0; i < cfg.back().size(); ++i) {
    quiet = quiet && !enabled_in(trace.header.algorithm, cfg.back(), i);
  }
  out.gathered = since.has_value() && quiet && out.report.violations.empty();
  if (out.gathered) out.time = static_cast<long>(*since);
  if (trace.status == RunStatus::Gathered && !out.gathered) {
    out.report.violations.push_back({static_cast<long>(cfg.size()) - 1, "trace claims gathering that replay refutes"});
  }
  return out;
}

// ---- Equivariance ----

Report check_equivariance(AlgorithmId alg, const Snapshot& snapshot, const std::vector<Frame>& frames) {
  Report rep{"equivariance"};
  const Action base = run_algorithm(alg, snapshot);
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const Frame& f = frames[k];
    if (!f.legal()) throw std::invalid_argument("illegal frame: not a positive multiple of a rotation");
    const Action moved = run_algorithm(alg, f.apply(snapshot));
    const Point back = f.invert(moved.destination);
    if (moved.new_color != base.new_color || back != base.destination) {
      std::ostringstream d;
      d << "frame " << k << " (cos " << format_rat(f.cos_a) << ", sin " << format_rat(f.sin_a) << ", scale "
        << format_rat(f.scale) << ", shift " << to_string(f.translation) << "): " << to_string(moved.new_color)
        << to_string(back) << " vs " << to_string(base.new_color) << to_string(base.destination);
      rep.violations.push_back({0, d.str()});
    }
  }
  return rep;
}

// ---- Table rows ----

std::optional<std::string> row_mismatch(const TableRow& row, const PotentialVec& before, const PotentialVec& after) {
  if (row.dec.empty()) return "row lists no decreasing component";
  const int first = *std::min_element(row.dec.begin(), row.dec.end());
  auto listed = [](const std::vector<int>& v, int k) { return std::find(v.begin(), v.end(), k) != v.end(); };
  bool grew = false;
  for (int k = 1; k <= static_cast<int>(before.size()); ++k) {
    const Ordering o = compare(after[k - 1], before[k - 1]);
    const std::string name = "component " + std::to_string(k);
    if (o == Ordering::Undecided) return name + " undecided";
    if (k < first) {
      if (o != Ordering::Equal) return name + " changed before the first decreasing component";
    } else if (k == first) {
      if (o != Ordering::Less) return name + " did not decrease";
    } else if (listed(row.inc, k)) {
      if (o == Ordering::Less) return name + " decreased but is listed as increasing";
      grew = grew || o == Ordering::Greater;
    } else if (o == Ordering::Greater) {
      return name + " increased but is not listed as increasing";
    }
  }
  if (!row.inc.empty() && !grew) return "no listed component increased";
  return std::nullopt;
}

// ---- Enumeration ----

namespace {

std::string config_key(const Config& c) {
  std::string key;
  for (const RobotEntry& r : c) key += to_string(r.position) + to_string(r.color) + ';';
  return key;
}

struct Enumerator {
  AlgorithmId alg;
  Rat delta;
  const EnumerationOptions& opt;
  EnumerationResult& res;
  std::map<std::string, int> explored;

  bool goal(const Config& c) const {
    return alg == AlgorithmId::ElectOneLds ? is_on_lds(positions(c)) : all_colocated(c);
  }

  void visit(const Config& c, int depth, long level) {
    if (res.aborted) return;
    const std::string key = config_key(c);
    auto it = explored.find(key);
    if (it != explored.end() && it->second >= depth) return;
    const bool first_visit = it == explored.end();
    explored[key] = depth;
    if (first_visit && ++res.nodes > opt.node_ceiling) {
      res.aborted = true;
      res.report.notes.push_back("node ceiling reached; partial result");
      return;
    }

    std::vector<int> enabled;
    std::vector<Action> actions(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Snapshot s = snapshot_of(c, i);
      actions[i] = run_algorithm(alg, s);
      if (is_enabled(s, actions[i])) enabled.push_back(static_cast<int>(i));
    }
    if (enabled.empty()) {
      if (first_visit) {
        ++res.maximal_paths;
        res.terminals.push_back(c);
        if (!goal(c)) res.report.violations.push_back({level, "maximal path ends outside the goal: " + describe(c)});
      }
      return;
    }
    if (depth == 0) {
      ++res.truncated_paths;
      return;
    }
    const PotentialVec here = potential_of(alg, c);
    const std::size_t m = enabled.size();
    const std::size_t nf = opt.fractions.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
      std::vector<int> active;
      for (std::size_t b = 0; b < m; ++b) {
        if (mask >> b & 1) active.push_back(enabled[b]);
      }
      std::size_t combos = 1;
      for (std::size_t k = 0; k < active.size(); ++k) combos *= nf;
      for (std::size_t combo = 0; combo < combos; ++combo) {
        Config next = c;
        std::size_t code = combo;
        for (int id : active) {
          const Rat& frac = opt.fractions[code % nf];
          code /= nf;
          next[id].color = actions[id].new_color;
          next[id].position = apply_move(c[id].position, actions[id].destination, frac, delta);
        }
        ++res.edges;
        if (alg == AlgorithmId::LuGather && !is_on_lds(positions(next))) {
          res.report.violations.push_back({level, "configuration left the line: " + describe(next)});
          continue;
        }
        const PotentialVec there = potential_of(alg, next);
        const Ordering o = lex_compare(there, here);
        if (o == Ordering::Undecided) {
          res.report.undecided.push_back({level, describe(c) + " -> " + describe(next)});
        } else if (o != Ordering::Less) {
          res.report.violations.push_back({level, "potential " + to_string(o) + ": " + describe(c) + " -> " +
                                                      describe(next)});
        }
        visit(next, depth - 1, level + 1);
        if (res.aborted) return;
      }
    }
  }
};

}  // namespace

EnumerationResult enumerate_unfair(const Config& start, AlgorithmId alg, const Rat& delta,
                                   const EnumerationOptions& opt) {
  if (alg != AlgorithmId::ElectOneLds && alg != AlgorithmId::LuGather) {
    throw std::invalid_argument("enumeration supports elect-one-lds and lu-gather");
  }
  if (opt.fractions.empty()) throw std::invalid_argument("enumeration needs at least one move fraction");
  EnumerationResult res;
  if (opt.depth <= 0) return res;
  Enumerator e{alg, delta, opt, res, {}};
  e.visit(start, opt.depth, 0);
  return res;
}

// ---- Fuzzing ----

Scenario random_scenario(const FuzzOptions& opt, std::uint64_t seed) {
  if (opt.n_min < 1 || opt.n_max < opt.n_min) throw std::invalid_argument("bad robot count range");
  if (opt.bound < 1 || opt.denominator < 1) throw std::invalid_argument("bad coordinate range");
  if (opt.deltas.empty()) throw std::invalid_argument("no delta to choose from");
  Rng rng(seed);
  auto coord = [&](long bound) {
    const long p = static_cast<long>(rng.below(2 * bound + 1)) - bound;
    const long q = static_cast<long>(rng.below(opt.denominator)) + 1;
    return ratio(p, q);
  };

  Scenario s;
  s.algorithm = opt.algorithm;
  s.scheduler = opt.scheduler;
  s.adversary = opt.adversary;
  s.seed = rng.below(std::numeric_limits<std::uint64_t>::max());
  s.step_budget = opt.step_budget;
  s.fairness_bound = opt.fairness_bound;
  s.move_span_cap = opt.move_span_cap;
  s.delta = opt.deltas[rng.below(opt.deltas.size())];
  const int n = opt.n_min + static_cast<int>(rng.below(opt.n_max - opt.n_min + 1));

  Point base{0, 0};
  Point dir{1, 0};
  if (opt.on_line) {
    base = {coord(opt.bound / 2), coord(opt.bound / 2)};
    do {
      dir = {Rat(static_cast<long>(rng.below(11)) - 5), Rat(static_cast<long>(rng.below(11)) - 5)};
    } while (sgn(dir.x) == 0 && sgn(dir.y) == 0);
  }
  const long step_bound = std::max<long>(1, opt.bound / 10);
  std::vector<Point> used;
  int attempts = 0;
  while (static_cast<int>(used.size()) < n) {
    if (++attempts > 100000) throw std::invalid_argument("cannot place distinct robots in the coordinate range");
    const Point p = opt.on_line ? base + dir * coord(step_bound) : Point{coord(opt.bound), coord(opt.bound)};
    if (std::find(used.begin(), used.end(), p) != used.end()) continue;
    used.push_back(p);
  }
  for (const Point& p : used) s.robots.push_back({p, initial_color(s.algorithm)});
  return s;
}

Report check_all(const Trace& trace) {
  Report rep{"all"};
  const AlgorithmId alg = trace.header.algorithm;
  rep.merge(replay(trace, true).report);
  if (is_round_based(trace.header.scheduler)) rep.merge(check_monotone(trace));
  if (is_phase_wrapped(alg)) {
    rep.merge(check_cycle_snapshot(trace));
    rep.merge(check_onlds_switch(trace));
  }
  if (applies_shrink(alg)) rep.merge(check_shrink(trace));

  const long end = static_cast<long>(trace.steps);
  if (alg == AlgorithmId::ElectOneLds) {
    if (trace.status == RunStatus::BudgetExhausted) rep.violations.push_back({end, "budget exhausted before onLDS"});
    if (!is_on_lds(positions(trace.final_config()))) {
      rep.violations.push_back({end, "final configuration is not onLDS"});
    }
  } else {
    const GatherResult g = check_gathered(trace);
    rep.merge(g.report);
    if (!g.gathered || trace.status != RunStatus::Gathered) {
      rep.violations.push_back({end, "run ended without gathering (" + to_string(trace.status) + ")"});
    }
  }
  return rep;
}

bool symmetric_tie(const Snapshot& s, const Action& a) {
  const auto pts = s.points();
  if (pts.size() < 3) return false;
  if (collinear(pts)) {
    const auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
    return s.self == midpoint(*lo, *hi) && (a.destination == *lo || a.destination == *hi);
  }
  const auto hull = hull_of(pts);
  if (s.self != hull_center(*hull) || !hull->is_vertex(a.destination)) return false;
  const Rat d = dist2(s.self, a.destination);
  return std::count_if(hull->vertices.begin(), hull->vertices.end(),
                       [&](const Point& v) { return dist2(s.self, v) == d; }) > 1;
}

std::vector<Frame> standard_frames() {
  return {*Frame::from_triple(1, 0, 1, 1, {0, 0}),
          *Frame::from_triple(3, 4, 5, ratio(7, 3), {ratio(1, 2), -3}),
          *Frame::from_triple(-5, 12, 13, 2, {-11, ratio(5, 7)}),
          *Frame::from_triple(8, -15, 17, ratio(1, 9), {100, 0}),
          *Frame::from_triple(-20, -21, 29, 5, {ratio(-3, 4), ratio(9, 2)})};
}

Report check_trace_equivariance(const Trace& trace, const std::vector<Frame>& frames) {
  Report rep{"equivariance"};
  const Replay rp = replay(trace, false);
  std::size_t skipped = 0;
  for (const CycleRecord& c : rp.cycles) {
    const Snapshot s = snapshot_of(c.seen, c.robot);
    if (symmetric_tie(s, run_algorithm(trace.header.algorithm, s))) {
      ++skipped;
      continue;
    }
    Report one = check_equivariance(trace.header.algorithm, s, frames);
    for (Violation& v : one.violations) v.t = c.t_look;
    rep.merge(one);
  }
  if (skipped) rep.notes.push_back(std::to_string(skipped) + " symmetric-tie snapshots skipped");
  return rep;
}

Report run_checks(const Trace& trace, const std::vector<std::string>& names) {
  Report rep{"checks"};
  for (const std::string& name : names) {
    if (name == "all") {
      rep.merge(check_all(trace));
      rep.merge(check_trace_equivariance(trace, standard_frames()));
    } else if (name == "monotone") {
      rep.merge(check_monotone(trace));
    } else if (name == "cycle") {
      rep.merge(check_cycle_snapshot(trace));
    } else if (name == "switch") {
      rep.merge(check_onlds_switch(trace));
    } else if (name == "shrink") {
      rep.merge(check_shrink(trace));
    } else if (name == "gather") {
      rep.merge(check_gathered(trace).report);
    } else if (name == "equivariance") {
      rep.merge(check_trace_equivariance(trace, standard_frames()));
    } else {
      throw std::invalid_argument("unknown check " + name);
    }
  }
  if (names.size() == 1) rep.check = names.front();
  return rep;
}

}  // namespace gathersim
