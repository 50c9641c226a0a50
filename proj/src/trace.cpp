#include "gathersim/trace.hpp"

#include "gathersim/potentials.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace gathersim {

using nlohmann::json;

std::string to_string(SchedulerKind s) {
  switch (s) {
    case SchedulerKind::FSync: return "fsync";
    case SchedulerKind::SSync: return "ssync";
    case SchedulerKind::UnfairSSync: return "ssync-unfair";
    case SchedulerKind::Async: return "async";
  }
  return "?";
}

std::optional<SchedulerKind> parse_scheduler(std::string_view text) {
  for (auto s : {SchedulerKind::FSync, SchedulerKind::SSync, SchedulerKind::UnfairSSync, SchedulerKind::Async}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::string to_string(Event::Kind k) {
  switch (k) {
    case Event::Look: return "Look";
    case Event::Compute: return "Compute";
    case Event::MoveBegin: return "MoveBegin";
    case Event::MoveProgress: return "MoveProgress";
    case Event::MoveEnd: return "MoveEnd";
    case Event::RoundStart: return "RoundStart";
    case Event::ConfigAt: return "Config";
  }
  return "?";
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Gathered: return "gathered";
    case RunStatus::Terminal: return "terminal";
    case RunStatus::BudgetExhausted: return "budget";
  }
  return "?";
}

const Config& Trace::initial() const {
  for (const Event& e : events) {
    if (e.kind == Event::ConfigAt) return e.config;
  }
  throw TraceFormatError("trace has no configuration");
}

const Config& Trace::final_config() const {
  for (auto it = events.rbegin(); it != events.rend(); ++it) {
    if (it->kind == Event::ConfigAt) return it->config;
  }
  throw TraceFormatError("trace has no configuration");
}

json point_json(const Point& p) { return json{{"x", format_rat(p.x)}, {"y", format_rat(p.y)}}; }

namespace {

Rat rat_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw TraceFormatError(std::string("missing rational field ") + key);
  auto r = parse_rat(j[key].get<std::string>());
  if (!r) throw TraceFormatError(std::string("malformed rational in ") + key);
  return *r;
}

Color color_field(const json& j) {
  if (!j.contains("color") || !j["color"].is_string()) throw TraceFormatError("missing color");
  auto c = parse_color(j["color"].get<std::string>());
  if (!c) throw TraceFormatError("malformed color");
  return *c;
}

std::optional<PotentialVec> annotation(const TraceHeader& h, const Config& config) {
  if (h.algorithm == AlgorithmId::ElectOneLds) {
    std::vector<Point> pts;
    for (const auto& r : config) pts.push_back(r.position);
    return potential_f(pts);
  }
  if (h.algorithm == AlgorithmId::LuGather) {
    std::vector<Point> pts;
    std::vector<RobotAt> robots;
    for (const auto& r : config) {
      pts.push_back(r.position);
      robots.push_back({r.position, r.color});
    }
    if (is_on_lds(pts)) return potential_g(robots);
  }
  return std::nullopt;
}

}  // namespace

Point point_from_json(const json& j) {
  if (!j.is_object()) throw TraceFormatError("point must be an object");
  return {rat_field(j, "x"), rat_field(j, "y")};
}

void write_trace(std::ostream& out, const Trace& trace, bool annotate) {
  const TraceHeader& h = trace.header;
  json header{{"kind", "Header"},
              {"algorithm", to_string(h.algorithm)},
              {"scheduler", to_string(h.scheduler)},
              {"delta", format_rat(h.delta)},
              {"n", h.n},
              {"adversary", h.adversary},
              {"seed", h.seed},
              {"fairness_bound", h.fairness_bound},
              {"move_span_cap", h.move_span_cap},
              {"step_budget", h.step_budget}};
  out << header.dump() << '\n';

  for (const Event& e : trace.events) {
    json line{{"t", e.t}, {"kind", to_string(e.kind)}};
    if (e.robot >= 0) line["robot"] = e.robot;
    switch (e.kind) {
      case Event::Compute:
        line["color"] = to_string(e.color);
        line["dest"] = point_json(e.point);
        break;
      case Event::MoveBegin: line["stop"] = point_json(e.point); break;
      case Event::MoveProgress: line["at"] = point_json(e.point); break;
      case Event::RoundStart: line["activated"] = e.activated; break;
      case Event::ConfigAt: {
        auto entries = json::array();
        for (const RobotEntry& r : e.config) {
          json item = point_json(r.position);
          item["color"] = to_string(r.color);
          entries.push_back(std::move(item));
        }
        line["entries"] = std::move(entries);
        if (annotate) {
          if (auto pot = annotation(h, e.config)) line[h.algorithm == AlgorithmId::ElectOneLds ? "f" : "g"] = to_json(*pot);
        }
        break;
      }
      default: break;
    }
    out << line.dump() << '\n';
  }
  json end{{"kind", "End"}, {"status", to_string(trace.status)}, {"steps", trace.steps}};
  out << end.dump() << '\n';
}

std::string trace_to_string(const Trace& trace, bool annotate) {
  std::ostringstream out;
  write_trace(out, trace, annotate);
  return out.str();
}

Trace read_trace(std::istream& in) {
  Trace trace;
  std::string text;
  bool have_header = false;
  bool have_end = false;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) continue;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& ex) {
      throw TraceFormatError("line " + std::to_string(line_no) + ": " + ex.what());
    }
    if (!j.is_object() || !j.contains("kind")) throw TraceFormatError("line " + std::to_string(line_no) + ": no kind");
    const std::string kind = j["kind"].get<std::string>();
    try {
      if (kind == "Header") {
        auto alg = parse_algorithm(j.at("algorithm").get<std::string>());
        auto sch = parse_scheduler(j.at("scheduler").get<std::string>());
        auto delta = parse_rat(j.at("delta").get<std::string>());
        if (!alg || !sch || !delta) throw TraceFormatError("bad header");
        TraceHeader& h = trace.header;
        h.algorithm = *alg;
        h.scheduler = *sch;
        h.delta = *delta;
        h.n = j.at("n").get<int>();
        h.adversary = j.value("adversary", "random");
        h.seed = j.value("seed", std::uint64_t{0});
        h.fairness_bound = j.value("fairness_bound", std::uint64_t{0});
        h.move_span_cap = j.value("move_span_cap", 16u);
        h.step_budget = j.value("step_budget", std::uint64_t{0});
        have_header = true;
        continue;
      }
      if (kind == "End") {
        const std::string status = j.at("status").get<std::string>();
        if (status == "gathered") {
          trace.status = RunStatus::Gathered;
        } else if (status == "terminal") {
          trace.status = RunStatus::Terminal;
        } else if (status == "budget") {
          trace.status = RunStatus::BudgetExhausted;
        } else {
          throw TraceFormatError("bad status");
        }
        trace.steps = j.at("steps").get<std::uint64_t>();
        have_end = true;
        continue;
      }
      Event e;
      e.t = j.at("t").get<long>();
      e.robot = j.value("robot", -1);
      if (kind == "Look") {
        e.kind = Event::Look;
      } else if (kind == "Compute") {
        e.kind = Event::Compute;
        e.color = color_field(j);
        e.point = point_from_json(j.at("dest"));
      } else if (kind == "MoveBegin") {
        e.kind = Event::MoveBegin;
        e.point = point_from_json(j.at("stop"));
      } else if (kind == "MoveProgress") {
        e.kind = Event::MoveProgress;
        e.point = point_from_json(j.at("at"));
      } else if (kind == "MoveEnd") {
        e.kind = Event::MoveEnd;
      } else if (kind == "RoundStart") {
        e.kind = Event::RoundStart;
        e.activated = j.at("activated").get<std::vector<int>>();
      } else if (kind == "Config") {
        e.kind = Event::ConfigAt;
        for (const json& item : j.at("entries")) e.config.push_back({point_from_json(item), color_field(item)});
      } else {
        throw TraceFormatError("unknown kind " + kind);
      }
      if (e.kind != Event::RoundStart && e.kind != Event::ConfigAt && e.robot < 0) {
        throw TraceFormatError("event without robot");
      }
      trace.events.push_back(std::move(e));
    } catch (const json::exception& ex) {
      throw TraceFormatError("line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  if (!have_header) throw TraceFormatError("missing header");
  if (!have_end) throw TraceFormatError("missing end line");
  return trace;
}

}  // namespace gathersim
