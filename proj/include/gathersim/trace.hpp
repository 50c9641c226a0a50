#pragma once

#include "gathersim/color.hpp"
#include "gathersim/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace gathersim {

enum class SchedulerKind { FSync, SSync, UnfairSSync, Async };

std::string to_string(SchedulerKind s);
std::optional<SchedulerKind> parse_scheduler(std::string_view text);
inline bool is_round_based(SchedulerKind s) { return s != SchedulerKind::Async; }

struct RobotEntry {
  Point position;
  Color color;
  friend bool operator==(const RobotEntry&, const RobotEntry&) = default;
};
using Config = std::vector<RobotEntry>;

struct Event {
  enum Kind { Look, Compute, MoveBegin, MoveProgress, MoveEnd, RoundStart, ConfigAt } kind;
  long t = 0;
  int robot = -1;
  Color color;                 // Compute
  Point point;                 // Compute: destination, MoveBegin: stop point, MoveProgress: position
  std::vector<int> activated;  // RoundStart
  Config config;               // ConfigAt
};

std::string to_string(Event::Kind k);

struct TraceHeader {
  AlgorithmId algorithm = AlgorithmId::ThreeColor;
  SchedulerKind scheduler = SchedulerKind::Async;
  Rat delta = 1;
  int n = 0;
  std::string adversary = "random";
  std::uint64_t seed = 0;
  std::uint64_t fairness_bound = 0;
  unsigned move_span_cap = 16;
  std::uint64_t step_budget = 0;
};

enum class RunStatus { Gathered, Terminal, BudgetExhausted };
std::string to_string(RunStatus s);

struct Trace {
  TraceHeader header;
  std::vector<Event> events;
  RunStatus status = RunStatus::Terminal;
  std::uint64_t steps = 0;

  const Config& initial() const;
  const Config& final_config() const;
};

struct TraceFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json point_json(const Point& p);
Point point_from_json(const nlohmann::json& j);

// JSON Lines. With `annotate`, Config lines of ElectOneLDS and LU-Gather
// runs carry the matching potential vector.
void write_trace(std::ostream& out, const Trace& trace, bool annotate = false);
std::string trace_to_string(const Trace& trace, bool annotate = false);
// Throws TraceFormatError.
Trace read_trace(std::istream& in);

}  // namespace gathersim
