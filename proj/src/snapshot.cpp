#include "gathersim/snapshot.hpp"

namespace gathersim {

std::vector<Point> Snapshot::points() const {
  std::vector<Point> out;
  out.reserve(entries.size());
  for (const auto& [p, colors] : entries) out.push_back(p);
  return out;
}

ColorSet Snapshot::all_colors() const {
  ColorSet out;
  for (const auto& [p, colors] : entries) out |= colors;
  return out;
}

std::optional<Frame> Frame::from_triple(long a, long b, long c, Rat scale, Point translation) {
  if (c == 0 || Int(a) * a + Int(b) * b != Int(c) * c) return std::nullopt;
  Frame f{ratio(a, c), ratio(b, c), std::move(scale), std::move(translation)};
  if (!f.legal()) return std::nullopt;
  return f;
}

bool Frame::legal() const { return sgn(scale) > 0 && cos_a * cos_a + sin_a * sin_a == 1; }

Point Frame::apply(const Point& p) const {
  return Point{cos_a * p.x - sin_a * p.y, sin_a * p.x + cos_a * p.y} * scale + translation;
}

Point Frame::invert(const Point& p) const {
  const Point q = p - translation;
  const Rat inv = 1 / scale;
  return Point{cos_a * q.x + sin_a * q.y, -sin_a * q.x + cos_a * q.y} * inv;
}

Snapshot Frame::apply(const Snapshot& s) const {
  Snapshot out;
  for (const auto& [p, colors] : s.entries) out.entries.emplace(apply(p), colors);
  out.self = apply(s.self);
  out.own_light = s.own_light;
  return out;
}

Snapshot make_snapshot(const std::vector<std::pair<Point, Color>>& robots, std::size_t observer) {
  Snapshot s;
  for (const auto& [p, c] : robots) s.entries[p].insert(c);
  s.self = robots[observer].first;
  s.own_light = robots[observer].second;
  return s;
}

}  // namespace gathersim
