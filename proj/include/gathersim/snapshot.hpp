#pragma once

#include "gathersim/color.hpp"
#include "gathersim/geometry.hpp"

#include <map>
#include <optional>
#include <vector>

namespace gathersim {

// What a robot sees in one Look: the set of colors at every occupied point,
// its own position and its own light.
struct Snapshot {
  std::map<Point, ColorSet> entries;
  Point self;
  Color own_light;

  std::vector<Point> points() const;
  // Union of colors over all points.
  ColorSet all_colors() const;
};

struct Action {
  Color new_color;
  Point destination;

  friend bool operator==(const Action&, const Action&) = default;
};

// Orientation-preserving similarity x -> scale * R x + translation with a
// rational rotation R = [[c, -s], [s, c]], c^2 + s^2 = 1.
struct Frame {
  Rat cos_a = 1;
  Rat sin_a = 0;
  Rat scale = 1;
  Point translation{0, 0};

  // Frame with rotation (a/c, b/c) from a Pythagorean triple a^2 + b^2 = c^2.
  static std::optional<Frame> from_triple(long a, long b, long c, Rat scale, Point translation);
  // Checks that the linear part is a positive rational multiple of a rotation.
  bool legal() const;

  Point apply(const Point& p) const;
  Point invert(const Point& p) const;
  Snapshot apply(const Snapshot& s) const;
};

// Snapshot of one robot in the global frame, built from (position, color)
// pairs of every robot including the observer.
Snapshot make_snapshot(const std::vector<std::pair<Point, Color>>& robots, std::size_t observer);

}  // namespace gathersim
