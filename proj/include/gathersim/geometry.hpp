#pragma once

#include "gathersim/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gathersim {

struct Point {
  Rat x;
  Rat y;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  // Lexicographic (x, then y). Monotone along any straight line.
  friend bool operator<(const Point& a, const Point& b) {
    const int c = cmp(a.x, b.x);
    return c < 0 || (c == 0 && a.y < b.y);
  }

  Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
  Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
  Point operator*(const Rat& k) const { return {x * k, y * k}; }
};

std::string to_string(const Point& p);

inline Rat cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }
inline Rat dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }
// Orientation of (o, a, b): > 0 counter-clockwise, < 0 clockwise, 0 collinear.
inline Rat orient(const Point& o, const Point& a, const Point& b) { return cross(a - o, b - o); }
inline Rat dist2(const Point& a, const Point& b) { return dot(a - b, a - b); }
Point midpoint(const Point& a, const Point& b);

// p lies on the closed segment [a, b].
bool on_segment(const Point& p, const Point& a, const Point& b);
bool collinear(std::span<const Point> points);

enum class HullClass { SymNonContractible, SymContractible, AsymNonContractible, AsymContractible, OnLDS };

std::string to_string(HullClass c);
inline bool is_symmetric_class(HullClass c) {
  return c == HullClass::SymNonContractible || c == HullClass::SymContractible || c == HullClass::OnLDS;
}

// Where a point sits relative to a strictly convex CCW ring.
struct HullLocation {
  enum Kind { Vertex, Edge, Interior, Outside } kind;
  // Vertex: vertex index. Edge: index k of edge (v_k, v_{k+1}).
  std::size_t index = 0;
};

struct HullView {
  // Strictly convex, counter-clockwise, starting at the lexicographically
  // smallest vertex.
  std::vector<Point> vertices;
  // edge_lengths_sq[k] is |v_k v_{k+1}|^2.
  std::vector<Rat> edge_lengths_sq;
  HullClass classification = HullClass::AsymNonContractible;

  std::size_t size() const { return vertices.size(); }
  const Point& vertex(std::size_t k) const { return vertices[k % vertices.size()]; }
  HullLocation locate(const Point& p) const;
  bool is_vertex(const Point& p) const { return locate(p).kind == HullLocation::Vertex; }
  Rat area() const;
};

struct CollinearSignal {};

// Hull of the distinct positions; CollinearSignal when they are collinear
// (this includes one or two distinct positions). Classification is computed
// from the same point set.
std::variant<HullView, CollinearSignal> convex_hull(std::span<const Point> points);

// Convenience wrapper; nullopt when collinear.
std::optional<HullView> hull_of(std::span<const Point> points);

bool is_on_lds(std::span<const Point> occupied);
bool is_symmetric(const HullView& hull);
bool is_contractible(const HullView& hull, std::span<const Point> occupied);
Point hull_center(const HullView& hull);

struct Retarget {
  Point source;
  Point destination;
  friend bool operator==(const Retarget&, const Retarget&) = default;
};

// Contraction moves of the asymmetric-contractible case: robots on a
// contracted minimum edge travel to that edge's right vertex v_k.
std::vector<Retarget> min_edge_targets(const HullView& hull, std::span<const Point> occupied);

// Index k of every minimum edge (v_k, v_{k+1}) that gets contracted: isolated
// minimum edges, and the counter-clockwise-first edge of each run of
// consecutive minimum edges.
std::vector<std::size_t> contracted_edges(const HullView& hull);

// Hull vertex nearest to p. Ties go to the smallest counter-clockwise angle
// of (p -> vertex) measured from the ray (p -> hull center).
Point nearest_vertex(const Point& p, const HullView& hull);

// Orders direction vectors by counter-clockwise angle from `ref`, in [0, 2pi).
bool ccw_angle_less(const Point& ref, const Point& u, const Point& v);

}  // namespace gathersim
