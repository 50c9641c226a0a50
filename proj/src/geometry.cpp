#include "gathersim/geometry.hpp"

#include <algorithm>
#include <cassert>

namespace gathersim {

std::string to_string(const Point& p) { return "(" + format_rat(p.x) + "," + format_rat(p.y) + ")"; }

Point midpoint(const Point& a, const Point& b) {
  Point m{a.x + b.x, a.y + b.y};
  m.x /= 2;
  m.y /= 2;
  return m;
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  if (sgn(orient(a, b, p)) != 0) return false;
  return sgn(dot(p - a, p - b)) <= 0;
}

bool collinear(std::span<const Point> points) {
  if (points.size() < 3) return true;
  const Point& a = points[0];
  std::size_t j = 1;
  while (j < points.size() && points[j] == a) ++j;
  if (j == points.size()) return true;
  const Point& b = points[j];
  for (std::size_t k = j + 1; k < points.size(); ++k) {
    if (sgn(orient(a, b, points[k])) != 0) return false;
  }
  return true;
}

std::string to_string(HullClass c) {
  switch (c) {
    case HullClass::SymNonContractible: return "s&nc";
    case HullClass::SymContractible: return "s&c";
    case HullClass::AsymNonContractible: return "a&nc";
    case HullClass::AsymContractible: return "a&c";
    case HullClass::OnLDS: return "onLDS";
  }
  return "?";
}

HullLocation HullView::locate(const Point& p) const {
  const std::size_t k = vertices.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (vertices[i] == p) return {HullLocation::Vertex, i};
  }
  bool inside = true;
  for (std::size_t i = 0; i < k; ++i) {
    const int s = sgn(orient(vertices[i], vertex(i + 1), p));
    if (s == 0 && on_segment(p, vertices[i], vertex(i + 1))) return {HullLocation::Edge, i};
    if (s <= 0) inside = false;
  }
  return {inside ? HullLocation::Interior : HullLocation::Outside, 0};
}

Rat HullView::area() const {
  Rat twice = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) twice += cross(vertices[i], vertex(i + 1));
  return twice / 2;
}

namespace {

std::vector<Point> distinct_sorted(std::span<const Point> points) {
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

std::variant<HullView, CollinearSignal> convex_hull(std::span<const Point> points) {
  assert(!points.empty());
  std::vector<Point> pts = distinct_sorted(points);
  if (collinear(pts)) return CollinearSignal{};

  // Monotone chain with strict turns; the lower chain starts at the
  // lexicographically smallest point, so the ring is CCW from there.
  std::vector<Point> ring(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && sgn(orient(ring[k - 2], ring[k - 1], p)) <= 0) --k;
    ring[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && sgn(orient(ring[k - 2], ring[k - 1], pts[i])) <= 0) --k;
    ring[k++] = pts[i];
  }
  ring.resize(k - 1);

  HullView hull;
  hull.vertices = std::move(ring);
  for (std::size_t i = 0; i < hull.size(); ++i) {
    hull.edge_lengths_sq.push_back(dist2(hull.vertices[i], hull.vertex(i + 1)));
  }
  const bool sym = is_symmetric(hull);
  const bool contractible = is_contractible(hull, pts);
  if (sym) {
    hull.classification = contractible ? HullClass::SymContractible : HullClass::SymNonContractible;
  } else {
    hull.classification = contractible ? HullClass::AsymContractible : HullClass::AsymNonContractible;
  }
  return hull;
}

std::optional<HullView> hull_of(std::span<const Point> points) {
  auto h = convex_hull(points);
  if (auto* view = std::get_if<HullView>(&h)) return std::move(*view);
  return std::nullopt;
}

bool is_on_lds(std::span<const Point> occupied) { return collinear(occupied); }

bool is_symmetric(const HullView& hull) {
  const auto& e = hull.edge_lengths_sq;
  return std::all_of(e.begin(), e.end(), [&](const Rat& l) { return l == e.front(); });
}

bool is_contractible(const HullView& hull, std::span<const Point> occupied) {
  if (is_symmetric(hull)) {
    const Point c = hull_center(hull);
    return std::all_of(occupied.begin(), occupied.end(),
                       [&](const Point& p) { return p == c || hull.is_vertex(p); });
  }
  return std::all_of(occupied.begin(), occupied.end(), [&](const Point& p) {
    const auto kind = hull.locate(p).kind;
    return kind == HullLocation::Vertex || kind == HullLocation::Edge;
  });
}

Point hull_center(const HullView& hull) {
  Point sum{0, 0};
  for (const Point& v : hull.vertices) sum = sum + v;
  const Rat k(static_cast<long>(hull.size()));
  sum.x /= k;
  sum.y /= k;
  return sum;
}

std::vector<std::size_t> contracted_edges(const HullView& hull) {
  const auto& e = hull.edge_lengths_sq;
  const Rat shortest = *std::min_element(e.begin(), e.end());
  const std::size_t k = e.size();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k; ++i) {
    const bool is_min = e[i] == shortest;
    const bool prev_min = e[(i + k - 1) % k] == shortest;
    if (is_min && !prev_min) out.push_back(i);
  }
  return out;
}

std::vector<Retarget> min_edge_targets(const HullView& hull, std::span<const Point> occupied) {
  const std::vector<Point> pts = distinct_sorted(occupied);
  std::vector<Retarget> out;
  for (std::size_t edge : contracted_edges(hull)) {
    const Point& right = hull.vertex(edge);
    const Point& left = hull.vertex(edge + 1);
    for (const Point& p : pts) {
      if (p != right && on_segment(p, right, left)) out.push_back({p, right});
    }
  }
  return out;
}

bool ccw_angle_less(const Point& ref, const Point& u, const Point& v) {
  auto half = [&](const Point& w) {
    const int c = sgn(cross(ref, w));
    return (c > 0 || (c == 0 && sgn(dot(ref, w)) > 0)) ? 0 : 1;
  };
  const int hu = half(u);
  const int hv = half(v);
  if (hu != hv) return hu < hv;
  return sgn(cross(u, v)) > 0;
}

Point nearest_vertex(const Point& p, const HullView& hull) {
  std::vector<const Point*> best;
  Rat best_d;
  for (const Point& v : hull.vertices) {
    Rat d = dist2(p, v);
    if (best.empty() || d < best_d) {
      best_d = d;
      best.assign(1, &v);
    } else if (d == best_d) {
      best.push_back(&v);
    }
  }
  if (best.size() == 1) return *best.front();

  const Point ref = hull_center(hull) - p;
  if (sgn(ref.x) == 0 && sgn(ref.y) == 0) {
    // No intrinsic reference ray from the center itself.
    return **std::min_element(best.begin(), best.end(), [](const Point* a, const Point* b) { return *a < *b; });
  }
  const Point* pick = best.front();
  for (const Point* v : best) {
    if (ccw_angle_less(ref, *v - p, *pick - p)) pick = v;
  }
  return *pick;
}

}  // namespace gathersim
