#include "gathersim/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace gathersim {

namespace {

constexpr double kSize = 800;
constexpr double kMargin = 40;

const char* stroke(Color c) {
  switch (c.phase) {
    case Phase::S: return "#1f77b4";
    case Phase::M: return "#ff7f0e";
    case Phase::E: return "#2ca02c";
    case Phase::None: break;
  }
  switch (c.inner) {
    case Inner::A: return "#d62728";
    case Inner::B: return "#9467bd";
    case Inner::None: break;
  }
  return "#555555";
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

void write_svg(std::ostream& out, const Trace& trace) {
  std::vector<const Config*> configs;
  for (const Event& e : trace.events) {
    if (e.kind == Event::ConfigAt) configs.push_back(&e.config);
  }
  double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
  bool first = true;
  for (const Config* c : configs) {
    for (const RobotEntry& r : *c) {
      const double x = r.position.x.get_d();
      const double y = r.position.y.get_d();
      if (first) {
        min_x = max_x = x;
        min_y = max_y = y;
        first = false;
      }
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
    }
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
  const double scale = (kSize - 2 * kMargin) / span;
  auto sx = [&](const Point& p) { return num(kMargin + (p.x.get_d() - min_x) * scale); };
  // SVG y grows downwards.
  auto sy = [&](const Point& p) { return num(kSize - kMargin - (p.y.get_d() - min_y) * scale); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t k = 1; k < configs.size(); ++k) {
    const Config& a = *configs[k - 1];
    const Config& b = *configs[k];
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      if (a[i].position == b[i].position) continue;
      out << "<line x1=\"" << sx(a[i].position) << "\" y1=\"" << sy(a[i].position) << "\" x2=\""
          << sx(b[i].position) << "\" y2=\"" << sy(b[i].position) << "\" stroke=\"" << stroke(a[i].color)
          << "\" stroke-width=\"1.5\"/>\n";
    }
  }
  for (std::size_t k = 0; k < configs.size(); ++k) {
    for (const RobotEntry& r : *configs[k]) {
      out << "<circle cx=\"" << sx(r.position) << "\" cy=\"" << sy(r.position) << "\" r=\"" << (k == 0 ? 4 : 2)
          << "\" fill=\"" << stroke(r.color) << "\"/>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace gathersim
