#pragma once

#include "gathersim/trace.hpp"

#include <iosfwd>

namespace gathersim {

// SVG of every robot's trajectory through the logged configurations. Each
// segment takes the stroke color of the robot's light at its start; dots
// mark positions at integer times.
void write_svg(std::ostream& out, const Trace& trace);

}  // namespace gathersim
