#pragma once

#include "gathersim/color.hpp"
#include "gathersim/line_patterns.hpp"
#include "gathersim/snapshot.hpp"

#include <functional>

namespace gathersim {

using AlgorithmFn = std::function<Action(const Snapshot&)>;

// The action changes the light or moves the robot.
bool is_enabled(const Snapshot& s, const Action& a);

// Oblivious hull-shrinking algorithm reaching a configuration on one line.
// Keeps the light unchanged; stays put once the snapshot is collinear.
Action elect_one_lds(const Snapshot& s);

// Two-color gathering from a collinear start (lights A/B). Stays put on a
// non-collinear snapshot.
Action lu_gather(const Snapshot& s);

// Runs `inner` on the inner part of the lights inside an S -> M -> E phase
// cycle. Lights carry (phase, inner color).
Action sim_for_unfair(const Snapshot& s, const AlgorithmFn& inner);

// Phase-wrapped composition: ElectOneLDS off the line, LU-Gather on it.
Action six_color_gather(const Snapshot& s);

// Three-color gathering from a collinear configuration in ASYNC.
Action lu_gather_in_async(const Snapshot& s);

// Phase-wrapped ElectOneLDS off the line, lu_gather_in_async on it.
Action three_color_gather(const Snapshot& s);

Action run_algorithm(AlgorithmId id, const Snapshot& s);

// Collinear view of a snapshot with one mark per color, letters taken from
// the phase (or inner color when there is no phase).
LineView phase_line(const Snapshot& s);
LineView inner_line(const Snapshot& s);

}  // namespace gathersim
