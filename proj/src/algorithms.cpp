#include "gathersim/algorithms.hpp"

#include <cassert>

namespace gathersim {

namespace {

Action stay(const Snapshot& s) { return {s.own_light, s.self}; }

Action recolor(const Snapshot& s, Color c) { return {c, s.self}; }

LineView line_by(const Snapshot& s, char (*letter)(Color)) {
  std::vector<std::pair<Point, Mark>> robots;
  for (const auto& [p, colors] : s.entries) {
    for (Color c : colors.colors()) robots.push_back({p, Mark{letter(c)}});
  }
  return classify_line(robots);
}

char phase_of(Color c) { return phase_letter(c.phase); }
char inner_of(Color c) { return inner_letter(c.inner); }

std::set<Phase> phases_present(const Snapshot& s) {
  std::set<Phase> out;
  for (Color c : s.all_colors().colors()) out.insert(c.phase);
  return out;
}

bool on_line(const Snapshot& s) {
  const auto pts = s.points();
  return is_on_lds(pts);
}

}  // namespace

LineView phase_line(const Snapshot& s) { return line_by(s, phase_of); }
LineView inner_line(const Snapshot& s) { return line_by(s, inner_of); }

bool is_enabled(const Snapshot& s, const Action& a) { return a.new_color != s.own_light || a.destination != s.self; }

Action elect_one_lds(const Snapshot& s) {
  const auto pts = s.points();
  auto hull = hull_of(pts);
  if (!hull) return stay(s);
  const Point& p = s.self;

  switch (hull->classification) {
    case HullClass::SymNonContractible: {
      const Point c = hull_center(*hull);
      if (!hull->is_vertex(p) && p != c) return {s.own_light, c};
      break;
    }
    case HullClass::AsymNonContractible:
      // Robots on the hull boundary hold position; only strictly interior
      // ones head for a vertex.
      if (hull->locate(p).kind == HullLocation::Interior) return {s.own_light, nearest_vertex(p, *hull)};
      break;
    case HullClass::SymContractible: {
      const Point c = hull_center(*hull);
      if (p != c) return {s.own_light, c};
      break;
    }
    case HullClass::AsymContractible:
      for (const Retarget& r : min_edge_targets(*hull, pts)) {
        if (r.source == p) return {s.own_light, r.destination};
      }
      break;
    case HullClass::OnLDS:
      break;
  }
  return stay(s);
}

Action lu_gather(const Snapshot& s) {
  if (!on_line(s)) return stay(s);
  LineView line = inner_line(s);
  // A point holding any A counts as a point with A.
  for (Station& st : line.stations) {
    if (st.has('A')) st.marks = {Mark{'A'}};
  }

  static const Pattern kAB_B = Pattern::must("AB^*B");
  static const Pattern kAB_mA = Pattern::must("AB_mA");

  const Color own = s.own_light;
  const Point& p = s.self;
  const Point pn = nearest_endpoint(line, p);
  const Point pf = furthest_endpoint(line, p);
  const Point mid = midpoint(pn, pf);
  const Color a{Phase::None, Inner::A};
  const Color b{Phase::None, Inner::B};
  const auto letters = line.letters();

  if (letters == std::set<char>{'A'}) {
    if (line.stations.size() == 1) return stay(s);
    if (line.stations.size() == 2) return {b, mid};
    if (p == pn) return stay(s);
    return {own, pn};
  }
  if (letters == std::set<char>{'B'}) {
    if (line.stations.size() >= 2 && p == pn) return recolor(s, a);
    return stay(s);
  }
  if (own.inner == Inner::A) {
    if (kAB_B.matches(line)) return stay(s);
    if (kAB_mA.matches(line)) return {b, mid};
    return stay(s);
  }
  if (kAB_B.matches(line)) {
    for (const Station& st : line.stations) {
      if (st.has('A')) return {own, st.position};
    }
  }
  return {own, mid};
}

Action sim_for_unfair(const Snapshot& s, const AlgorithmFn& inner) {
  const auto phases = phases_present(s);
  const Color own = s.own_light;
  auto with_phase = [&](Phase ph) { return Color{ph, own.inner}; };

  if (phases == std::set<Phase>{Phase::S}) {
    Snapshot bare;
    for (const auto& [p, colors] : s.entries) {
      for (Color c : colors.colors()) bare.entries[p].insert(Color{Phase::None, c.inner});
    }
    bare.self = s.self;
    bare.own_light = Color{Phase::None, own.inner};
    const Action a = inner(bare);
    if (!is_enabled(bare, a)) return stay(s);
    return {Color{Phase::M, a.new_color.inner}, a.destination};
  }
  if (phases == std::set<Phase>{Phase::S, Phase::M}) return recolor(s, with_phase(Phase::M));
  if (phases == std::set<Phase>{Phase::M} || phases == std::set<Phase>{Phase::M, Phase::E}) {
    return recolor(s, with_phase(Phase::E));
  }
  if (phases == std::set<Phase>{Phase::E} || phases == std::set<Phase>{Phase::S, Phase::E}) {
    return recolor(s, with_phase(Phase::S));
  }
  return stay(s);
}

Action six_color_gather(const Snapshot& s) {
  return sim_for_unfair(s, [](const Snapshot& bare) {
    return on_line(bare) ? lu_gather(bare) : elect_one_lds(bare);
  });
}

Action lu_gather_in_async(const Snapshot& s) {
  if (!on_line(s)) return stay(s);
  const LineView line = phase_line(s);

  static const Pattern kAllS = Pattern::must("forall:S");
  static const Pattern kAllSM = Pattern::must("forall:S,M");
  static const Pattern kAllSE = Pattern::must("forall:S,E");
  static const Pattern kAllM = Pattern::must("forall:M");
  static const Pattern kAllME = Pattern::must("forall:M,E");
  static const Pattern kAllE = Pattern::must("forall:E");
  static const Pattern kAllSME = Pattern::must("forall:S,M,E");

  static const Pattern kSS = Pattern::must("SS");
  static const Pattern kOneSinM = Pattern::must("M^+(S|M)M^*");
  static const Pattern kOneSMPoint = Pattern::must("(S|M)");
  static const Pattern kSMEnds = Pattern::must("(S|M)M^*(S|M)");
  static const Pattern kSETwo = Pattern::must("(S|E)(S|E)");
  static const Pattern kSEMid = Pattern::must("(S|E)E_m(S|E)");
  static const Pattern kSES = Pattern::must("SE_mS");
  static const Pattern kOneEinM = Pattern::must("M^+(E|M)M^*");
  static const Pattern kE = Pattern::must("E");
  static const Pattern kEE = Pattern::must("EE");
  static const Pattern kEEE = Pattern::must("EE_mE");
  static const Pattern kOneSMEinM = Pattern::must("M^+(S|M|E)M^*");
  static const Pattern kOneSMEPoint = Pattern::must("(S|M|E)");
  static const Pattern kMEM = Pattern::must("(S|M)E_m(S|M)");

  const Phase own = s.own_light.phase;
  const Point& p = s.self;
  const Point pn = nearest_endpoint(line, p);
  const Point pf = furthest_endpoint(line, p);
  const Point mid = midpoint(pn, pf);
  const Color S{Phase::S, Inner::None};
  const Color M{Phase::M, Inner::None};
  const Color E{Phase::E, Inner::None};

  if (kAllS.matches(line)) {
    if (kSS.matches(line)) return {M, mid};
    if (p != pn) return {s.own_light, pn};
    return stay(s);
  }
  if (kAllSM.matches(line)) {
    if (kOneSinM.matches(line) || kOneSMPoint.matches(line)) {
      if (own == Phase::S) return recolor(s, E);
    } else if (kSMEnds.matches(line) && line.count('S') == 2 && own == Phase::S) {
      return {M, mid};
    } else if (line.count('S') >= 2 && own == Phase::S) {
      return recolor(s, M);
    }
    return stay(s);
  }
  if (kAllSE.matches(line)) {
    if (kSETwo.matches(line)) {
      if (own == Phase::E) return recolor(s, S);
    } else if (kSEMid.matches(line) && line.count('E') > 1 && p == pn && own == Phase::E) {
      return recolor(s, S);
    } else if (kSES.matches(line) && own == Phase::S) {
      return recolor(s, M);
    }
    return stay(s);
  }
  if (kAllM.matches(line)) return recolor(s, E);
  if (kAllME.matches(line)) {
    if (kOneEinM.matches(line)) {
      for (const Station& st : line.stations) {
        if (st.has('E')) return p != st.position ? Action{s.own_light, st.position} : stay(s);
      }
    }
    if (own == Phase::M) return recolor(s, E);
    return stay(s);
  }
  if (kAllE.matches(line)) {
    if (kE.matches(line)) return stay(s);
    if (kEE.matches(line)) return recolor(s, S);
    if (kEEE.matches(line)) return p == pn ? recolor(s, S) : stay(s);
    if (p != pn) return {s.own_light, mid};
    return stay(s);
  }
  if (kAllSME.matches(line)) {
    if ((kOneSMEinM.matches(line) || kOneSMEPoint.matches(line)) && own == Phase::S) return recolor(s, E);
    if (kMEM.matches(line) && p == pn && own == Phase::S) return recolor(s, M);
  }
  return stay(s);
}

Action three_color_gather(const Snapshot& s) {
  if (!on_line(s)) return sim_for_unfair(s, elect_one_lds);
  return lu_gather_in_async(s);
}

Action run_algorithm(AlgorithmId id, const Snapshot& s) {
  Action a;
  switch (id) {
    case AlgorithmId::ElectOneLds: a = elect_one_lds(s); break;
    case AlgorithmId::LuGather: a = lu_gather(s); break;
    case AlgorithmId::SixColor: a = six_color_gather(s); break;
    case AlgorithmId::LuGatherAsync: a = lu_gather_in_async(s); break;
    case AlgorithmId::ThreeColor: a = three_color_gather(s); break;
  }
  assert(in_alphabet(id, a.new_color));
  return a;
}

}  // namespace gathersim
