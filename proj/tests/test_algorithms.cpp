#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gathersim/algorithms.hpp"

#include <random>

using namespace gathersim;

namespace {

Point P(long x, long y) { return {Rat(x), Rat(y)}; }

const Color kOff{};
const Color kA{Phase::None, Inner::A};
const Color kB{Phase::None, Inner::B};
const Color kS{Phase::S};
const Color kM{Phase::M};
const Color kE{Phase::E};
const Color kSA{Phase::S, Inner::A};
const Color kSB{Phase::S, Inner::B};
const Color kMA{Phase::M, Inner::A};
const Color kMB{Phase::M, Inner::B};
const Color kEB{Phase::E, Inner::B};

using Robots = std::vector<std::pair<Point, Color>>;

Robots with_color(const std::vector<Point>& pts, Color c) {
  Robots out;
  for (const Point& p : pts) out.push_back({p, c});
  return out;
}

Action act(Action (*alg)(const Snapshot&), const Robots& robots, std::size_t observer) {
  return alg(make_snapshot(robots, observer));
}

}  // namespace

TEST_CASE("ElectOneLDS cases") {
  SUBCASE("symmetric non-contractible: non-vertex robots go to the center") {
    const Robots r = with_color({P(0, 0), P(2, 0), P(2, 2), P(0, 2), P(1, 0)}, kOff);
    CHECK(act(elect_one_lds, r, 4) == Action{kOff, P(1, 1)});
    CHECK(act(elect_one_lds, r, 0) == Action{kOff, P(0, 0)});
  }
  SUBCASE("symmetric contractible: vertices go to the center") {
    const Robots r = with_color({P(0, 0), P(2, 0), P(2, 2), P(0, 2)}, kOff);
    for (std::size_t i = 0; i < 4; ++i) CHECK(act(elect_one_lds, r, i) == Action{kOff, P(1, 1)});
    const Robots c = with_color({P(0, 0), P(2, 0), P(2, 2), P(0, 2), P(1, 1)}, kOff);
    CHECK(act(elect_one_lds, c, 4) == Action{kOff, P(1, 1)});
    CHECK(act(elect_one_lds, c, 0) == Action{kOff, P(1, 1)});
  }
  SUBCASE("asymmetric non-contractible: interior robots go to the nearest vertex") {
    const Robots r = with_color({P(0, 0), P(10, 0), P(9, 3), P(7, 1)}, kOff);
    CHECK(act(elect_one_lds, r, 3) == Action{kOff, P(9, 3)});
    CHECK(act(elect_one_lds, r, 0) == Action{kOff, P(0, 0)});
    // A robot on an edge holds position.
    const Robots e = with_color({P(0, 0), P(10, 0), P(9, 3), P(7, 1), P(5, 0)}, kOff);
    CHECK(act(elect_one_lds, e, 4) == Action{kOff, P(5, 0)});
  }
  SUBCASE("robot at the center of the 4x1 rectangle") {
    const Robots r = with_color({P(0, 0), P(4, 0), P(4, 1), P(0, 1), {Rat(2), Rat(1, 2)}}, kOff);
    // Four equidistant vertices and no ray to measure from: smallest vertex.
    CHECK(act(elect_one_lds, r, 4) == Action{kOff, P(0, 0)});
  }
  SUBCASE("asymmetric contractible: minimum edges contract") {
    const Robots r = with_color({P(0, 0), P(10, 0), P(9, 3)}, kOff);
    CHECK(act(elect_one_lds, r, 2) == Action{kOff, P(10, 0)});
    CHECK(act(elect_one_lds, r, 1) == Action{kOff, P(10, 0)});
    CHECK(act(elect_one_lds, r, 0) == Action{kOff, P(0, 0)});
    const Robots rect = with_color({P(0, 0), P(4, 0), P(4, 1), P(0, 1)}, kOff);
    CHECK(act(elect_one_lds, rect, 2) == Action{kOff, P(4, 0)});
    CHECK(act(elect_one_lds, rect, 0) == Action{kOff, P(0, 1)});
    CHECK(act(elect_one_lds, rect, 1) == Action{kOff, P(4, 0)});
  }
  SUBCASE("collinear: stay") {
    const Robots r = with_color({P(0, 0), P(3, 0), P(7, 0)}, kOff);
    for (std::size_t i = 0; i < 3; ++i) CHECK_FALSE(is_enabled(make_snapshot(r, i), act(elect_one_lds, r, i)));
  }
}

TEST_CASE("ElectOneLDS properties on random configurations") {
  std::mt19937_64 gen(8);
  int moving = 0;
  for (int i = 0; i < 400; ++i) {
    const int n = 3 + static_cast<int>(gen() % 6);
    std::vector<Point> pts;
    for (int k = 0; k < n; ++k) pts.push_back(P(static_cast<long>(gen() % 15) - 7, static_cast<long>(gen() % 15) - 7));
    const Robots r = with_color(pts, kOff);
    auto hull = hull_of(pts);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Snapshot s = make_snapshot(r, k);
      const Action a = elect_one_lds(s);
      CHECK(a == elect_one_lds(s));
      CHECK(a.new_color == kOff);
      if (!hull) {
        CHECK(a.destination == pts[k]);
        continue;
      }
      CHECK(hull->locate(a.destination).kind != HullLocation::Outside);
      if (a.destination == pts[k]) continue;
      ++moving;
      switch (hull->classification) {
        case HullClass::AsymNonContractible:
          CHECK(hull->locate(pts[k]).kind == HullLocation::Interior);
          CHECK(hull->is_vertex(a.destination));
          break;
        case HullClass::AsymContractible:
          CHECK(hull->is_vertex(a.destination));
          break;
        default:
          CHECK(a.destination == hull_center(*hull));
      }
    }
  }
  CHECK(moving > 100);
}

TEST_CASE("LU-Gather cases") {
  const Action aa = act(lu_gather, with_color({P(0, 0), P(2, 0)}, kA), 0);
  CHECK(aa == Action{kB, P(1, 0)});

  SUBCASE("AA+A: interior robots to the nearest endpoint") {
    const Robots r = with_color({P(0, 0), P(3, 0), P(10, 0)}, kA);
    CHECK(act(lu_gather, r, 1) == Action{kA, P(0, 0)});
    CHECK(act(lu_gather, r, 0) == Action{kA, P(0, 0)});
    CHECK(act(lu_gather, r, 2) == Action{kA, P(10, 0)});
  }
  SUBCASE("BB*B: endpoints turn A") {
    const Robots r = with_color({P(0, 0), P(1, 0), P(4, 0)}, kB);
    CHECK(act(lu_gather, r, 0) == Action{kA, P(0, 0)});
    CHECK(act(lu_gather, r, 2) == Action{kA, P(4, 0)});
    CHECK(act(lu_gather, r, 1) == Action{kB, P(1, 0)});
  }
  SUBCASE("AB*B: B robots go to the point with A") {
    const Robots r{{P(0, 0), kA}, {P(1, 0), kB}, {P(4, 0), kB}};
    CHECK(act(lu_gather, r, 1) == Action{kB, P(0, 0)});
    CHECK(act(lu_gather, r, 2) == Action{kB, P(0, 0)});
    CHECK(act(lu_gather, r, 0) == Action{kA, P(0, 0)});
  }
  SUBCASE("AB_mA: endpoints turn B and go to the midpoint") {
    const Robots r{{P(0, 0), kA}, {P(2, 0), kB}, {P(4, 0), kA}};
    CHECK(act(lu_gather, r, 0) == Action{kB, P(2, 0)});
    CHECK(act(lu_gather, r, 2) == Action{kB, P(2, 0)});
    CHECK(act(lu_gather, r, 1) == Action{kB, P(2, 0)});
  }
  SUBCASE("AB+A: B robots go to the midpoint, endpoints wait") {
    const Robots r{{P(0, 0), kA}, {P(1, 0), kB}, {P(4, 0), kA}};
    CHECK(act(lu_gather, r, 1) == Action{kB, P(2, 0)});
    CHECK(act(lu_gather, r, 0) == Action{kA, P(0, 0)});
  }
  SUBCASE("a point holding A and B counts as a point with A") {
    const Robots r{{P(0, 0), kA}, {P(0, 0), kB}, {P(3, 0), kB}};
    CHECK(act(lu_gather, r, 2) == Action{kB, P(0, 0)});
    CHECK(act(lu_gather, r, 1) == Action{kB, P(0, 0)});
  }
  SUBCASE("gathered and off-line snapshots stay") {
    const Robots g = with_color({P(5, 5), P(5, 5)}, kA);
    CHECK_FALSE(is_enabled(make_snapshot(g, 0), act(lu_gather, g, 0)));
    const Robots gb = with_color({P(5, 5), P(5, 5)}, kB);
    CHECK_FALSE(is_enabled(make_snapshot(gb, 0), act(lu_gather, gb, 0)));
    const Robots tri = with_color({P(0, 0), P(1, 0), P(0, 1)}, kA);
    CHECK(act(lu_gather, tri, 0) == Action{kA, P(0, 0)});
  }
}

TEST_CASE("simulation wrapper") {
  SUBCASE("all S, inner enabled: run the inner step and turn M") {
    const Robots r = with_color({P(0, 0), P(2, 0)}, kSA);
    CHECK(act(six_color_gather, r, 0) == Action{kMB, P(1, 0)});
  }
  SUBCASE("all S, inner not enabled: do nothing") {
    const Robots r{{P(0, 0), kSA}, {P(1, 0), kSB}, {P(4, 0), kSB}};
    CHECK(act(six_color_gather, r, 0) == Action{kSA, P(0, 0)});
  }
  SUBCASE("phase steps carry the inner light") {
    const Robots sm{{P(0, 0), kSA}, {P(2, 0), kMB}};
    CHECK(act(six_color_gather, sm, 0) == Action{kMA, P(0, 0)});
    CHECK(act(six_color_gather, sm, 1) == Action{kMB, P(2, 0)});
    const Robots me{{P(0, 0), kMB}, {P(2, 0), kEB}};
    CHECK(act(six_color_gather, me, 0) == Action{kEB, P(0, 0)});
    const Robots se{{P(0, 0), kSB}, {P(2, 0), kEB}};
    CHECK(act(six_color_gather, se, 1) == Action{kSB, P(2, 0)});
    // S, M and E together: no rule applies.
    const Robots sme{{P(0, 0), kSB}, {P(2, 0), kEB}, {P(3, 0), kMB}};
    CHECK(act(six_color_gather, sme, 0) == Action{kSB, P(0, 0)});
  }
  SUBCASE("off the line the inner step is ElectOneLDS") {
    const Robots r = with_color({P(0, 0), P(2, 0), P(2, 2), P(0, 2)}, kSA);
    CHECK(act(six_color_gather, r, 0) == Action{kMA, P(1, 1)});
    const Robots t = with_color({P(0, 0), P(2, 0), P(2, 2), P(0, 2)}, kS);
    CHECK(act(three_color_gather, t, 2) == Action{kM, P(1, 1)});
  }
  SUBCASE("custom inner algorithm") {
    const AlgorithmFn stay_put = [](const Snapshot& s) { return Action{s.own_light, s.self}; };
    const Snapshot s = make_snapshot(with_color({P(0, 0), P(1, 0)}, kS), 0);
    CHECK(sim_for_unfair(s, stay_put) == Action{kS, P(0, 0)});
    CHECK(sim_for_unfair(s, [](const Snapshot&) { return Action{Color{}, P(7, 7)}; }) == Action{kM, P(7, 7)});
  }
}

TEST_CASE("three-color line algorithm") {
  SUBCASE("all S") {
    CHECK(act(lu_gather_in_async, with_color({P(0, 0), P(4, 0)}, kS), 0) == Action{kM, P(2, 0)});
    const Robots r = with_color({P(0, 0), P(3, 0), P(10, 0)}, kS);
    CHECK(act(lu_gather_in_async, r, 1) == Action{kS, P(0, 0)});
    CHECK(act(three_color_gather, r, 1) == Action{kS, P(0, 0)});
    CHECK(act(lu_gather_in_async, r, 0) == Action{kS, P(0, 0)});
  }
  SUBCASE("S and M") {
    const Robots one_s{{P(0, 0), kM}, {P(2, 0), kS}, {P(2, 0), kM}, {P(5, 0), kM}};
    CHECK(act(lu_gather_in_async, one_s, 1) == Action{kE, P(2, 0)});
    CHECK(act(lu_gather_in_async, one_s, 0) == Action{kM, P(0, 0)});
    const Robots ends{{P(0, 0), kS}, {P(2, 0), kM}, {P(4, 0), kS}};
    CHECK(act(lu_gather_in_async, ends, 0) == Action{kM, P(2, 0)});
    CHECK(act(lu_gather_in_async, ends, 1) == Action{kM, P(2, 0)});
    const Robots gathered{{P(1, 1), kS}, {P(1, 1), kM}};
    CHECK(act(lu_gather_in_async, gathered, 0) == Action{kE, P(1, 1)});
  }
  SUBCASE("S and E") {
    const Robots two{{P(0, 0), kS}, {P(4, 0), kE}};
    CHECK(act(lu_gather_in_async, two, 1) == Action{kS, P(4, 0)});
    CHECK(act(lu_gather_in_async, two, 0) == Action{kS, P(0, 0)});
    const Robots ses{{P(0, 0), kS}, {P(2, 0), kE}, {P(4, 0), kS}};
    CHECK(act(lu_gather_in_async, ses, 0) == Action{kM, P(0, 0)});
    CHECK(act(lu_gather_in_async, ses, 1) == Action{kE, P(2, 0)});
  }
  SUBCASE("all M and M with E") {
    CHECK(act(lu_gather_in_async, with_color({P(0, 0), P(4, 0)}, kM), 0) == Action{kE, P(0, 0)});
    const Robots one_e{{P(0, 0), kM}, {P(2, 0), kE}, {P(3, 0), kM}};
    CHECK(act(lu_gather_in_async, one_e, 0) == Action{kM, P(2, 0)});
    CHECK(act(lu_gather_in_async, one_e, 2) == Action{kM, P(2, 0)});
    CHECK(act(lu_gather_in_async, one_e, 1) == Action{kE, P(2, 0)});
    const Robots at_e{{P(0, 0), kM}, {P(2, 0), kE}, {P(2, 0), kM}};
    CHECK(act(lu_gather_in_async, at_e, 2) == Action{kM, P(2, 0)});
  }
  SUBCASE("all E") {
    CHECK(act(lu_gather_in_async, with_color({P(0, 0), P(4, 0)}, kE), 0) == Action{kS, P(0, 0)});
    const Robots eee = with_color({P(0, 0), P(2, 0), P(4, 0)}, kE);
    CHECK(act(lu_gather_in_async, eee, 0) == Action{kS, P(0, 0)});
    CHECK(act(lu_gather_in_async, eee, 1) == Action{kE, P(2, 0)});
    const Robots off_mid = with_color({P(0, 0), P(1, 0), P(4, 0)}, kE);
    CHECK(act(lu_gather_in_async, off_mid, 1) == Action{kE, P(2, 0)});
    CHECK(act(lu_gather_in_async, off_mid, 0) == Action{kE, P(0, 0)});
    const Robots g = with_color({P(3, 3), P(3, 3), P(3, 3)}, kE);
    CHECK(act(three_color_gather, g, 0) == Action{kE, P(3, 3)});
  }
}

TEST_CASE("alphabet discipline and determinism") {
  std::mt19937_64 gen(4);
  const std::vector<AlgorithmId> algs{AlgorithmId::ElectOneLds, AlgorithmId::LuGather, AlgorithmId::SixColor,
                                      AlgorithmId::LuGatherAsync, AlgorithmId::ThreeColor};
  for (AlgorithmId alg : algs) {
    std::vector<Color> alphabet;
    for (int i = 0; i < kColorCount; ++i) {
      if (in_alphabet(alg, Color::from_index(i))) alphabet.push_back(Color::from_index(i));
    }
    REQUIRE_FALSE(alphabet.empty());
    for (int round = 0; round < 200; ++round) {
      const int n = 1 + static_cast<int>(gen() % 5);
      const bool line = gen() % 2 == 0;
      Robots r;
      for (int k = 0; k < n; ++k) {
        const long x = static_cast<long>(gen() % 9) - 4;
        const long y = line ? 2 * x : static_cast<long>(gen() % 9) - 4;
        r.push_back({P(x, y), alphabet[gen() % alphabet.size()]});
      }
      for (std::size_t k = 0; k < r.size(); ++k) {
        const Snapshot s = make_snapshot(r, k);
        const Action a = run_algorithm(alg, s);
        CHECK(in_alphabet(alg, a.new_color));
        CHECK(a == run_algorithm(alg, s));
      }
    }
  }
}

TEST_CASE("enabled") {
  const Snapshot s = make_snapshot(with_color({P(0, 0), P(2, 0)}, kA), 0);
  CHECK_FALSE(is_enabled(s, Action{kA, P(0, 0)}));
  CHECK(is_enabled(s, Action{kB, P(0, 0)}));
  CHECK(is_enabled(s, Action{kA, P(1, 0)}));
}
