#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gathersim/potentials.hpp"

#include <cmath>
#include <random>

using namespace gathersim;

namespace {

Point P(long x, long y) { return {Rat(x), Rat(y)}; }

const Color kA{Phase::None, Inner::A};
const Color kB{Phase::None, Inner::B};

bool is_inf(const PotentialEntry& e) { return std::holds_alternative<Infinity>(e); }

// Entry equals the exact rational.
bool exactly(const PotentialEntry& e, const Rat& r) {
  if (is_inf(e)) return false;
  auto v = std::get<RootSum>(e).as_rational();
  return v && *v == r;
}

// The certified enclosure contains the floating estimate.
bool near(const PotentialEntry& e, double expected) {
  if (is_inf(e)) return false;
  const auto [lo, hi] = std::get<RootSum>(e).enclose(64);
  return lo.get_d() <= expected + 1e-9 && expected - 1e-9 <= hi.get_d();
}

double d(const Point& a, const Point& b) {
  return std::hypot(a.x.get_d() - b.x.get_d(), a.y.get_d() - b.y.get_d());
}

PotentialEntry fin(const Rat& r) { return RootSum::rational(r); }

}  // namespace

TEST_CASE("root sums") {
  const RootSum r2 = RootSum::sqrt_of(2);
  RootSum two_r2 = r2;
  two_r2 += r2;
  CHECK((RootSum::sqrt_of(8) - two_r2).is_zero());
  CHECK((RootSum::sqrt_of(Rat(1, 2)) - RootSum::sqrt_of(2) - RootSum::sqrt_of(Rat(1, 2))).as_rational() == std::nullopt);
  CHECK(*RootSum::sqrt_of(Rat(9, 4)).as_rational() == Rat(3, 2));
  CHECK(*RootSum::sqrt_of(0).as_rational() == 0);
  // Square factors beyond trial division still cancel.
  RootSum big = RootSum::sqrt_of(Rat(Int(211) * 211 * 2));
  CHECK((big - RootSum::sqrt_of(2) - RootSum::sqrt_of(Rat(Int(210) * 210 * 2))).is_zero());
  CHECK((RootSum::sqrt_of(Rat(Int(1009) * 1009 * 3)) - RootSum::sqrt_of(Rat(3, Int(1) * 1))).as_rational() == std::nullopt);

  CHECK(sign_of(RootSum{}) == Ordering::Equal);
  CHECK(sign_of(RootSum::rational(Rat(-1, 3))) == Ordering::Less);
  RootSum s23 = RootSum::sqrt_of(2);
  s23 += RootSum::sqrt_of(3);
  CHECK(sign_of(s23 - RootSum::sqrt_of(10)) == Ordering::Less);
  CHECK(sign_of(RootSum::sqrt_of(10) - s23) == Ordering::Greater);

  SUBCASE("differences below the finest precision stay undecided") {
    const Rat lo = sqrt_bracket(2, 1200).lo;
    CHECK(sign_of(RootSum::sqrt_of(2) - RootSum::rational(lo)) == Ordering::Undecided);
    const Rat coarse = sqrt_bracket(2, 200).lo;
    CHECK(sign_of(RootSum::sqrt_of(2) - RootSum::rational(coarse)) == Ordering::Greater);
  }
  SUBCASE("enclosures agree with floating sums") {
    std::mt19937_64 gen(2);
    for (int i = 0; i < 300; ++i) {
      RootSum v;
      double approx = 0;
      for (int k = 0; k < 4; ++k) {
        const long a = static_cast<long>(gen() % 500);
        const long b = static_cast<long>(gen() % 20) + 1;
        const bool neg = gen() % 2;
        RootSum t = RootSum::sqrt_of(ratio(a, b));
        v = neg ? v - t : (v += t, v);
        approx += (neg ? -1 : 1) * std::sqrt(static_cast<double>(a) / b);
      }
      const auto [lo, hi] = v.enclose(64);
      CHECK(lo <= hi);
      CHECK(lo.get_d() <= approx + 1e-9);
      CHECK(approx - 1e-9 <= hi.get_d());
      const Ordering o = sign_of(v);
      if (std::abs(approx) > 1e-6) CHECK(o == (approx < 0 ? Ordering::Less : Ordering::Greater));
    }
  }
}

TEST_CASE("entry and vector comparison") {
  CHECK(compare(Infinity{}, Infinity{}) == Ordering::Equal);
  CHECK(compare(Infinity{}, fin(1000)) == Ordering::Greater);
  CHECK(compare(fin(1000), Infinity{}) == Ordering::Less);
  CHECK(compare(RootSum::sqrt_of(8), RootSum::sqrt_of(2)) == Ordering::Greater);

  const PotentialVec zero{fin(0), fin(0), fin(0), fin(0), fin(0)};
  const PotentialVec one{fin(1), fin(0), fin(0), fin(0), fin(0)};
  CHECK(lex_compare(zero, one) == Ordering::Less);
  CHECK(lex_compare(one, zero) == Ordering::Greater);
  CHECK(lex_compare(one, one) == Ordering::Equal);

  const PotentialVec a{Infinity{}, fin(4), fin(4), fin(0), fin(0)};
  const PotentialVec b{Infinity{}, fin(4), fin(4), fin(1), fin(0)};
  CHECK(lex_compare(a, b) == Ordering::Less);
  // A decided earlier entry wins over an undecided later one.
  const RootSum tiny = RootSum::sqrt_of(2) - RootSum::rational(sqrt_bracket(2, 1200).lo);
  const PotentialVec u1{fin(1), tiny, fin(0), fin(0), fin(0)};
  const PotentialVec u2{fin(2), fin(0), fin(0), fin(0), fin(0)};
  CHECK(lex_compare(u1, u2) == Ordering::Less);
  const PotentialVec u3{fin(1), fin(0), fin(0), fin(0), fin(0)};
  CHECK(lex_compare(u1, u3) == Ordering::Undecided);

  CHECK(to_string(Ordering::Undecided) == "undecided");
}

TEST_CASE("serialization of entries") {
  CHECK(to_json(PotentialEntry{Infinity{}}) == "inf");
  CHECK(to_json(fin(Rat(3, 2))) == "3/2");
  const nlohmann::json j = to_json(PotentialEntry{RootSum::sqrt_of(2)});
  REQUIRE(j.is_array());
  const Rat lo = *parse_rat(j[0].get<std::string>());
  const Rat hi = *parse_rat(j[1].get<std::string>());
  CHECK(lo * lo < 2);
  CHECK(hi * hi > 2);
  CHECK(to_json(PotentialVec{Infinity{}, fin(4), fin(4), fin(0), fin(0)}).dump() == R"(["inf","4","4","0","0"])");
}

TEST_CASE("potential f examples") {
  const PotentialVec lds = potential_f({P(0, 0), P(3, 0), P(7, 0)});
  for (const auto& e : lds) CHECK(exactly(e, 0));
  for (const auto& e : potential_f({P(2, 2)})) CHECK(exactly(e, 0));

  const PotentialVec sq = potential_f({P(0, 0), P(1, 0), P(1, 1), P(0, 1)});
  CHECK(exactly(sq[0], 1));
  CHECK(compare(sq[1], RootSum::sqrt_of(8)) == Ordering::Equal);
  CHECK(exactly(sq[2], 0));
  CHECK(exactly(sq[3], 0));
  CHECK(exactly(sq[4], 0));

  // 4x1 rectangle with a robot at its center; perimeter origin (4,0).
  const PotentialVec rect = potential_f({P(0, 0), P(4, 0), P(4, 1), P(0, 1), {Rat(2), Rat(1, 2)}});
  CHECK(exactly(rect[0], 4));
  CHECK(exactly(rect[1], 0));
  CHECK(exactly(rect[2], 1));
  CHECK(exactly(rect[3], 0 + 1 + 5 + 6));
  CHECK(compare(rect[4], RootSum::sqrt_of(Rat(17, 4))) == Ordering::Equal);
}

TEST_CASE("perimeter origin") {
  const auto tri = hull_of(std::vector<Point>{P(0, 0), P(10, 0), P(9, 3)});
  CHECK(tri->vertex(perimeter_origin(*tri)) == P(10, 0));
  // Two longest edges end at (4,0) and (0,1): the rightmost wins.
  const auto rect = hull_of(std::vector<Point>{P(0, 0), P(4, 0), P(4, 1), P(0, 1)});
  CHECK(rect->vertex(perimeter_origin(*rect)) == P(4, 0));
  // Regular-length ties resolved by x then y.
  const auto rhombus = hull_of(std::vector<Point>{P(0, 0), P(5, 0), P(8, 4), P(3, 4)});
  CHECK(rhombus->vertex(perimeter_origin(*rhombus)) == P(8, 4));
}

TEST_CASE("potential f agrees with a floating evaluation") {
  std::mt19937_64 gen(13);
  int asym = 0, sym = 0;
  for (int i = 0; i < 400; ++i) {
    const int n = 3 + static_cast<int>(gen() % 6);
    std::vector<Point> pts;
    const bool square = gen() % 4 == 0;
    if (square) {
      const long s = 2 + static_cast<long>(gen() % 5);
      pts = {P(0, 0), P(s, 0), P(s, s), P(0, s)};
    }
    while (static_cast<int>(pts.size()) < n + (square ? 4 : 0)) {
      pts.push_back(P(static_cast<long>(gen() % 13) - 6, static_cast<long>(gen() % 13) - 6));
      if (square) pts.back() = P(static_cast<long>(gen() % 3) + 1, static_cast<long>(gen() % 3) + 1);
    }
    const PotentialVec f = potential_f(pts);
    auto hull = hull_of(pts);
    if (!hull) continue;
    // Shoelace area, independent of HullView::area.
    double area = 0;
    for (std::size_t k = 0; k < hull->size(); ++k) {
      const Point& a = hull->vertex(k);
      const Point& b = hull->vertex(k + 1);
      area += a.x.get_d() * b.y.get_d() - a.y.get_d() * b.x.get_d();
    }
    CHECK(near(f[0], area / 2));

    bool equilateral = true;
    for (std::size_t k = 0; k < hull->size(); ++k) {
      if (dist2(hull->vertex(k), hull->vertex(k + 1)) != dist2(hull->vertex(0), hull->vertex(1))) equilateral = false;
    }
    if (equilateral) {
      ++sym;
      double cx = 0, cy = 0;
      for (const Point& v : hull->vertices) {
        cx += v.x.get_d();
        cy += v.y.get_d();
      }
      const Point c{Rat(cx / hull->size()), Rat(cy / hull->size())};
      double f2 = 0;
      for (const Point& p : pts) f2 += d(c, p);
      CHECK(near(f[1], f2));
      CHECK(exactly(f[2], 0));
      CHECK(exactly(f[3], 0));
      CHECK(exactly(f[4], 0));
      continue;
    }
    ++asym;
    CHECK(exactly(f[1], 0));
    // Perimeter walk from the counter-clockwise end of a longest edge.
    std::size_t origin = 0;
    double longest = -1;
    for (std::size_t k = 0; k < hull->size(); ++k) {
      const double len = d(hull->vertex(k), hull->vertex(k + 1));
      const Point& end = hull->vertex(k + 1);
      const Point& cur = hull->vertex(origin);
      if (len > longest + 1e-9 ||
          (std::abs(len - longest) <= 1e-9 && (end.x > cur.x || (end.x == cur.x && end.y > cur.y)))) {
        origin = (k + 1) % hull->size();
        longest = std::max(longest, len);
      }
    }
    long inside = 0;
    double f4 = 0, f5 = 0;
    for (const Point& p : pts) {
      double nearest = 1e18;
      for (const Point& v : hull->vertices) nearest = std::min(nearest, d(p, v));
      f5 += nearest;
      double walked = 0;
      bool on_boundary = false;
      for (std::size_t step = 0; step < hull->size() && !on_boundary; ++step) {
        const Point& a = hull->vertex(origin + step);
        const Point& b = hull->vertex(origin + step + 1);
        if (p == a || (on_segment(p, a, b) && p != b)) {
          walked += d(a, p);
          on_boundary = true;
        } else {
          walked += d(a, b);
        }
      }
      if (on_boundary) {
        f4 += walked;
      } else {
        ++inside;
      }
    }
    CHECK(exactly(f[2], inside));
    CHECK(near(f[3], f4));
    CHECK(near(f[4], f5));
  }
  CHECK(asym > 200);
  CHECK(sym > 20);
}

TEST_CASE("potential g examples") {
  const PotentialVec aa = potential_g({{P(0, 0), kA}, {P(4, 0), kA}});
  CHECK(is_inf(aa[0]));
  CHECK(exactly(aa[1], 4));
  CHECK(exactly(aa[2], 4));
  CHECK(exactly(aa[3], 0));
  CHECK(exactly(aa[4], 0));

  for (const auto& e : potential_g({{P(1, 1), kA}, {P(1, 1), kA}})) CHECK(exactly(e, 0));

  const PotentialVec one_a = potential_g({{P(0, 0), kA}, {P(1, 0), kB}, {P(4, 0), kB}});
  CHECK(exactly(one_a[0], 5));
  for (int k = 1; k < 5; ++k) CHECK(exactly(one_a[k], 0));

  const PotentialVec no_a = potential_g({{P(0, 0), kB}, {P(3, 0), kB}, {P(4, 0), kB}});
  CHECK(is_inf(no_a[0]));
  CHECK(exactly(no_a[1], 4));
  CHECK(exactly(no_a[2], 2 + 1 + 2));
  CHECK(exactly(no_a[3], 3));
  CHECK(exactly(no_a[4], 0));

  const PotentialVec gathered_b = potential_g({{P(2, 2), kB}, {P(2, 2), kB}});
  CHECK(is_inf(gathered_b[0]));
  CHECK(exactly(gathered_b[1], 0));
  CHECK(exactly(gathered_b[3], 2));

  const PotentialVec three = potential_g({{P(0, 0), kA}, {P(3, 0), kA}, {P(10, 0), kA}, {P(6, 0), kA}});
  for (int k = 0; k < 4; ++k) CHECK(is_inf(three[k]));
  CHECK(exactly(three[4], 3 + 4));

  // Diagonal line: distances are irrational.
  const PotentialVec diag = potential_g({{P(0, 0), kA}, {P(1, 1), kA}, {P(5, 5), kA}});
  CHECK(compare(diag[4], RootSum::sqrt_of(2)) == Ordering::Equal);

  // A point holding A and B counts once as a point with A.
  const PotentialVec mixed = potential_g({{P(0, 0), kA}, {P(0, 0), kB}, {P(2, 0), kA}});
  CHECK(is_inf(mixed[0]));
  CHECK(exactly(mixed[1], 2));
  CHECK(exactly(mixed[3], 1));
}

TEST_CASE("lexicographic order across g branches") {
  const PotentialVec gathered = potential_g({{P(0, 0), kA}, {P(0, 0), kB}});
  const PotentialVec one_a = potential_g({{P(0, 0), kA}, {P(2, 0), kB}});
  const PotentialVec two_a = potential_g({{P(0, 0), kA}, {P(2, 0), kA}});
  const PotentialVec three_a = potential_g({{P(0, 0), kA}, {P(1, 0), kA}, {P(2, 0), kA}});
  CHECK(lex_compare(gathered, one_a) == Ordering::Less);
  CHECK(lex_compare(one_a, two_a) == Ordering::Less);
  CHECK(lex_compare(two_a, three_a) == Ordering::Less);
  CHECK(lex_compare(three_a, three_a) == Ordering::Equal);
}
