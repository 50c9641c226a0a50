#include "gathersim/potentials.hpp"

#include <algorithm>

namespace gathersim {

namespace {

constexpr unsigned kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
                                     67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139,
                                     149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199};

bool is_square(const Int& n) { return mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace

RootSum RootSum::rational(const Rat& r) {
  RootSum out;
  out.add_term(1, r);
  return out;
}

RootSum RootSum::sqrt_of(const Rat& value) {
  RootSum out;
  if (sgn(value) == 0) return out;
  // sqrt(a/b) = sqrt(a*b) / b
  Int radicand = value.get_num() * value.get_den();
  Rat coeff(1, value.get_den());
  coeff.canonicalize();
  if (is_square(radicand)) {
    out.add_term(1, coeff * Rat(isqrt(radicand)));
    return out;
  }
  Int outside = 1;
  for (unsigned p : kSmallPrimes) {
    const Int sq = Int(p) * p;
    while (mpz_divisible_p(radicand.get_mpz_t(), sq.get_mpz_t())) {
      radicand /= sq;
      outside *= p;
    }
  }
  if (is_square(radicand)) {
    outside *= isqrt(radicand);
    radicand = 1;
  }
  out.add_term(radicand, coeff * Rat(outside));
  return out;
}

void RootSum::add_term(const Int& radicand, const Rat& coeff) {
  if (sgn(coeff) == 0) return;
  // sqrt(r) = (s / r') sqrt(r') when r * r' = s^2, so radicands of one
  // square class share a term and a zero sum is always empty.
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->first == radicand) break;
    const Int prod = it->first * radicand;
    if (!is_square(prod)) continue;
    it->second += coeff * ratio(isqrt(prod), it->first);
    if (sgn(it->second) == 0) terms_.erase(it);
    return;
  }
  auto [it, inserted] = terms_.emplace(radicand, coeff);
  if (!inserted) {
    it->second += coeff;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

RootSum& RootSum::operator+=(const RootSum& o) {
  for (const auto& [r, c] : o.terms_) add_term(r, c);
  return *this;
}

RootSum RootSum::operator-(const RootSum& o) const {
  RootSum out = *this;
  for (const auto& [r, c] : o.terms_) out.add_term(r, -c);
  return out;
}

std::optional<Rat> RootSum::as_rational() const {
  if (terms_.empty()) return Rat(0);
  if (terms_.size() == 1 && terms_.begin()->first == 1) return terms_.begin()->second;
  return std::nullopt;
}

std::pair<Rat, Rat> RootSum::enclose(unsigned bits) const {
  Rat lo = 0;
  Rat hi = 0;
  for (const auto& [r, c] : terms_) {
    const SqrtBracket b = sqrt_bracket(Rat(r), bits);
    if (sgn(c) >= 0) {
      lo += c * b.lo;
      hi += c * b.hi;
    } else {
      lo += c * b.hi;
      hi += c * b.lo;
    }
  }
  return {lo, hi};
}

std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "less";
    case Ordering::Equal: return "equal";
    case Ordering::Greater: return "greater";
    case Ordering::Undecided: return "undecided";
  }
  return "?";
}

Ordering sign_of(const RootSum& v) {
  if (v.is_zero()) return Ordering::Equal;
  if (auto r = v.as_rational()) return sgn(*r) < 0 ? Ordering::Less : Ordering::Greater;
  for (unsigned bits : {64u, 256u, 1024u}) {
    const auto [lo, hi] = v.enclose(bits);
    if (sgn(lo) > 0) return Ordering::Greater;
    if (sgn(hi) < 0) return Ordering::Less;
  }
  return Ordering::Undecided;
}

Ordering compare(const PotentialEntry& a, const PotentialEntry& b) {
  const bool ia = std::holds_alternative<Infinity>(a);
  const bool ib = std::holds_alternative<Infinity>(b);
  if (ia || ib) {
    if (ia && ib) return Ordering::Equal;
    return ia ? Ordering::Greater : Ordering::Less;
  }
  return sign_of(std::get<RootSum>(a) - std::get<RootSum>(b));
}

Ordering lex_compare(const PotentialVec& a, const PotentialVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Ordering o = compare(a[i], b[i]);
    if (o != Ordering::Equal) return o;
  }
  return Ordering::Equal;
}

nlohmann::json to_json(const PotentialEntry& e) {
  if (std::holds_alternative<Infinity>(e)) return "inf";
  const RootSum& v = std::get<RootSum>(e);
  if (auto r = v.as_rational()) return format_rat(*r);
  const auto [lo, hi] = v.enclose(64);
  return nlohmann::json::array({format_rat(lo), format_rat(hi)});
}

nlohmann::json to_json(const PotentialVec& v) {
  auto out = nlohmann::json::array();
  for (const auto& e : v) out.push_back(to_json(e));
  return out;
}

std::size_t perimeter_origin(const HullView& hull) {
  const auto& e = hull.edge_lengths_sq;
  const Rat longest = *std::max_element(e.begin(), e.end());
  std::size_t best = hull.size();
  for (std::size_t k = 0; k < hull.size(); ++k) {
    if (e[k] != longest) continue;
    const std::size_t cand = (k + 1) % hull.size();
    if (best == hull.size()) {
      best = cand;
      continue;
    }
    const Point& a = hull.vertices[cand];
    const Point& b = hull.vertices[best];
    if (a.x > b.x || (a.x == b.x && a.y > b.y)) best = cand;
  }
  return best;
}

namespace {

PotentialVec zeros() { return {RootSum{}, RootSum{}, RootSum{}, RootSum{}, RootSum{}}; }

RootSum dist(const Point& a, const Point& b) { return RootSum::sqrt_of(dist2(a, b)); }

}  // namespace

PotentialVec potential_f(const std::vector<Point>& robots) {
  PotentialVec out = zeros();
  auto hull = hull_of(robots);
  if (!hull) return out;

  out[0] = RootSum::rational(hull->area());
  if (is_symmetric(*hull)) {
    const Point c = hull_center(*hull);
    RootSum f2;
    for (const Point& p : robots) f2 += dist(c, p);
    out[1] = f2;
    return out;
  }

  const std::size_t k = hull->size();
  const std::size_t origin = perimeter_origin(*hull);
  // offset[j]: perimeter length from the origin to vertex j, counter-clockwise.
  std::vector<RootSum> offset(k);
  for (std::size_t step = 1; step < k; ++step) {
    const std::size_t prev = (origin + step - 1) % k;
    offset[(origin + step) % k] = offset[prev];
    offset[(origin + step) % k] += RootSum::sqrt_of(hull->edge_lengths_sq[prev]);
  }

  long inside = 0;
  RootSum f4;
  RootSum f5;
  for (const Point& p : robots) {
    const HullLocation loc = hull->locate(p);
    if (loc.kind == HullLocation::Interior) ++inside;
    if (loc.kind == HullLocation::Vertex) f4 += offset[loc.index];
    if (loc.kind == HullLocation::Edge) {
      f4 += offset[loc.index];
      f4 += dist(hull->vertices[loc.index], p);
    }
    Rat nearest = dist2(p, hull->vertices.front());
    for (const Point& v : hull->vertices) nearest = std::min(nearest, dist2(p, v));
    f5 += RootSum::sqrt_of(nearest);
  }
  out[2] = RootSum::rational(Rat(inside));
  out[3] = f4;
  out[4] = f5;
  return out;
}

PotentialVec potential_g(const std::vector<RobotAt>& robots) {
  std::vector<Point> a_points;
  long b_count = 0;
  Point left = robots.front().position;
  Point right = left;
  for (const RobotAt& r : robots) {
    if (r.color.inner == Inner::A) a_points.push_back(r.position);
    if (r.color.inner == Inner::B) ++b_count;
    left = std::min(left, r.position);
    right = std::max(right, r.position);
  }
  std::sort(a_points.begin(), a_points.end());
  a_points.erase(std::unique(a_points.begin(), a_points.end()), a_points.end());

  PotentialVec out = zeros();
  if (a_points.size() == 1) {
    RootSum g1;
    for (const RobotAt& r : robots) g1 += dist(a_points.front(), r.position);
    out[0] = g1;
    return out;
  }
  if (a_points.size() == 0 || a_points.size() == 2) {
    const Point mid = midpoint(left, right);
    RootSum g3;
    for (const RobotAt& r : robots) g3 += dist(mid, r.position);
    out[0] = Infinity{};
    out[1] = dist(left, right);
    out[2] = g3;
    out[3] = RootSum::rational(Rat(b_count));
    return out;
  }
  RootSum g5;
  for (const RobotAt& r : robots) {
    g5 += RootSum::sqrt_of(std::min(dist2(r.position, left), dist2(r.position, right)));
  }
  out = {Infinity{}, Infinity{}, Infinity{}, Infinity{}, g5};
  return out;
}

}  // namespace gathersim
