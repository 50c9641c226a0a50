#pragma once

#include "gathersim/color.hpp"
#include "gathersim/geometry.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace gathersim {

// Exact value sum_k c_k * sqrt(r_k) with rational c_k and integer r_k >= 1.
// Radicands have their square factors pulled out as far as a perfect-square
// test and trial division by small primes allow; rationals use radicand 1.
// Terms whose radicands differ by a square factor are merged, so the sum is
// zero exactly when it has no terms.
class RootSum {
 public:
  RootSum() = default;
  static RootSum rational(const Rat& r);
  // sqrt(value) for a non-negative rational.
  static RootSum sqrt_of(const Rat& value);

  RootSum& operator+=(const RootSum& o);
  RootSum operator-(const RootSum& o) const;
  bool is_zero() const { return terms_.empty(); }
  // Exact when every term is rational.
  std::optional<Rat> as_rational() const;

  // Certified enclosure with `bits` fractional bits per root.
  std::pair<Rat, Rat> enclose(unsigned bits) const;
  friend bool operator==(const RootSum&, const RootSum&) = default;

 private:
  void add_term(const Int& radicand, const Rat& coeff);
  std::map<Int, Rat> terms_;
};

enum class Ordering { Less, Equal, Greater, Undecided };

std::string to_string(Ordering o);

// Sign of a root sum, escalating precision 64 -> 256 -> 1024 bits.
Ordering sign_of(const RootSum& v);

struct Infinity {
  friend bool operator==(Infinity, Infinity) = default;
};
using PotentialEntry = std::variant<Infinity, RootSum>;
using PotentialVec = std::array<PotentialEntry, 5>;

Ordering compare(const PotentialEntry& a, const PotentialEntry& b);
// Lexicographic comparison; Undecided at the first entry that cannot be
// separated.
Ordering lex_compare(const PotentialVec& a, const PotentialVec& b);

// "inf", "p/q", or ["lo","hi"] at 64 bits.
nlohmann::json to_json(const PotentialEntry& e);
nlohmann::json to_json(const PotentialVec& v);

struct RobotAt {
  Point position;
  Color color;
};

// Reference vertex for the perimeter component: the counter-clockwise end
// of a longest hull edge, ties to the rightmost then topmost candidate.
std::size_t perimeter_origin(const HullView& hull);

// Lexicographic potential of ElectOneLDS over robot positions.
PotentialVec potential_f(const std::vector<Point>& robots);

// Lexicographic potential of LU-Gather. Pre: collinear.
PotentialVec potential_g(const std::vector<RobotAt>& robots);

}  // namespace gathersim
