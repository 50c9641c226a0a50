#pragma once

#include "gathersim/geometry.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gathersim {

// What one robot contributes to a station: a color letter plus the
// pending-move / pending-color annotations used for in-flight configurations.
struct Mark {
  char letter = 0;
  bool pending_move = false;
  char pending_color = 0;  // 0 when not in pending color

  friend auto operator<=>(const Mark&, const Mark&) = default;
};

std::string to_string(const Mark& m);

struct Station {
  Point position;
  std::set<Mark> marks;

  bool has(char letter) const;
  bool has_only(std::string_view letters) const;
};

// Classification of a collinear configuration into stations along the
// segment. Stations run from the lexicographically smaller endpoint.
struct LineView {
  std::vector<Station> stations;
  bool has_exact_midpoint = false;

  const Point& left() const { return stations.front().position; }
  const Point& right() const { return stations.back().position; }
  Point midpoint() const { return gathersim::midpoint(left(), right()); }
  // Number of stations holding `letter`.
  int count(char letter) const;
  // All letters present anywhere.
  std::set<char> letters() const;
  const Station* station_at(const Point& p) const;
  std::string to_string() const;
};

// Pre: non-empty and collinear.
LineView classify_line(const std::vector<std::pair<Point, Mark>>& robots);

// Nearest endpoint of the segment to p. A point exactly at the midpoint of a
// non-degenerate segment gets the left endpoint.
Point nearest_endpoint(const LineView& line, const Point& p);
Point furthest_endpoint(const LineView& line, const Point& p);

// Pattern expressions over station sequences:
//   forall:S        every mark has letter S
//   forall:S,M      the letters present are exactly {S, M}
//   SS^+S, AB_mA, M^+(S|M)M^*, (M|M[pm,pc->E]|E)^*, ...
// A bare letter matches a station whose marks all carry that letter and no
// annotations; "X[pm]" and "X[pc->Y]" additionally admit the listed
// annotations. A station matches a factor iff every mark matches one of its
// alternatives. "_m" matches one station at the exact midpoint. Matching is
// tried in both directions along the segment.
class Pattern {
 public:
  static std::optional<Pattern> parse(std::string_view text);
  // Throws std::invalid_argument on malformed text.
  static Pattern must(std::string_view text);

  bool matches(const LineView& line) const;
  const std::string& text() const { return text_; }

 private:
  struct Alt {
    char letter = 0;
    bool allow_pm = false;
    char allow_pc = 0;
  };
  enum class Quant { One, Plus, Star, Mid };
  struct Term {
    std::vector<Alt> alts;
    Quant quant = Quant::One;
  };

  bool term_accepts(const Term& term, const Station& s) const;
  bool match_from(const std::vector<const Station*>& seq, const LineView& line, std::size_t ti,
                  std::size_t si) const;

  std::string text_;
  bool forall_ = false;
  std::set<char> forall_letters_;
  std::vector<Term> terms_;
};

}  // namespace gathersim
