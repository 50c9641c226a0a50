#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gathersim {

enum class Phase : std::uint8_t { None = 0, S = 1, M = 2, E = 3 };
enum class Inner : std::uint8_t { None = 0, A = 1, B = 2 };

// A light value. Three-color algorithms use only the phase, LU-Gather only
// the inner part, the six-color gatherer both. (None, None) is the light
// that is off, used by the oblivious ElectOneLDS.
struct Color {
  Phase phase = Phase::None;
  Inner inner = Inner::None;

  int index() const { return static_cast<int>(phase) * 3 + static_cast<int>(inner); }
  static Color from_index(int i) { return {static_cast<Phase>(i / 3), static_cast<Inner>(i % 3)}; }
  friend bool operator==(Color, Color) = default;
  friend auto operator<=>(Color a, Color b) { return a.index() <=> b.index(); }
};

inline constexpr int kColorCount = 12;

// "S", "A", "SA", "MB", ...; the off light is "O".
std::string to_string(Color c);
std::optional<Color> parse_color(std::string_view text);

char phase_letter(Phase p);
char inner_letter(Inner i);

class ColorSet {
 public:
  ColorSet() = default;
  explicit ColorSet(Color c) { insert(c); }
  void insert(Color c) { bits_ |= static_cast<std::uint16_t>(1u << c.index()); }
  bool contains(Color c) const { return (bits_ >> c.index()) & 1u; }
  bool empty() const { return bits_ == 0; }
  ColorSet& operator|=(ColorSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  std::vector<Color> colors() const;
  friend bool operator==(ColorSet, ColorSet) = default;

 private:
  std::uint16_t bits_ = 0;
};

enum class AlgorithmId { ElectOneLds, LuGather, SixColor, LuGatherAsync, ThreeColor };

std::string to_string(AlgorithmId a);
std::optional<AlgorithmId> parse_algorithm(std::string_view text);

// Light every robot starts with.
Color initial_color(AlgorithmId a);
// Whether c belongs to the algorithm's light alphabet.
bool in_alphabet(AlgorithmId a, Color c);

}  // namespace gathersim
