#include "gathersim/color.hpp"

namespace gathersim {

char phase_letter(Phase p) {
  switch (p) {
    case Phase::S: return 'S';
    case Phase::M: return 'M';
    case Phase::E: return 'E';
    case Phase::None: break;
  }
  return 0;
}

char inner_letter(Inner i) {
  switch (i) {
    case Inner::A: return 'A';
    case Inner::B: return 'B';
    case Inner::None: break;
  }
  return 0;
}

std::string to_string(Color c) {
  std::string out;
  if (char p = phase_letter(c.phase)) out += p;
  if (char i = inner_letter(c.inner)) out += i;
  return out.empty() ? "O" : out;
}

std::optional<Color> parse_color(std::string_view text) {
  if (text == "O") return Color{};
  Color c;
  std::size_t i = 0;
  if (i < text.size()) {
    switch (text[i]) {
      case 'S': c.phase = Phase::S; ++i; break;
      case 'M': c.phase = Phase::M; ++i; break;
      case 'E': c.phase = Phase::E; ++i; break;
      default: break;
    }
  }
  if (i < text.size()) {
    switch (text[i]) {
      case 'A': c.inner = Inner::A; ++i; break;
      case 'B': c.inner = Inner::B; ++i; break;
      default: break;
    }
  }
  if (i != text.size() || text.empty()) return std::nullopt;
  return c;
}

std::vector<Color> ColorSet::colors() const {
  std::vector<Color> out;
  for (int i = 0; i < kColorCount; ++i) {
    if ((bits_ >> i) & 1u) out.push_back(Color::from_index(i));
  }
  return out;
}

std::string to_string(AlgorithmId a) {
  switch (a) {
    case AlgorithmId::ElectOneLds: return "elect-one-lds";
    case AlgorithmId::LuGather: return "lu-gather";
    case AlgorithmId::SixColor: return "six-color";
    case AlgorithmId::LuGatherAsync: return "lu-gather-async";
    case AlgorithmId::ThreeColor: return "three-color";
  }
  return "?";
}

std::optional<AlgorithmId> parse_algorithm(std::string_view text) {
  for (AlgorithmId a : {AlgorithmId::ElectOneLds, AlgorithmId::LuGather, AlgorithmId::SixColor,
                        AlgorithmId::LuGatherAsync, AlgorithmId::ThreeColor}) {
    if (to_string(a) == text) return a;
  }
  return std::nullopt;
}

Color initial_color(AlgorithmId a) {
  switch (a) {
    case AlgorithmId::ElectOneLds: return {};
    case AlgorithmId::LuGather: return {Phase::None, Inner::A};
    case AlgorithmId::SixColor: return {Phase::S, Inner::A};
    case AlgorithmId::LuGatherAsync:
    case AlgorithmId::ThreeColor: return {Phase::S, Inner::None};
  }
  return {};
}

bool in_alphabet(AlgorithmId a, Color c) {
  switch (a) {
    case AlgorithmId::ElectOneLds: return c == Color{};
    case AlgorithmId::LuGather: return c.phase == Phase::None && c.inner != Inner::None;
    case AlgorithmId::SixColor: return c.phase != Phase::None && c.inner != Inner::None;
    case AlgorithmId::LuGatherAsync:
    case AlgorithmId::ThreeColor: return c.phase != Phase::None && c.inner == Inner::None;
  }
  return false;
}

}  // namespace gathersim
