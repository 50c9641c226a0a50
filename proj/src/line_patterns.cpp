#include "gathersim/line_patterns.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace gathersim {

std::string to_string(const Mark& m) {
  std::string out(1, m.letter);
  if (!m.pending_move && !m.pending_color) return out;
  out += '[';
  if (m.pending_move) out += "pm";
  if (m.pending_color) {
    if (m.pending_move) out += ',';
    out += "pc->";
    out += m.pending_color;
  }
  out += ']';
  return out;
}

bool Station::has(char letter) const {
  return std::any_of(marks.begin(), marks.end(), [&](const Mark& m) { return m.letter == letter; });
}

bool Station::has_only(std::string_view letters) const {
  return std::all_of(marks.begin(), marks.end(),
                     [&](const Mark& m) { return letters.find(m.letter) != std::string_view::npos; });
}

int LineView::count(char letter) const {
  return static_cast<int>(std::count_if(stations.begin(), stations.end(), [&](const Station& s) { return s.has(letter); }));
}

std::set<char> LineView::letters() const {
  std::set<char> out;
  for (const Station& s : stations) {
    for (const Mark& m : s.marks) out.insert(m.letter);
  }
  return out;
}

const Station* LineView::station_at(const Point& p) const {
  for (const Station& s : stations) {
    if (s.position == p) return &s;
  }
  return nullptr;
}

std::string LineView::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const auto& marks = stations[i].marks;
    if (marks.size() == 1) {
      out += gathersim::to_string(*marks.begin());
    } else {
      out += '(';
      bool first = true;
      for (const Mark& m : marks) {
        if (!first) out += '|';
        out += gathersim::to_string(m);
        first = false;
      }
      out += ')';
    }
    if (has_exact_midpoint && i == 1) out += "_m";
  }
  return out;
}

LineView classify_line(const std::vector<std::pair<Point, Mark>>& robots) {
  std::map<Point, std::set<Mark>> by_point;
  for (const auto& [p, m] : robots) by_point[p].insert(m);

  // Points on a line sort lexicographically in order along the line.
  LineView line;
  for (auto& [p, marks] : by_point) line.stations.push_back({p, std::move(marks)});
  line.has_exact_midpoint = line.stations.size() == 3 && line.stations[1].position == line.midpoint();
  return line;
}

Point nearest_endpoint(const LineView& line, const Point& p) {
  const Rat dl = dist2(p, line.left());
  const Rat dr = dist2(p, line.right());
  return dr < dl ? line.right() : line.left();
}

Point furthest_endpoint(const LineView& line, const Point& p) {
  const Point n = nearest_endpoint(line, p);
  return n == line.left() ? line.right() : line.left();
}

namespace {

class PatternParser {
 public:
  explicit PatternParser(std::string_view text) : s_(text) {}

  bool at_end() const { return i_ >= s_.size(); }
  bool eat(std::string_view tok) {
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }
  std::optional<char> letter() {
    if (at_end()) return std::nullopt;
    const char c = s_[i_];
    if (c < 'A' || c > 'Z') return std::nullopt;
    ++i_;
    return c;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

std::optional<Pattern> Pattern::parse(std::string_view text) {
  Pattern pat;
  pat.text_ = std::string(text);
  PatternParser in(text);

  if (in.eat("forall:")) {
    pat.forall_ = true;
    do {
      auto c = in.letter();
      if (!c) return std::nullopt;
      pat.forall_letters_.insert(*c);
    } while (in.eat(","));
    if (!in.at_end()) return std::nullopt;
    return pat;
  }

  auto parse_alt = [&]() -> std::optional<Alt> {
    auto c = in.letter();
    if (!c) return std::nullopt;
    Alt alt{*c};
    if (in.eat("[")) {
      do {
        if (in.eat("pm")) {
          alt.allow_pm = true;
        } else if (in.eat("pc->")) {
          auto to = in.letter();
          if (!to) return std::nullopt;
          alt.allow_pc = *to;
        } else {
          return std::nullopt;
        }
      } while (in.eat(","));
      if (!in.eat("]")) return std::nullopt;
    }
    return alt;
  };

  while (!in.at_end()) {
    Term term;
    if (in.eat("(")) {
      do {
        auto alt = parse_alt();
        if (!alt) return std::nullopt;
        term.alts.push_back(*alt);
      } while (in.eat("|"));
      if (!in.eat(")")) return std::nullopt;
    } else {
      auto alt = parse_alt();
      if (!alt) return std::nullopt;
      term.alts.push_back(*alt);
    }
    if (in.eat("^+")) {
      term.quant = Quant::Plus;
    } else if (in.eat("^*")) {
      term.quant = Quant::Star;
    } else if (in.eat("_m")) {
      term.quant = Quant::Mid;
    }
    pat.terms_.push_back(std::move(term));
  }
  if (pat.terms_.empty()) return std::nullopt;
  return pat;
}

Pattern Pattern::must(std::string_view text) {
  auto p = parse(text);
  if (!p) throw std::invalid_argument("malformed pattern: " + std::string(text));
  return *p;
}

bool Pattern::term_accepts(const Term& term, const Station& s) const {
  return std::all_of(s.marks.begin(), s.marks.end(), [&](const Mark& m) {
    return std::any_of(term.alts.begin(), term.alts.end(), [&](const Alt& a) {
      return a.letter == m.letter && (!m.pending_move || a.allow_pm) &&
             (!m.pending_color || a.allow_pc == m.pending_color);
    });
  });
}

bool Pattern::match_from(const std::vector<const Station*>& seq, const LineView& line, std::size_t ti,
                         std::size_t si) const {
  if (ti == terms_.size()) return si == seq.size();
  const Term& term = terms_[ti];
  switch (term.quant) {
    case Quant::One:
      return si < seq.size() && term_accepts(term, *seq[si]) && match_from(seq, line, ti + 1, si + 1);
    case Quant::Mid:
      return si < seq.size() && seq.size() >= 3 && seq[si]->position == line.midpoint() &&
             term_accepts(term, *seq[si]) && match_from(seq, line, ti + 1, si + 1);
    case Quant::Plus:
    case Quant::Star: {
      std::size_t j = si;
      if (term.quant == Quant::Plus) {
        if (j >= seq.size() || !term_accepts(term, *seq[j])) return false;
        ++j;
      }
      while (true) {
        if (match_from(seq, line, ti + 1, j)) return true;
        if (j >= seq.size() || !term_accepts(term, *seq[j])) return false;
        ++j;
      }
    }
  }
  return false;
}

bool Pattern::matches(const LineView& line) const {
  if (forall_) return line.letters() == forall_letters_;
  std::vector<const Station*> seq;
  for (const Station& s : line.stations) seq.push_back(&s);
  if (match_from(seq, line, 0, 0)) return true;
  std::reverse(seq.begin(), seq.end());
  return match_from(seq, line, 0, 0);
}

}  // namespace gathersim
