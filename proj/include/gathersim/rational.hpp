#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace gathersim {

// Exact rational scalar. GMP keeps values canonical (lowest terms, positive
// denominator) after every arithmetic operation.
using Rat = mpq_class;
using Int = mpz_class;

// Canonical num / den; den != 0.
inline Rat ratio(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p/q" or "p" with optional leading sign. Rejects q == 0 and
// anything that is not a plain decimal integer pair.
std::optional<Rat> parse_rat(std::string_view text);

// Canonical "p/q" text; integers are written as "p".
std::string format_rat(const Rat& r);

inline std::strong_ordering compare(const Rat& a, const Rat& b) {
  const int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// Closed interval [lo, hi] containing sqrt(value). lo == hi iff the root is
// rational. Endpoints are dyadic with `bits` fractional bits otherwise.
struct SqrtBracket {
  Rat lo;
  Rat hi;
  bool exact() const { return lo == hi; }
};

SqrtBracket sqrt_bracket(const Rat& value, unsigned bits);

// Exact rational square root when one exists.
std::optional<Rat> exact_sqrt(const Rat& value);

}  // namespace gathersim
