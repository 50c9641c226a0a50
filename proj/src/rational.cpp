#include "gathersim/rational.hpp"

#include <cassert>
#include <cctype>

namespace gathersim {

namespace {

bool is_integer_text(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) {
    i = 1;
    if (s.size() == 1) return false;
  }
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rat> parse_rat(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_text(num, true) || !is_integer_text(den, false)) return std::nullopt;
  if (num[0] == '+') num.remove_prefix(1);

  Int n(std::string(num), 10);
  Int d(std::string(den), 10);
  if (d == 0) return std::nullopt;
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string format_rat(const Rat& r) { return r.get_str(10); }

std::optional<Rat> exact_sqrt(const Rat& value) {
  if (sgn(value) < 0) return std::nullopt;
  const Int& n = value.get_num();
  const Int& d = value.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  Int rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rat r(rn, rd);
  r.canonicalize();
  return r;
}

SqrtBracket sqrt_bracket(const Rat& value, unsigned bits) {
  assert(sgn(value) >= 0);
  if (auto root = exact_sqrt(value)) return {*root, *root};

  // floor(sqrt(x)) == floor(sqrt(floor(x))) for x >= 0.
  Int scaled = value.get_num();
  scaled <<= 2 * bits;
  Int floor_scaled = scaled / value.get_den();
  Int root;
  mpz_sqrt(root.get_mpz_t(), floor_scaled.get_mpz_t());

  Int denom = 1;
  denom <<= bits;
  Rat lo(root, denom);
  Rat hi(root + 1, denom);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

}  // namespace gathersim
