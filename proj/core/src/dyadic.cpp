#include "hollow/dyadic.hpp"

#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hollow {

namespace {

// Levels are capped so that squared distances and their sums stay well
// inside int64 when taken to a common denominator.
constexpr std::uint32_t kMaxLevel = 24;

[[noreturn]] void bad_token(std::string_view what, std::string_view token) {
  throw std::invalid_argument(std::string(what) + ": '" + std::string(token) + "'");
}

std::int64_t parse_int(std::string_view s, std::string_view token) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) bad_token("malformed integer", token);
  return v;
}

}  // namespace

Dyadic::Dyadic(std::int64_t n, std::uint32_t lvl) : num(n), level(lvl) {
  if (lvl > kMaxLevel) throw std::invalid_argument("dyadic level too fine");
  while (level > 0 && num % 2 == 0) {
    num /= 2;
    --level;
  }
}

std::strong_ordering Dyadic::operator<=>(const Dyadic& other) const {
  const auto lhs = static_cast<__int128>(num) << other.level;
  const auto rhs = static_cast<__int128>(other.num) << level;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Dyadic::str() const {
  std::ostringstream os;
  os << num << "/2^" << level;
  return os.str();
}

Dyadic Dyadic::parse(std::string_view token) {
  const auto slash = token.find("/2^");
  if (slash == std::string_view::npos) bad_token("malformed dyadic", token);
  const std::int64_t n = parse_int(token.substr(0, slash), token);
  const std::int64_t lvl = parse_int(token.substr(slash + 3), token);
  if (lvl < 0 || lvl > kMaxLevel) bad_token("dyadic level out of range", token);
  return Dyadic(n, static_cast<std::uint32_t>(lvl));
}

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    den = 1;
  } else {
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num /= g;
    den /= g;
  }
}

Rational::Rational(const Dyadic& d) : Rational(d.num, std::int64_t{1} << d.level) {}

std::strong_ordering Rational::operator<=>(const Rational& other) const {
  const auto lhs = static_cast<__int128>(num) * other.den;
  const auto rhs = static_cast<__int128>(other.num) * den;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational Rational::operator+(const Rational& o) const {
  const std::int64_t g = std::gcd(den, o.den);
  const std::int64_t scale = o.den / g;
  return Rational(num * scale + o.num * (den / g), den * scale);
}

Rational Rational::operator*(const Rational& o) const {
  const std::int64_t g1 = std::gcd(num < 0 ? -num : num, o.den);
  const std::int64_t g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
  return Rational((num / g1) * (o.num / g2), (den / g2) * (o.den / g1));
}

std::string Rational::str() const {
  std::ostringstream os;
  os << num << "/" << den;
  return os.str();
}

Rational Rational::parse(std::string_view token) {
  const auto slash = token.find('/');
  if (slash == std::string_view::npos) bad_token("malformed rational", token);
  const std::int64_t n = parse_int(token.substr(0, slash), token);
  const std::int64_t d = parse_int(token.substr(slash + 1), token);
  return Rational(n, d);
}

DyadicPoint::DyadicPoint(std::uint32_t dimension, const std::array<Dyadic, kMaxDim>& c)
    : dim(dimension), coord(c) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("unsupported dimension");
  for (std::uint32_t i = 0; i < kMaxDim; ++i) {
    if (i >= dim) {
      coord[i] = Dyadic();
      continue;
    }
    if (coord[i].num < 0 || Rational(coord[i]) > Rational(1, 1))
      throw std::invalid_argument("coordinate outside the unit interval");
  }
}

std::strong_ordering DyadicPoint::operator<=>(const DyadicPoint& other) const {
  if (auto c = dim <=> other.dim; c != 0) return c;
  for (std::uint32_t i = 0; i < dim; ++i)
    if (auto c = coord[i] <=> other.coord[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::uint32_t DyadicPoint::max_level() const {
  std::uint32_t lvl = 0;
  for (std::uint32_t i = 0; i < dim; ++i) lvl = std::max(lvl, coord[i].level);
  return lvl;
}

std::string DyadicPoint::str() const {
  std::string out;
  for (std::uint32_t i = 0; i < dim; ++i) {
    if (i) out += ' ';
    out += coord[i].str();
  }
  return out;
}

DyadicPoint DyadicPoint::parse(std::string_view text) {
  std::array<Dyadic, kMaxDim> c{};
  std::uint32_t n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) break;
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    if (n >= kMaxDim) throw std::invalid_argument("too many coordinates");
    c[n++] = Dyadic::parse(text.substr(pos, end - pos));
    pos = end;
  }
  if (n == 0) throw std::invalid_argument("empty point");
  return DyadicPoint(n, c);
}

Rational squared_distance(const DyadicPoint& a, const DyadicPoint& b) {
  if (a.dim != b.dim) throw std::invalid_argument("dimension mismatch");
  Rational sum;
  for (std::uint32_t i = 0; i < a.dim; ++i) {
    const std::uint32_t lvl = std::max(a.coord[i].level, b.coord[i].level);
    const std::int64_t da = a.coord[i].num << (lvl - a.coord[i].level);
    const std::int64_t db = b.coord[i].num << (lvl - b.coord[i].level);
    const std::int64_t diff = da - db;
    sum = sum + Rational(diff * diff, std::int64_t{1} << (2 * lvl));
  }
  return sum;
}

std::array<std::int64_t, kMaxDim> grid_coords(const DyadicPoint& p, std::uint32_t level) {
  std::array<std::int64_t, kMaxDim> g{};
  for (std::uint32_t i = 0; i < p.dim; ++i) {
    const Dyadic& c = p.coord[i];
    if (c.level > level)
      throw std::invalid_argument("point not on the level-" + std::to_string(level) + " grid");
    g[i] = c.num << (level - c.level);
  }
  return g;
}

DyadicPoint point_from_grid(const std::array<std::int64_t, kMaxDim>& g,
                            std::uint32_t level, std::uint32_t dim) {
  std::array<Dyadic, kMaxDim> c{};
  for (std::uint32_t i = 0; i < dim; ++i) c[i] = Dyadic(g[i], level);
  return DyadicPoint(dim, c);
}

}  // namespace hollow
