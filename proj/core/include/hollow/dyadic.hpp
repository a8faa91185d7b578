#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hollow {

/// Dyadic rational num / 2^level.
/// Canonical form: num odd, or level == 0. All constructors canonicalize,
/// so member-wise equality is value equality.
struct Dyadic {
  std::int64_t num = 0;
  std::uint32_t level = 0;

  Dyadic() = default;
  Dyadic(std::int64_t n, std::uint32_t lvl);

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  std::strong_ordering operator<=>(const Dyadic& other) const;

  bool is_zero() const { return num == 0; }

  /// Token form "num/2^level", e.g. "1/2^3".
  std::string str() const;
  static Dyadic parse(std::string_view token);
};

/// Exact non-negative rational with reduced numerator/denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);
  Rational(const Dyadic& d);

  friend bool operator==(const Rational&, const Rational&) = default;
  std::strong_ordering operator<=>(const Rational& other) const;

  Rational operator+(const Rational& o) const;
  Rational operator*(const Rational& o) const;

  bool is_zero() const { return num == 0; }

  /// Token form "num/den", e.g. "3/16"; integers render as "num/1".
  std::string str() const;
  static Rational parse(std::string_view token);
};

inline constexpr std::uint32_t kMaxDim = 4;

/// Point of the unit cube [0,1]^dim with exact dyadic coordinates.
/// Unused trailing coordinates stay value-initialized so default equality
/// and ordering work on the whole array.
struct DyadicPoint {
  std::uint32_t dim = 0;
  std::array<Dyadic, kMaxDim> coord{};

  DyadicPoint() = default;
  DyadicPoint(std::uint32_t dimension, const std::array<Dyadic, kMaxDim>& c);

  friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;
  std::strong_ordering operator<=>(const DyadicPoint& other) const;

  /// Finest level among the coordinates.
  std::uint32_t max_level() const;

  /// Space-separated coordinate tokens, e.g. "1/2^1 0/2^0 3/2^2".
  std::string str() const;
  static DyadicPoint parse(std::string_view text);
};

/// Exact squared Euclidean distance.
Rational squared_distance(const DyadicPoint& a, const DyadicPoint& b);

/// Integer grid coordinates of a point at resolution level m (units 2^-m).
/// Throws std::invalid_argument if some coordinate is not representable.
std::array<std::int64_t, kMaxDim> grid_coords(const DyadicPoint& p, std::uint32_t level);

/// Point from integer grid coordinates at level m.
DyadicPoint point_from_grid(const std::array<std::int64_t, kMaxDim>& g,
                            std::uint32_t level, std::uint32_t dim);

}  // namespace hollow
