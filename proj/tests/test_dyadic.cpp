#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "hollow/dyadic.hpp"

using namespace hollow;

TEST_SUITE("dyadic") {

TEST_CASE("canonical form") {
  CHECK(Dyadic(2, 1) == Dyadic(1, 0));
  CHECK(Dyadic(4, 2) == Dyadic(1, 0));
  CHECK(Dyadic(6, 3) == Dyadic(3, 2));
  CHECK(Dyadic(0, 7) == Dyadic(0, 0));
  CHECK(Dyadic(-4, 3) == Dyadic(-1, 1));
  const Dyadic d(10, 4);
  CHECK(d.num == 5);
  CHECK(d.level == 3);
}

TEST_CASE("ordering is value order") {
  // 0 < 1/4 < 1/2 < 5/8 < 1
  const Dyadic zero(0, 0), q(1, 2), h(1, 1), fe(5, 3), one(1, 0);
  std::vector<Dyadic> v{one, fe, zero, h, q};
  std::sort(v.begin(), v.end());
  CHECK(v == std::vector<Dyadic>{zero, q, h, fe, one});
  CHECK(Dyadic(-1, 1) < zero);
}

TEST_CASE("token round trip") {
  for (const char* t : {"0/2^0", "1/2^0", "3/2^2", "-5/2^4", "2/2^0"}) {
    const Dyadic d = Dyadic::parse(t);
    CHECK(Dyadic::parse(d.str()) == d);
  }
  CHECK(Dyadic::parse("1/2^3").str() == "1/2^3");
  CHECK_THROWS_AS(Dyadic::parse("1/3^2"), std::invalid_argument);
  CHECK_THROWS_AS(Dyadic::parse("x/2^1"), std::invalid_argument);
  CHECK_THROWS_AS(Dyadic::parse(""), std::invalid_argument);
}

TEST_CASE("rational reduction and arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(0, 5) == Rational(0, 1));
  CHECK(Rational(3, 16) + Rational(1, 16) == Rational(1, 4));
  CHECK(Rational(1, 2) * Rational(1, 2) == Rational(1, 4));
  CHECK(Rational(3, 4) < Rational(1, 1));
  CHECK(Rational(1, 16) < Rational(3, 16));
  CHECK(Rational(Dyadic(3, 2)) == Rational(3, 4));
  CHECK(Rational(5, 10).str() == "1/2");
  CHECK(Rational::parse("3/16") == Rational(3, 16));
  CHECK_THROWS_AS(Rational::parse("3:16"), std::invalid_argument);
}

TEST_CASE("rational comparison survives large cross products") {
  // Cross-multiplication at the int64 boundary must not overflow.
  const Rational a(1, 3037000499LL);
  const Rational b(1, 3037000500LL);
  CHECK(b < a);
  CHECK(a == a);
}

TEST_CASE("point validation and ordering") {
  const DyadicPoint p = DyadicPoint::parse("1/2^1 0/2^0 1/2^0");
  CHECK(p.dim == 3);
  CHECK(p.max_level() == 1);
  CHECK(p.str() == "1/2^1 0/2^0 1/2^0");

  // Lexicographic by value: first coordinate dominates.
  const DyadicPoint a = DyadicPoint::parse("0/2^0 1/2^0");
  const DyadicPoint b = DyadicPoint::parse("1/2^2 0/2^0");
  CHECK(a < b);

  CHECK_THROWS_AS(DyadicPoint::parse("3/2^1 0/2^0"), std::invalid_argument);   // > 1
  CHECK_THROWS_AS(DyadicPoint::parse("-1/2^1 0/2^0"), std::invalid_argument);  // < 0
  CHECK_THROWS_AS(DyadicPoint::parse(""), std::invalid_argument);
}

TEST_CASE("squared distance is exact") {
  const DyadicPoint a = DyadicPoint::parse("0/2^0 0/2^0 0/2^0");
  const DyadicPoint b = DyadicPoint::parse("1/2^0 1/2^0 1/2^0");
  CHECK(squared_distance(a, b) == Rational(3, 1));

  const DyadicPoint c = DyadicPoint::parse("1/2^1 1/2^1 1/2^1");
  const DyadicPoint d = DyadicPoint::parse("1/2^2 1/2^2 1/2^1");
  CHECK(squared_distance(c, d) == Rational(1, 8));
  CHECK(squared_distance(c, c).is_zero());

  // Mixed levels reduce to a common grid without drift.
  const DyadicPoint e = DyadicPoint::parse("1/2^4 0/2^0");
  const DyadicPoint f = DyadicPoint::parse("1/2^0 1/2^4");
  CHECK(squared_distance(e, f) == Rational(225 + 1, 256));
}

TEST_CASE("grid coordinates round trip") {
  const DyadicPoint p = DyadicPoint::parse("1/2^1 3/2^2 1/2^0");
  const auto g = grid_coords(p, 2);
  CHECK(g[0] == 2);
  CHECK(g[1] == 3);
  CHECK(g[2] == 4);
  CHECK(point_from_grid(g, 2, 3) == p);

  CHECK_THROWS_AS(grid_coords(p, 1), std::invalid_argument);  // 3/4 needs level 2
}

TEST_CASE("sorting points is deterministic") {
  std::vector<DyadicPoint> pts;
  for (int x = 0; x <= 2; ++x)
    for (int y = 0; y <= 2; ++y)
      pts.push_back(point_from_grid({x, y, 0, 0}, 1, 2));
  std::mt19937 rng(7);
  auto shuffled = pts;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  std::sort(shuffled.begin(), shuffled.end());
  CHECK(shuffled == pts);
}

}  // TEST_SUITE
