#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hollow/dyadic.hpp"

namespace hollow {

struct NetFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SpaceTag { cube, punctured, boundary };

enum class Method { one, two };

/// Finite point set certified as an epsilon-net of its target space:
/// every point of the space lies strictly within epsilon_bound of the net.
struct EpsNet {
  std::uint32_t dim = 0;
  std::uint32_t level = 0;                 // finest grid level of the points
  std::vector<DyadicPoint> points;         // sorted, duplicate-free
  Dyadic epsilon_bound;
  SpaceTag tag = SpaceTag::cube;
  std::optional<DyadicPoint> center;       // punctured nets only
  std::optional<Rational> d_squared;       // punctured nets only
};

/// One refinement round: the points added at layer m plus the accumulated
/// net through that layer.
struct NetLayer {
  std::uint32_t m = 0;
  Method method = Method::one;
  std::vector<DyadicPoint> added;
  EpsNet accumulated;
};

/// Ordered refinement sequence. switch_level is the first layer built by
/// Method Two; d_squared is frozen when the switch happens.
struct NetStream {
  std::uint32_t dim = 0;
  std::vector<NetLayer> layers;
  std::optional<std::uint32_t> switch_level;
  std::optional<Rational> d_squared;
};

/// Midpoint (1/2, ..., 1/2) of the dim-cube.
DyadicPoint cube_center(std::uint32_t dim);

/// Layer m of the dyadic refinement: the corners for m = 0, afterwards the
/// level-m grid points absent from every coarser grid.
std::vector<DyadicPoint> grid_layer(std::uint32_t m, std::uint32_t dim);

/// Union of layers 0..m, i.e. the full level-m grid, with a certified bound.
EpsNet cumulative_net(std::uint32_t m, std::uint32_t dim);

/// Level-m points lying on the boundary of the cube.
EpsNet boundary_net(std::uint32_t m, std::uint32_t dim);

/// Exact max-min squared distance from the reference grid (restricted to the
/// net's target space) to the net. Requires reference_level >= net.level + 2.
Rational covering_radius_sq(const EpsNet& net, std::uint32_t reference_level);

/// Squared puncture radius: one quarter of the minimal squared distance from
/// the given points to the center, the center itself excluded. Falls back to
/// 1/16 when no other point exists.
Rational puncture_radius_sq(const std::vector<DyadicPoint>& points,
                            const DyadicPoint& center);

/// Layer m with the open ball of squared radius d_squared around the center
/// removed. Membership ties (squared distance exactly d_squared) survive.
std::vector<DyadicPoint> punctured_layer(std::uint32_t m, const Rational& d_squared,
                                         const DyadicPoint& center, std::uint32_t dim);

/// Smallest power of two strictly above the covering radius.
Dyadic certified_epsilon(const Rational& covering_sq);

/// Net file format: a one-line JSON header followed by one point per line.
std::string write_net(const EpsNet& net);
EpsNet parse_net(const std::string& text);

}  // namespace hollow
