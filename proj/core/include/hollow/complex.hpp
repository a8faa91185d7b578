#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hollow/dyadic.hpp"

namespace hollow {

/// Axis-aligned cube cell at a fixed grid level. The anchor packs the grid
/// coordinates of the minimal corner (16 bits per axis, axis 0 highest, so
/// integer order is lexicographic coordinate order); extent is the bitmask
/// of axes the cell spans, popcount(extent) == cell dimension.
struct CubicalCell {
  std::uint64_t anchor = 0;
  std::uint8_t extent = 0;

  friend bool operator==(const CubicalCell&, const CubicalCell&) = default;
  friend auto operator<=>(const CubicalCell&, const CubicalCell&) = default;
};

/// Full-flag cubical complex on a vertex set: a k-cell is present exactly
/// when all 2^k of its corners are. Cells are sorted by (anchor, extent)
/// within each dimension.
struct CubicalComplex {
  std::uint32_t dim = 0;
  std::uint32_t level = 0;
  std::array<std::vector<CubicalCell>, kMaxDim + 1> cells;

  std::size_t count(std::uint32_t k) const { return cells[k].size(); }
};

/// Builds the complex spanned by the points at the given grid level.
/// Throws std::invalid_argument on points outside the level-m grid.
/// Worker threads split the anchor range; capped by the HOLLOW_THREADS
/// environment variable. The result is independent of the thread count.
CubicalComplex build_cubical(const std::vector<DyadicPoint>& points,
                             std::uint32_t level, std::uint32_t dim);

/// GF(2) matrix, columns stored as sorted row-index lists.
struct BoundaryMatrix {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::vector<std::uint32_t>> col_rows;
};

/// Boundary operator from k-cells to (k-1)-cells; every column has exactly
/// 2k entries.
BoundaryMatrix boundary_matrix(const CubicalComplex& cx, std::uint32_t k);

/// Alternating sum of cell counts.
std::int64_t euler_characteristic(const CubicalComplex& cx);

/// Grid coordinates of a packed anchor.
std::array<std::int64_t, kMaxDim> unpack_anchor(std::uint64_t anchor, std::uint32_t dim);

}  // namespace hollow
