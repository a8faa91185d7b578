#include "hollow/complex.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>

namespace hollow {

namespace {

constexpr std::uint32_t kAxisBits = 16;

std::uint64_t axis_step(std::uint32_t axis) {
  return std::uint64_t{1} << (kAxisBits * (kMaxDim - 1 - axis));
}

std::uint64_t pack(const std::array<std::int64_t, kMaxDim>& g, std::uint32_t dim) {
  std::uint64_t key = 0;
  for (std::uint32_t i = 0; i < dim; ++i)
    key |= static_cast<std::uint64_t>(g[i]) << (kAxisBits * (kMaxDim - 1 - i));
  return key;
}

unsigned worker_count(std::size_t items) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* cap = std::getenv("HOLLOW_THREADS")) {
    const long v = std::strtol(cap, nullptr, 10);
    if (v >= 1 && static_cast<unsigned long>(v) < n) n = static_cast<unsigned>(v);
  }
  if (n > 8) n = 8;
  if (items < 4096) n = 1;
  return n;
}

}  // namespace

std::array<std::int64_t, kMaxDim> unpack_anchor(std::uint64_t anchor, std::uint32_t dim) {
  std::array<std::int64_t, kMaxDim> g{};
  for (std::uint32_t i = 0; i < dim; ++i)
    g[i] = static_cast<std::int64_t>((anchor >> (kAxisBits * (kMaxDim - 1 - i))) & 0xffff);
  return g;
}

CubicalComplex build_cubical(const std::vector<DyadicPoint>& points,
                             std::uint32_t level, std::uint32_t dim) {
  if (dim < 2 || dim > kMaxDim) throw std::invalid_argument("unsupported dimension");
  if (level > 14) throw std::invalid_argument("grid level too fine");

  CubicalComplex cx;
  cx.dim = dim;
  cx.level = level;
  const std::int64_t top = std::int64_t{1} << level;

  std::vector<std::uint64_t> verts;
  verts.reserve(points.size());
  for (const auto& p : points) {
    if (p.dim != dim) throw std::invalid_argument("point dimension mismatch");
    const auto g = grid_coords(p, level);  // throws when off-grid
    verts.push_back(pack(g, dim));
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

  std::unordered_set<std::uint64_t> present(verts.begin(), verts.end());

  // Extent masks grouped by popcount, ascending within each group.
  std::array<std::vector<std::uint8_t>, kMaxDim + 1> masks;
  for (std::uint8_t e = 1; e < (1u << dim); ++e)
    masks[std::popcount(e)].push_back(e);

  cx.cells[0].reserve(verts.size());
  for (std::uint64_t v : verts) cx.cells[0].push_back(CubicalCell{v, 0});

  const auto emit_cells = [&](std::size_t begin, std::size_t end,
                              std::array<std::vector<CubicalCell>, kMaxDim + 1>& out) {
    for (std::size_t vi = begin; vi < end; ++vi) {
      const std::uint64_t anchor = verts[vi];
      const auto g = unpack_anchor(anchor, dim);
      for (std::uint32_t k = 1; k <= dim; ++k) {
        for (std::uint8_t ext : masks[k]) {
          bool fits = true;
          for (std::uint32_t ax = 0; ax < dim && fits; ++ax)
            if ((ext >> ax) & 1) fits = g[ax] + 1 <= top;
          if (!fits) continue;
          bool full = true;
          std::uint8_t sub = ext;
          while (true) {
            std::uint64_t corner = anchor;
            for (std::uint32_t ax = 0; ax < dim; ++ax)
              if ((sub >> ax) & 1) corner += axis_step(ax);
            if (sub != 0 && !present.count(corner)) {
              full = false;
              break;
            }
            if (sub == 0) break;
            sub = static_cast<std::uint8_t>((sub - 1) & ext);
          }
          if (full) out[k].push_back(CubicalCell{anchor, ext});
        }
      }
    }
  };

  const unsigned workers = worker_count(verts.size());
  if (workers <= 1) {
    emit_cells(0, verts.size(), cx.cells);
  } else {
    // Chunks keep the per-vertex order, so concatenation stays sorted.
    std::vector<std::array<std::vector<CubicalCell>, kMaxDim + 1>> parts(workers);
    std::vector<std::thread> pool;
    const std::size_t chunk = (verts.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t b = std::min(verts.size(), w * chunk);
      const std::size_t e = std::min(verts.size(), b + chunk);
      pool.emplace_back([&, b, e, w] { emit_cells(b, e, parts[w]); });
    }
    for (auto& t : pool) t.join();
    for (std::uint32_t k = 1; k <= dim; ++k)
      for (auto& part : parts)
        cx.cells[k].insert(cx.cells[k].end(), part[k].begin(), part[k].end());
  }
  return cx;
}

BoundaryMatrix boundary_matrix(const CubicalComplex& cx, std::uint32_t k) {
  if (k < 1 || k > cx.dim) throw std::invalid_argument("boundary dimension out of range");
  BoundaryMatrix m;
  m.rows = static_cast<std::uint32_t>(cx.count(k - 1));
  m.cols = static_cast<std::uint32_t>(cx.count(k));
  m.col_rows.resize(m.cols);

  const auto& faces = cx.cells[k - 1];
  const auto row_of = [&](const CubicalCell& c) {
    const auto it = std::lower_bound(faces.begin(), faces.end(), c);
    if (it == faces.end() || !(*it == c))
      throw std::logic_error("face missing from closed complex");
    return static_cast<std::uint32_t>(it - faces.begin());
  };

  for (std::uint32_t j = 0; j < m.cols; ++j) {
    const CubicalCell& cell = cx.cells[k][j];
    auto& col = m.col_rows[j];
    col.reserve(2 * k);
    for (std::uint32_t ax = 0; ax < cx.dim; ++ax) {
      if (!((cell.extent >> ax) & 1)) continue;
      const std::uint8_t rest = static_cast<std::uint8_t>(cell.extent & ~(1u << ax));
      col.push_back(row_of(CubicalCell{cell.anchor, rest}));
      col.push_back(row_of(CubicalCell{cell.anchor + axis_step(ax), rest}));
    }
    std::sort(col.begin(), col.end());
  }
  return m;
}

std::int64_t euler_characteristic(const CubicalComplex& cx) {
  std::int64_t chi = 0;
  for (std::uint32_t k = 0; k <= cx.dim; ++k) {
    const auto n = static_cast<std::int64_t>(cx.count(k));
    chi += (k % 2 == 0) ? n : -n;
  }
  return chi;
}

}  // namespace hollow
