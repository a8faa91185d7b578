#include "hollow/net.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

#include <json.hpp>

namespace hollow {

namespace {

using json = nlohmann::ordered_json;

void check_dim(std::uint32_t dim) {
  if (dim < 2 || dim > kMaxDim) throw std::invalid_argument("unsupported dimension");
}

// Lattice walk over [0, hi]^dim in lexicographic order, axis 0 outermost.
template <typename F>
void for_each_lattice(std::uint32_t dim, std::int64_t hi, F&& f) {
  std::array<std::int64_t, kMaxDim> v{};
  while (true) {
    f(v);
    int i = static_cast<int>(dim) - 1;
    while (i >= 0) {
      if (++v[i] <= hi) break;
      v[i] = 0;
      --i;
    }
    if (i < 0) return;
  }
}

std::uint64_t pack(const std::array<std::int64_t, kMaxDim>& g, std::uint32_t dim) {
  std::uint64_t key = 0;
  for (std::uint32_t i = 0; i < dim; ++i)
    key |= static_cast<std::uint64_t>(g[i]) << (16 * (kMaxDim - 1 - i));
  return key;
}

}  // namespace

DyadicPoint cube_center(std::uint32_t dim) {
  check_dim(dim);
  std::array<Dyadic, kMaxDim> c{};
  for (std::uint32_t i = 0; i < dim; ++i) c[i] = Dyadic(1, 1);
  return DyadicPoint(dim, c);
}

std::vector<DyadicPoint> grid_layer(std::uint32_t m, std::uint32_t dim) {
  check_dim(dim);
  std::vector<DyadicPoint> out;
  if (m == 0) {
    for_each_lattice(dim, 1, [&](const auto& g) {
      out.push_back(point_from_grid(g, 0, dim));
    });
    return out;
  }
  const std::int64_t top = std::int64_t{1} << m;
  for_each_lattice(dim, top, [&](const auto& g) {
    for (std::uint32_t i = 0; i < dim; ++i) {
      if (g[i] % 2 != 0) {
        out.push_back(point_from_grid(g, m, dim));
        return;
      }
    }
  });
  return out;
}

Rational puncture_radius_sq(const std::vector<DyadicPoint>& points,
                            const DyadicPoint& center) {
  std::optional<Rational> best;
  for (const auto& p : points) {
    if (p == center) continue;
    const Rational d = squared_distance(p, center);
    if (!best || d < *best) best = d;
  }
  if (!best) return Rational(1, 16);
  return *best * Rational(1, 4);
}

std::vector<DyadicPoint> punctured_layer(std::uint32_t m, const Rational& d_squared,
                                         const DyadicPoint& center, std::uint32_t dim) {
  check_dim(dim);
  if (!(Rational(0, 1) < d_squared))
    throw std::invalid_argument("puncture radius must be positive");
  if (center.dim != dim) throw std::invalid_argument("center dimension mismatch");
  std::vector<DyadicPoint> out;
  for (auto& p : grid_layer(m, dim))
    if (!(squared_distance(p, center) < d_squared)) out.push_back(std::move(p));
  return out;
}

Rational covering_radius_sq(const EpsNet& net, std::uint32_t reference_level) {
  check_dim(net.dim);
  if (net.points.empty()) throw std::invalid_argument("empty net");
  if (reference_level < net.level + 2)
    throw std::invalid_argument("reference level too coarse");
  if (reference_level > 15) throw std::invalid_argument("reference level too fine");

  const std::uint32_t dim = net.dim;
  const std::uint32_t nl = net.level;
  const std::int64_t net_top = std::int64_t{1} << nl;
  const std::int64_t ref_top = std::int64_t{1} << reference_level;
  const std::int64_t s = std::int64_t{1} << (reference_level - nl);

  std::unordered_set<std::uint64_t> net_set;
  net_set.reserve(net.points.size() * 2);
  for (const auto& p : net.points) net_set.insert(pack(grid_coords(p, nl), dim));

  // Region membership for the reference point, exact integer arithmetic.
  std::array<std::int64_t, kMaxDim> center_ref{};
  __int128 punct_num = 0, punct_den = 1;
  if (net.tag == SpaceTag::punctured) {
    if (!net.center || !net.d_squared)
      throw std::invalid_argument("punctured net without center or radius");
    center_ref = grid_coords(*net.center, reference_level);
    punct_num = net.d_squared->num;
    punct_den = net.d_squared->den;
  }
  const auto in_region = [&](const std::array<std::int64_t, kMaxDim>& r) {
    switch (net.tag) {
      case SpaceTag::cube:
        return true;
      case SpaceTag::boundary:
        for (std::uint32_t i = 0; i < dim; ++i)
          if (r[i] == 0 || r[i] == ref_top) return true;
        return false;
      case SpaceTag::punctured: {
        __int128 d2 = 0;
        for (std::uint32_t i = 0; i < dim; ++i) {
          const std::int64_t d = r[i] - center_ref[i];
          d2 += static_cast<__int128>(d) * d;
        }
        // dist^2 >= d_squared, both scaled by 4^reference_level
        const __int128 scale = static_cast<__int128>(1) << (2 * reference_level);
        return d2 * punct_den >= punct_num * scale;
      }
    }
    return true;
  };

  // Nearest net point by expanding Chebyshev rings of net-grid cells.
  const auto nearest_sq = [&](const std::array<std::int64_t, kMaxDim>& r) {
    std::array<std::int64_t, kMaxDim> base{};
    for (std::uint32_t i = 0; i < dim; ++i)
      base[i] = std::min(r[i] / s, net_top - 1);
    std::int64_t best = -1;
    for (std::int64_t rho = 0;; ++rho) {
      if (best >= 0) {
        const std::int64_t floor_dist = (rho - 1) * s;
        if (floor_dist * floor_dist >= best) break;  // no closer point beyond
      }
      if (rho > net_top + 1 && best >= 0) break;
      if (rho > net_top + 1) throw std::logic_error("net does not meet its grid");
      std::array<std::int64_t, kMaxDim> g{};
      std::array<std::int64_t, kMaxDim> lo{}, hi{};
      for (std::uint32_t i = 0; i < dim; ++i) {
        lo[i] = std::max<std::int64_t>(0, base[i] - rho);
        hi[i] = std::min(net_top, base[i] + rho);
        g[i] = lo[i];
      }
      while (true) {
        std::int64_t cheb = 0;
        for (std::uint32_t i = 0; i < dim; ++i)
          cheb = std::max(cheb, g[i] > base[i] ? g[i] - base[i] : base[i] - g[i]);
        if (cheb == rho && net_set.count(pack(g, dim))) {
          std::int64_t d2 = 0;
          for (std::uint32_t i = 0; i < dim; ++i) {
            const std::int64_t d = r[i] - g[i] * s;
            d2 += d * d;
          }
          if (best < 0 || d2 < best) best = d2;
        }
        int i = static_cast<int>(dim) - 1;
        while (i >= 0) {
          if (++g[i] <= hi[i]) break;
          g[i] = lo[i];
          --i;
        }
        if (i < 0) break;
      }
    }
    return best;
  };

  std::int64_t worst = 0;
  for_each_lattice(dim, ref_top, [&](const auto& r) {
    if (!in_region(r)) return;
    worst = std::max(worst, nearest_sq(r));
  });
  return Rational(worst, std::int64_t{1} << (2 * reference_level));
}

Dyadic certified_epsilon(const Rational& covering_sq) {
  // Maximal k with covering_sq < 4^-k; negative k doubles the bound instead.
  int k = 0;
  const auto pow4 = [](int e) {
    return e >= 0 ? Rational(1, std::int64_t{1} << (2 * e))
                  : Rational(std::int64_t{1} << (-2 * e), 1);
  };
  while (k > -16 && !(covering_sq < pow4(k))) --k;
  while (k < 30 && covering_sq < pow4(k + 1)) ++k;
  if (k >= 0) return Dyadic(1, static_cast<std::uint32_t>(k));
  return Dyadic(std::int64_t{1} << (-k), 0);
}

namespace {

EpsNet certified_grid_net(std::uint32_t m, std::uint32_t dim, SpaceTag tag) {
  EpsNet net;
  net.dim = dim;
  net.level = m;
  net.tag = tag;
  const std::int64_t top = std::int64_t{1} << m;
  if (tag == SpaceTag::cube) {
    for_each_lattice(dim, top, [&](const auto& g) {
      net.points.push_back(point_from_grid(g, m, dim));
    });
  } else {
    for_each_lattice(dim, top, [&](const auto& g) {
      for (std::uint32_t i = 0; i < dim; ++i) {
        if (g[i] == 0 || g[i] == top) {
          net.points.push_back(point_from_grid(g, m, dim));
          return;
        }
      }
    });
  }

  static std::mutex memo_mutex;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, SpaceTag>, Dyadic> memo;
  const auto key = std::make_tuple(m, dim, tag);
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    const auto it = memo.find(key);
    if (it != memo.end()) {
      net.epsilon_bound = it->second;
      return net;
    }
  }
  net.epsilon_bound = certified_epsilon(covering_radius_sq(net, m + 2));
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    memo.emplace(key, net.epsilon_bound);
  }
  return net;
}

}  // namespace

EpsNet cumulative_net(std::uint32_t m, std::uint32_t dim) {
  check_dim(dim);
  return certified_grid_net(m, dim, SpaceTag::cube);
}

EpsNet boundary_net(std::uint32_t m, std::uint32_t dim) {
  check_dim(dim);
  return certified_grid_net(m, dim, SpaceTag::boundary);
}

std::string write_net(const EpsNet& net) {
  json header;
  header["dimension"] = net.dim;
  header["level"] = net.level;
  header["epsilon_bound"] = net.epsilon_bound.str();
  switch (net.tag) {
    case SpaceTag::cube: header["space_tag"] = "cube"; break;
    case SpaceTag::boundary: header["space_tag"] = "boundary"; break;
    case SpaceTag::punctured: header["space_tag"] = "punctured"; break;
  }
  if (net.tag == SpaceTag::punctured) {
    if (!net.center || !net.d_squared)
      throw std::logic_error("punctured net without center or radius");
    header["center"] = net.center->str();
    header["d_squared"] = net.d_squared->str();
  }
  std::string out = header.dump();
  out += '\n';
  for (const auto& p : net.points) {
    out += p.str();
    out += '\n';
  }
  return out;
}

EpsNet parse_net(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw NetFormatError("empty net file");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw NetFormatError(std::string("bad net header: ") + e.what());
  }
  EpsNet net;
  try {
    net.dim = header.at("dimension").get<std::uint32_t>();
    net.level = header.at("level").get<std::uint32_t>();
    net.epsilon_bound = Dyadic::parse(header.at("epsilon_bound").get<std::string>());
    const std::string tag = header.at("space_tag").get<std::string>();
    if (tag == "cube") net.tag = SpaceTag::cube;
    else if (tag == "boundary") net.tag = SpaceTag::boundary;
    else if (tag == "punctured") net.tag = SpaceTag::punctured;
    else throw NetFormatError("unknown space_tag " + tag);
    if (net.tag == SpaceTag::punctured) {
      net.center = DyadicPoint::parse(header.at("center").get<std::string>());
      net.d_squared = Rational::parse(header.at("d_squared").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw NetFormatError(std::string("bad net header: ") + e.what());
  }
  check_dim(net.dim);

  int ln = 1;
  while (std::getline(is, line)) {
    ++ln;
    if (line.empty()) continue;
    DyadicPoint p;
    try {
      p = DyadicPoint::parse(line);
    } catch (const std::exception& e) {
      throw NetFormatError("line " + std::to_string(ln) + ": " + e.what());
    }
    if (p.dim != net.dim)
      throw NetFormatError("line " + std::to_string(ln) + ": dimension mismatch");
    if (p.max_level() > net.level)
      throw NetFormatError("line " + std::to_string(ln) + ": point finer than header level");
    net.points.push_back(p);
  }
  std::sort(net.points.begin(), net.points.end());
  net.points.erase(std::unique(net.points.begin(), net.points.end()), net.points.end());
  if (net.points.empty()) throw NetFormatError("net has no points");
  return net;
}

}  // namespace hollow
