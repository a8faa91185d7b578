#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hollow/complex.hpp"
#include "hollow/net.hpp"

namespace hollow {

// betti[k] = n_k - rank d_k - rank d_{k+1}, over the two-element field.
// ranks[k-1] holds rank d_k for k = 1..dim.
struct BettiVector {
  std::vector<std::uint64_t> betti;
  std::vector<std::uint64_t> cell_counts;
  std::vector<std::uint64_t> ranks;
  std::int64_t euler = 0;

  bool operator==(const BettiVector&) const = default;
};

enum class Triviality { trivial, nontrivial };

struct Verdict {
  Triviality verdict = Triviality::trivial;
  std::uint32_t level = 0;
  BettiVector evidence;
};

// Rank over GF(2). Column order of the input does not affect the result.
std::uint32_t rank_gf2(const BoundaryMatrix& m);

// Alternating sums of betti and of cell_counts agree, else throws.
BettiVector betti(const CubicalComplex& cx);

// Builds the cubical complex from the net points at level m and reads
// off beta_{D-1}: positive means Nontrivial.
Verdict q_hat(const EpsNet& net, std::uint32_t m);

const char* verdict_name(Triviality t);

// One-line JSON. elapsed_ms is attached only when timing_ms >= 0, so the
// default output is byte-stable across runs.
std::string verdict_json(const Verdict& v, double timing_ms = -1.0);

}  // namespace hollow
