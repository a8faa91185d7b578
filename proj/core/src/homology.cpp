#include "hollow/homology.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hollow {

namespace {

// Bit-packed column over a word interval. Boundary columns of a
// lex-sorted cubical complex touch a narrow row band, and elimination
// with max-row pivots keeps the fill inside that band, so storing the
// interval beats both a full bitset and a sorted index list.
struct PackedCol {
  std::uint32_t lo = 0;  // first word index
  std::vector<std::uint64_t> words;

  void trim() {
    std::size_t b = 0, e = words.size();
    while (e > b && words[e - 1] == 0) --e;
    while (b < e && words[b] == 0) ++b;
    if (b == e) {
      words.clear();
      lo = 0;
      return;
    }
    if (b > 0) words.erase(words.begin(), words.begin() + static_cast<std::ptrdiff_t>(b));
    words.resize(e - b);
    lo += static_cast<std::uint32_t>(b);
  }

  std::int64_t top_row() const {
    if (words.empty()) return -1;
    const std::size_t w = words.size() - 1;
    return static_cast<std::int64_t>(lo + w) * 64 + (63 - std::countl_zero(words[w]));
  }
};

PackedCol pack_column(const std::vector<std::uint32_t>& rows) {
  PackedCol c;
  if (rows.empty()) return c;
  c.lo = rows.front() / 64;
  const std::uint32_t hi = rows.back() / 64;
  c.words.assign(hi - c.lo + 1, 0);
  for (std::uint32_t r : rows) c.words[r / 64 - c.lo] ^= std::uint64_t{1} << (r % 64);
  c.trim();
  return c;
}

void xor_into(PackedCol& dst, const PackedCol& src) {
  if (src.words.empty()) return;
  if (dst.words.empty()) {
    dst = src;
    return;
  }
  const std::uint32_t lo = std::min(dst.lo, src.lo);
  const std::uint32_t hi = std::max(dst.lo + static_cast<std::uint32_t>(dst.words.size()),
                                    src.lo + static_cast<std::uint32_t>(src.words.size()));
  if (lo != dst.lo || hi != dst.lo + dst.words.size()) {
    std::vector<std::uint64_t> merged(hi - lo, 0);
    std::copy(dst.words.begin(), dst.words.end(), merged.begin() + (dst.lo - lo));
    dst.words = std::move(merged);
    dst.lo = lo;
  }
  for (std::size_t i = 0; i < src.words.size(); ++i)
    dst.words[src.lo - dst.lo + i] ^= src.words[i];
  dst.trim();
}

}  // namespace

std::uint32_t rank_gf2(const BoundaryMatrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  std::vector<std::int32_t> owner(m.rows, -1);
  std::vector<PackedCol> cols(m.cols);
  std::uint32_t rank = 0;
  for (std::uint32_t j = 0; j < m.cols; ++j) {
    for (std::uint32_t r : m.col_rows[j])
      if (r >= m.rows) throw std::invalid_argument("row index out of range");
    auto sorted = m.col_rows[j];
    std::sort(sorted.begin(), sorted.end());
    // A repeated index is the same entry listed twice, not a GF(2) cancel.
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    cols[j] = pack_column(sorted);
    while (true) {
      const std::int64_t t = cols[j].top_row();
      if (t < 0) break;
      const std::int32_t o = owner[static_cast<std::size_t>(t)];
      if (o < 0) {
        owner[static_cast<std::size_t>(t)] = static_cast<std::int32_t>(j);
        ++rank;
        break;
      }
      xor_into(cols[j], cols[static_cast<std::size_t>(o)]);
    }
  }
  return rank;
}

BettiVector betti(const CubicalComplex& cx) {
  BettiVector bv;
  bv.cell_counts.resize(cx.dim + 1);
  for (std::uint32_t k = 0; k <= cx.dim; ++k) bv.cell_counts[k] = cx.count(k);

  bv.ranks.resize(cx.dim);
  for (std::uint32_t k = 1; k <= cx.dim; ++k)
    bv.ranks[k - 1] = rank_gf2(boundary_matrix(cx, k));

  bv.betti.resize(cx.dim + 1);
  for (std::uint32_t k = 0; k <= cx.dim; ++k) {
    const std::uint64_t below = (k == 0) ? 0 : bv.ranks[k - 1];
    const std::uint64_t above = (k == cx.dim) ? 0 : bv.ranks[k];
    if (bv.cell_counts[k] < below + above)
      throw std::logic_error("negative Betti number");
    bv.betti[k] = bv.cell_counts[k] - below - above;
  }

  bv.euler = euler_characteristic(cx);
  std::int64_t chi_b = 0;
  for (std::uint32_t k = 0; k <= cx.dim; ++k) {
    const auto b = static_cast<std::int64_t>(bv.betti[k]);
    chi_b += (k % 2 == 0) ? b : -b;
  }
  if (chi_b != bv.euler) throw std::logic_error("Euler characteristic mismatch");
  return bv;
}

Verdict q_hat(const EpsNet& net, std::uint32_t m) {
  Verdict v;
  v.level = m;
  v.evidence = betti(build_cubical(net.points, m, net.dim));
  v.verdict = v.evidence.betti[net.dim - 1] > 0 ? Triviality::nontrivial
                                                : Triviality::trivial;
  return v;
}

const char* verdict_name(Triviality t) {
  return t == Triviality::nontrivial ? "Nontrivial" : "Trivial";
}

std::string verdict_json(const Verdict& v, double timing_ms) {
  nlohmann::ordered_json j;
  j["verdict"] = verdict_name(v.verdict);
  j["level"] = v.level;
  j["betti"] = v.evidence.betti;
  j["cell_counts"] = v.evidence.cell_counts;
  j["euler"] = v.evidence.euler;
  if (timing_ms >= 0.0) j["elapsed_ms"] = timing_ms;
  return j.dump();
}

}  // namespace hollow
