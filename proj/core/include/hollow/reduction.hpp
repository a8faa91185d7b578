#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hollow/homology.hpp"
#include "hollow/machine.hpp"
#include "hollow/net.hpp"

namespace hollow {

struct RoundLog {
  std::uint32_t round = 0;  // 1-based; builds layer round-1
  HaltStatus machine_status;
  Method method = Method::one;
  std::uint64_t layer_size = 0;
  Dyadic epsilon_bound;
  std::optional<Rational> d_squared;  // set from the switch round on
};

struct ReductionReport {
  std::string program;
  std::uint64_t input = 0;
  std::uint64_t quantum = 0;
  std::uint32_t level_budget = 0;
  std::uint32_t dim = 0;
  std::vector<RoundLog> rounds;
  Verdict final_verdict;
  std::optional<HaltStatus> ground_truth;
  bool misclassified = false;

  // Nontrivial reads as membership in the machine's domain.
  const char* answer() const {
    return final_verdict.verdict == Triviality::nontrivial ? "Yes" : "No";
  }
};

// Replays a halt-status sequence, one layer per round. Method One while
// running; from the first halted round on, d_squared is frozen from the
// points built so far and every later layer is punctured. Throws
// std::invalid_argument when a halted status reverts to running or
// changes its step count.
NetStream run_R(const std::vector<HaltStatus>& status_per_round,
                std::uint32_t levels, std::uint32_t dim);

// The truncated decision pipeline: alternates one machine quantum with one
// net layer for level_budget rounds, then reads the verdict off the
// accumulated net. The report also carries a direct simulation a little
// past the budget, so near-miss halts are visible.
ReductionReport run_F(const Program& program, std::uint64_t input,
                      std::uint64_t quantum, std::uint32_t level_budget,
                      std::uint32_t dim);

// halt_after(quantum * level_budget + 1): halts one step past what run_F
// with these parameters can observe, so the answer comes back "No".
Program fooling_program(std::uint64_t quantum, std::uint32_t level_budget);

// Plain simulation; running means "no halt within max_steps", nothing more.
HaltStatus ground_truth(const Program& program, std::uint64_t input,
                        std::uint64_t max_steps);

std::string report_json(const ReductionReport& r);

}  // namespace hollow
