#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "hollow/reduction.hpp"

using namespace hollow;

namespace {

std::vector<HaltStatus> running_rounds(std::uint32_t n) {
  return std::vector<HaltStatus>(n, HaltStatus::running());
}

std::vector<HaltStatus> halted_from(std::uint32_t round, std::uint64_t step,
                                    std::uint32_t n) {
  std::vector<HaltStatus> v;
  for (std::uint32_t r = 1; r <= n; ++r)
    v.push_back(r >= round ? HaltStatus::halted_at(step) : HaltStatus::running());
  return v;
}

}  // namespace

TEST_SUITE("reduction") {

TEST_CASE("all running rounds accumulate the full grid") {
  const NetStream s = run_R(running_rounds(3), 3, 3);
  REQUIRE(s.layers.size() == 3);
  CHECK(!s.switch_level.has_value());
  CHECK(!s.d_squared.has_value());
  for (const auto& layer : s.layers) CHECK(layer.method == Method::one);
  CHECK(s.layers[0].added.size() == 8);
  CHECK(s.layers[1].added.size() == 19);
  CHECK(s.layers[2].added.size() == 98);
  CHECK(s.layers[2].accumulated.points.size() == 125);
  CHECK(s.layers[2].accumulated.tag == SpaceTag::cube);
  CHECK(s.layers[2].accumulated.epsilon_bound == Dyadic(1, 2));
}

TEST_CASE("halt before the first layer uses the fallback radius") {
  const NetStream s = run_R(halted_from(1, 5, 3), 3, 3);
  CHECK(s.switch_level == 0);
  CHECK(s.d_squared == Rational(1, 16));
  for (const auto& layer : s.layers) {
    CHECK(layer.method == Method::two);
    CHECK(layer.accumulated.tag == SpaceTag::punctured);
  }
  CHECK(s.layers[0].added.size() == 8);
  CHECK(s.layers[1].added.size() == 18);
  CHECK(s.layers[2].added.size() == 98);
  CHECK(s.layers[2].accumulated.points.size() == 124);
}

TEST_CASE("halt at round three freezes d from the two built layers") {
  const NetStream s = run_R(halted_from(3, 42, 4), 4, 3);
  CHECK(s.switch_level == 2);
  CHECK(s.d_squared == Rational(1, 16));
  CHECK(s.layers[0].method == Method::one);
  CHECK(s.layers[1].method == Method::one);
  CHECK(s.layers[2].method == Method::two);
  CHECK(s.layers[3].method == Method::two);
  // Earlier layers are retained, so the center persists as an island.
  const auto& pts = s.layers[3].accumulated.points;
  CHECK(pts.size() == 703);
  CHECK(std::find(pts.begin(), pts.end(), cube_center(3)) != pts.end());
}

TEST_CASE("the frozen radius shrinks with later switches") {
  CHECK(run_R(halted_from(2, 9, 2), 2, 3).d_squared == Rational(3, 16));
  CHECK(run_R(halted_from(4, 9, 4), 4, 3).d_squared == Rational(1, 64));
  CHECK(run_R(halted_from(5, 9, 5), 5, 3).d_squared == Rational(1, 256));
}

TEST_CASE("accumulated bounds tighten round by round") {
  const NetStream s = run_R(halted_from(2, 9, 4), 4, 3);
  std::vector<std::string> eps;
  for (const auto& layer : s.layers) eps.push_back(layer.accumulated.epsilon_bound.str());
  CHECK(eps == std::vector<std::string>{"1/2^0", "1/2^1", "1/2^2", "1/2^3"});
}

TEST_CASE("non-monotone status sequences are rejected") {
  std::vector<HaltStatus> regress{HaltStatus::halted_at(3), HaltStatus::running()};
  CHECK_THROWS_AS(run_R(regress, 2, 3), std::invalid_argument);
  std::vector<HaltStatus> drift{HaltStatus::halted_at(3), HaltStatus::halted_at(4)};
  CHECK_THROWS_AS(run_R(drift, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(run_R(running_rounds(2), 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(run_R({}, 0, 3), std::invalid_argument);
}

TEST_CASE("run_F example: halt in round three answers Yes") {
  const std::uint64_t q = 10;
  const ReductionReport r = run_F(halt_after(3 * q - 1), 0, q, 5, 3);
  REQUIRE(r.rounds.size() == 5);
  CHECK(r.rounds[0].machine_status == HaltStatus::running());
  CHECK(r.rounds[1].machine_status == HaltStatus::running());
  CHECK(r.rounds[2].machine_status == HaltStatus::halted_at(29));
  CHECK(r.rounds[1].method == Method::one);
  CHECK(r.rounds[2].method == Method::two);
  CHECK(r.rounds[4].method == Method::two);
  CHECK(r.final_verdict.verdict == Triviality::nontrivial);
  CHECK(std::string(r.answer()) == "Yes");
  CHECK(r.ground_truth == HaltStatus::halted_at(29));
  CHECK(!r.misclassified);
}

TEST_CASE("run_F example: loop_forever answers No") {
  const ReductionReport r = run_F(loop_forever(), 0, 10, 4, 3);
  for (const auto& log : r.rounds) {
    CHECK(log.machine_status == HaltStatus::running());
    CHECK(log.method == Method::one);
    CHECK(!log.d_squared.has_value());
  }
  CHECK(r.final_verdict.verdict == Triviality::trivial);
  CHECK(std::string(r.answer()) == "No");
  CHECK(r.ground_truth == HaltStatus::running());
  CHECK(!r.misclassified);
}

TEST_CASE("run_F example: instant halt with fallback radius answers Yes") {
  const ReductionReport r = run_F(halt_after(1), 0, 10, 3, 3);
  CHECK(r.rounds[0].machine_status == HaltStatus::halted_at(1));
  CHECK(r.rounds[0].method == Method::two);
  CHECK(r.rounds[0].d_squared == Rational(1, 16));
  CHECK(r.final_verdict.verdict == Triviality::nontrivial);
  CHECK(std::string(r.answer()) == "Yes");
}

TEST_CASE("round logs expose the frozen radius from the switch on") {
  const ReductionReport r = run_F(halt_after(15), 0, 10, 4, 3);
  CHECK(!r.rounds[0].d_squared.has_value());
  for (std::size_t i = 1; i < r.rounds.size(); ++i) {
    CHECK(r.rounds[i].method == Method::two);
    CHECK(r.rounds[i].d_squared == Rational(3, 16));
  }
  CHECK(r.final_verdict.verdict == Triviality::nontrivial);
}

TEST_CASE("detection needs the round after the switch") {
  // A halt in the final round leaves the verdict one refinement short.
  const ReductionReport late = run_F(halt_after(25), 0, 10, 3, 3);
  CHECK(late.rounds[2].machine_status == HaltStatus::halted_at(25));
  CHECK(late.final_verdict.verdict == Triviality::trivial);
  CHECK(std::string(late.answer()) == "No");
  CHECK(!late.misclassified);  // halt step within budget, by the letter of the rule

  const ReductionReport r4 = run_F(halt_after(25), 0, 10, 4, 3);
  CHECK(r4.final_verdict.verdict == Triviality::nontrivial);
}

TEST_CASE("fooling instances sit one step past the budget") {
  const Program f = fooling_program(10, 3);
  CHECK(f == halt_after(31));

  const ReductionReport r = run_F(f, 0, 10, 3, 3);
  CHECK(std::string(r.answer()) == "No");
  CHECK(r.ground_truth == HaltStatus::halted_at(31));
  CHECK(r.misclassified);

  const ReductionReport tiny = run_F(fooling_program(1, 1), 0, 1, 1, 3);
  CHECK(tiny.misclassified);
}

TEST_CASE("ground truth is plain simulation") {
  CHECK(ground_truth(halt_after(7), 0, 100) == HaltStatus::halted_at(7));
  CHECK(ground_truth(halt_after(7), 0, 6) == HaltStatus::running());
  CHECK(ground_truth(loop_forever(), 0, 10000) == HaltStatus::running());
  const HaltStatus c6 = ground_truth(collatz_program(), 6, 10000);
  CHECK(c6 == HaltStatus::halted_at(34));
}

TEST_CASE("reports are byte deterministic") {
  const ReductionReport a = run_F(collatz_program(), 16, 10, 3, 3);
  const ReductionReport b = run_F(collatz_program(), 16, 10, 3, 3);
  CHECK(report_json(a) == report_json(b));
  CHECK(std::string(a.answer()) == "Yes");  // halts at step 12, round two
}

TEST_CASE("methods never revert") {
  const ReductionReport r = run_F(collatz_program(), 5, 10, 4, 3);
  bool seen_two = false;
  for (const auto& log : r.rounds) {
    if (log.method == Method::two) seen_two = true;
    if (seen_two) CHECK(log.method == Method::two);
  }
  CHECK(seen_two);  // collatz(5) halts at step 22, round three
}

TEST_CASE("quantum and budget must be positive") {
  CHECK_THROWS_AS(run_F(loop_forever(), 0, 0, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(run_F(loop_forever(), 0, 10, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(fooling_program(0, 5), std::invalid_argument);
}

}  // TEST_SUITE
