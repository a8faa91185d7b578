#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "hollow/machine.hpp"

using namespace hollow;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string machines_dir() { return HOLLOW_MACHINES_DIR; }

int parse_error_line(const std::string& text) {
  try {
    parse_program(text);
  } catch (const MachineParseError& e) {
    return e.line;
  }
  return -1;
}

}  // namespace

TEST_SUITE("machine") {

TEST_CASE("factories serialize and reparse to themselves") {
  for (const auto& p : {loop_forever(), halt_after(1), halt_after(7), collatz_program()}) {
    const Program back = parse_program(serialize_program(p));
    CHECK(back == p);  // name excluded from equality
  }
}

TEST_CASE("shipped machine files match the factories") {
  CHECK(parse_program(read_file(machines_dir() + "/loop.tm")) == loop_forever());
  CHECK(parse_program(read_file(machines_dir() + "/halt3.tm")) == halt_after(3));
  CHECK(parse_program(read_file(machines_dir() + "/collatz.tm")) == collatz_program());
}

TEST_CASE("init writes the binary input, high bit first, head at zero") {
  const Program p = loop_forever();
  MachineState s = init(p, 6);  // 110
  CHECK(s.head == 0);
  CHECK(s.control == p.initial);
  CHECK(s.tape.at(0) == Sym::one);
  CHECK(s.tape.at(1) == Sym::one);
  CHECK(s.tape.at(2) == Sym::zero);
  CHECK(s.tape.count(3) == 0);
  CHECK(s.tape.count(-1) == 0);

  MachineState z = init(p, 0);
  CHECK(z.tape.at(0) == Sym::zero);
  CHECK(z.tape.size() == 1);
}

TEST_CASE("run_quantum basics") {
  const Program loop = loop_forever();
  auto [s1, st1] = run_quantum(loop, init(loop, 0), 100);
  CHECK(st1 == HaltStatus::running());
  CHECK(s1.steps_executed == 100);

  const Program h3 = halt_after(3);
  auto [s2, st2] = run_quantum(h3, init(h3, 0), 100);
  CHECK(st2 == HaltStatus::halted_at(3));
  CHECK(s2.steps_executed == 3);

  // Stops exactly at the quantum, then picks up where it left off.
  auto [s3, st3] = run_quantum(h3, init(h3, 0), 2);
  CHECK(st3 == HaltStatus::running());
  auto [s4, st4] = run_quantum(h3, std::move(s3), 100);
  CHECK(st4 == HaltStatus::halted_at(3));

  // Re-running a halted state is a no-op with the same cumulative answer.
  auto [s5, st5] = run_quantum(h3, std::move(s4), 50);
  CHECK(st5 == HaltStatus::halted_at(3));
  CHECK(s5.steps_executed == 3);
}

TEST_CASE("split quanta equal one big quantum") {
  const Program machines[] = {halt_after(13), collatz_program(), loop_forever()};
  for (const Program& p : machines) {
    for (std::uint64_t a : {1ull, 3ull, 7ull}) {
      for (std::uint64_t b : {1ull, 5ull, 20ull}) {
        auto [sa, sta] = run_quantum(p, init(p, 6), a);
        auto [sab, stab] = run_quantum(p, std::move(sa), b);
        auto [sfull, stfull] = run_quantum(p, init(p, 6), a + b);
        CHECK(stab == stfull);
        CHECK(sab.head == sfull.head);
        CHECK(sab.control == sfull.control);
        CHECK(sab.steps_executed == sfull.steps_executed);
        CHECK(sab.tape == sfull.tape);
      }
    }
  }
}

TEST_CASE("halt_after halts at exactly its parameter, minimally") {
  for (std::uint64_t s = 1; s <= 1000; ++s) {
    const Program p = halt_after(s);
    CHECK(run_quantum(p, init(p, 0), s).second == HaltStatus::halted_at(s));
    if (s > 1) CHECK(run_quantum(p, init(p, 0), s - 1).second == HaltStatus::running());
  }
}

TEST_CASE("collatz halts with known step counts") {
  const Program c = collatz_program();
  const struct { std::uint64_t n, steps; } rows[] = {
      {1, 4}, {2, 6}, {3, 32}, {4, 8},  {5, 22},  {6, 34},
      {7, 83}, {8, 10}, {9, 98}, {16, 12}, {27, 968},
  };
  for (const auto& row : rows) {
    auto [st, status] = run_quantum(c, init(c, row.n), 2000);
    CHECK(status == HaltStatus::halted_at(row.steps));
  }
  // 0 never reaches 1; the machine spins.
  CHECK(run_quantum(c, init(c, 0), 5000).second == HaltStatus::running());
}

TEST_CASE("wildcard lines expand to explicit transitions") {
  const Program a = parse_program(
      "states: p q ; init: p ; halt: q\n"
      "p * -> q * S\n");
  const Program b = parse_program(
      "states: p q ; init: p ; halt: q\n"
      "p 0 -> q 0 S\n"
      "p 1 -> q 1 S\n"
      "p _ -> q _ S\n");
  CHECK(a == b);
}

TEST_CASE("comments and blank lines are ignored") {
  const Program p = parse_program(
      "# leading comment\n"
      "\n"
      "states: p q ; init: p ; halt: q  # trailing\n"
      "\n"
      "p * -> q * S # move on\n");
  CHECK(p.states.size() == 2);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("states: a ; init: a ; halt:\n"
                         "a 0 -> b 0 S\n") == 2);  // undefined state b
  CHECK(parse_error_line("states: a b ; init: a ; halt: b\n"
                         "a 0 -> b 0 S\n") == 2);  // non-total (reported at end)
  CHECK(parse_error_line("init: a\n") == 1);       // missing states header
  CHECK(parse_error_line("") == 0);                // empty program
  CHECK(parse_error_line("states: a b ; init: a ; halt: b\n"
                         "a * -> b * S\n"
                         "a 1 -> b 1 S\n") == 3);  // duplicate transition
  CHECK(parse_error_line("states: a b ; init: a ; halt: b\n"
                         "b 0 -> a 0 S\n") == 2);  // transition out of halting state
  CHECK(parse_error_line("states: a ; init: a ; halt:\n"
                         "a * -> a * X\n") == 2);  // bad move
  CHECK(parse_error_line("states: a ; init: a ; halt:\n"
                         "a 2 -> a 0 S\n") == 2);  // bad symbol
  const auto message_of = [](const std::string& text) -> std::string {
    try {
      parse_program(text);
    } catch (const MachineParseError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message_of("states: a ; init: a ; halt:\n"
                   "a 0 -> a 0 S\n")
            .find("non-total") != std::string::npos);
  CHECK(message_of("states: a c ; init: a ; halt: c\n"
                   "a * -> x * S\n")
            .find("undefined state x") != std::string::npos);
}

TEST_CASE("serialization is canonical and stable") {
  const std::string s1 = serialize_program(collatz_program());
  const std::string s2 = serialize_program(parse_program(s1));
  CHECK(s1 == s2);
}

TEST_CASE("sample library names and members") {
  const auto lib = sample_programs();
  CHECK(lib.count("loop_forever") == 1);
  CHECK(lib.count("collatz") == 1);
  CHECK(lib.count("halt_after(11)") == 1);
  CHECK(lib.count("halt_after(15)") == 1);
  CHECK(lib.count("halt_after(20)") == 1);
  CHECK(lib.at("halt_after(15)") == halt_after(15));
}

}  // TEST_SUITE
