#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hollow {

/// Tape alphabet: 0, 1 and the blank.
enum class Sym : std::uint8_t { zero = 0, one = 1, blank = 2 };

enum class Move : std::uint8_t { left, right, stay };

struct Transition {
  std::uint32_t next = 0;
  Sym write = Sym::blank;
  Move move = Move::stay;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Deterministic one-tape machine over {0, 1, blank}.
/// The transition table is total on (state, symbol) pairs for every
/// non-halting state; halting states have no outgoing transitions.
struct Program {
  std::string name;  // metadata only, ignored by equality
  std::vector<std::string> states;
  std::uint32_t initial = 0;
  std::vector<char> halting;                        // one flag per state
  std::vector<std::array<Transition, 3>> table;     // indexed [state][symbol]

  bool is_halting(std::uint32_t s) const { return halting[s] != 0; }

  friend bool operator==(const Program& a, const Program& b) {
    return a.states == b.states && a.initial == b.initial &&
           a.halting == b.halting && a.table == b.table;
  }
};

/// Sparse tape: absent cells read blank.
struct MachineState {
  std::unordered_map<std::int64_t, Sym> tape;
  std::int64_t head = 0;
  std::uint32_t control = 0;
  std::uint64_t steps_executed = 0;
};

/// Running, or halted after exactly `step` steps (minimal).
struct HaltStatus {
  bool halted = false;
  std::uint64_t step = 0;

  static HaltStatus running() { return {}; }
  static HaltStatus halted_at(std::uint64_t s) { return {true, s}; }

  friend bool operator==(const HaltStatus&, const HaltStatus&) = default;
};

struct MachineParseError : std::runtime_error {
  int line;
  MachineParseError(int ln, const std::string& msg)
      : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

/// Parses the machine-spec text format; see README for the grammar.
/// Throws MachineParseError with a line number on malformed input.
Program parse_program(const std::string& text);

/// Canonical text form; parse_program(serialize_program(p)) == p.
std::string serialize_program(const Program& p);

/// Fresh state with the binary encoding of `input` on the tape,
/// most significant bit under the head at cell 0. Zero encodes as "0".
MachineState init(const Program& p, std::uint64_t input);

/// Executes at most `quantum` steps, stopping early once a halting state is
/// reached. The returned status carries the cumulative minimal step count.
std::pair<MachineState, HaltStatus> run_quantum(const Program& p, MachineState state,
                                                std::uint64_t quantum);

Program loop_forever();
Program halt_after(std::uint64_t steps);
Program collatz_program();

/// Named machines used across the tools and tests.
std::map<std::string, Program> sample_programs();

}  // namespace hollow
