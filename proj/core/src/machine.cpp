#include "hollow/machine.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace hollow {

namespace {

char sym_char(Sym s) {
  switch (s) {
    case Sym::zero: return '0';
    case Sym::one: return '1';
    default: return '_';
  }
}

std::optional<Sym> sym_from(const std::string& t) {
  if (t == "0") return Sym::zero;
  if (t == "1") return Sym::one;
  if (t == "_") return Sym::blank;
  return std::nullopt;
}

char move_char(Move m) {
  switch (m) {
    case Move::left: return 'L';
    case Move::right: return 'R';
    default: return 'S';
  }
}

std::optional<Move> move_from(const std::string& t) {
  if (t == "L") return Move::left;
  if (t == "R") return Move::right;
  if (t == "S") return Move::stay;
  return std::nullopt;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::string strip_comment(const std::string& line) {
  const auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

}  // namespace

Program parse_program(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int ln = 0;
  Program p;
  std::unordered_map<std::string, std::uint32_t> index;
  bool have_header = false;
  // defined[state][sym] guards against duplicates before totality is checked.
  std::vector<std::array<char, 3>> defined;

  auto state_index = [&](const std::string& name, int at) -> std::uint32_t {
    auto it = index.find(name);
    if (it == index.end()) throw MachineParseError(at, "undefined state " + name);
    return it->second;
  };

  while (std::getline(is, line)) {
    ++ln;
    const auto toks = tokens(strip_comment(line));
    if (toks.empty()) continue;

    if (!have_header) {
      // Header: "states: a b c ; init: a ; halt: c d"
      enum { kStates, kInit, kHalt } section = kStates;
      bool saw_init = false, saw_halt = false;
      std::string init_name;
      std::vector<std::string> halt_names;
      std::size_t i = 0;
      if (toks[i] != "states:") throw MachineParseError(ln, "expected 'states:' header");
      ++i;
      for (; i < toks.size(); ++i) {
        const std::string& t = toks[i];
        if (t == ";") continue;
        if (t == "init:") { section = kInit; saw_init = true; continue; }
        if (t == "halt:") { section = kHalt; saw_halt = true; continue; }
        switch (section) {
          case kStates:
            if (index.count(t)) throw MachineParseError(ln, "duplicate state " + t);
            index[t] = static_cast<std::uint32_t>(p.states.size());
            p.states.push_back(t);
            break;
          case kInit:
            if (!init_name.empty()) throw MachineParseError(ln, "multiple initial states");
            init_name = t;
            break;
          case kHalt:
            halt_names.push_back(t);
            break;
        }
      }
      if (p.states.empty()) throw MachineParseError(ln, "no states declared");
      if (!saw_init || init_name.empty()) throw MachineParseError(ln, "missing init section");
      if (!saw_halt) throw MachineParseError(ln, "missing halt section");
      p.initial = state_index(init_name, ln);
      p.halting.assign(p.states.size(), 0);
      for (const auto& h : halt_names) p.halting[state_index(h, ln)] = 1;
      p.table.assign(p.states.size(), {});
      defined.assign(p.states.size(), {0, 0, 0});
      have_header = true;
      continue;
    }

    // Transition: "qX sym -> qY sym' move"; '*' expands over all symbols,
    // a '*' on the right writes back the symbol read.
    if (toks.size() != 6 || toks[2] != "->")
      throw MachineParseError(ln, "malformed transition");
    const std::uint32_t from = state_index(toks[0], ln);
    const std::uint32_t to = state_index(toks[3], ln);
    const auto mv = move_from(toks[5]);
    if (!mv) throw MachineParseError(ln, "bad move " + toks[5]);
    if (p.is_halting(from))
      throw MachineParseError(ln, "transition out of halting state " + toks[0]);

    std::vector<Sym> reads;
    if (toks[1] == "*") {
      reads = {Sym::zero, Sym::one, Sym::blank};
    } else {
      const auto s = sym_from(toks[1]);
      if (!s) throw MachineParseError(ln, "bad symbol " + toks[1]);
      reads = {*s};
    }
    for (Sym rd : reads) {
      Sym wr;
      if (toks[4] == "*") {
        wr = rd;
      } else {
        const auto s = sym_from(toks[4]);
        if (!s) throw MachineParseError(ln, "bad symbol " + toks[4]);
        wr = *s;
      }
      auto& flag = defined[from][static_cast<int>(rd)];
      if (flag)
        throw MachineParseError(ln, "duplicate transition for " + toks[0] + " " +
                                        std::string(1, sym_char(rd)));
      flag = 1;
      p.table[from][static_cast<int>(rd)] = Transition{to, wr, *mv};
    }
  }

  if (!have_header) throw MachineParseError(ln, "empty program");
  for (std::uint32_t s = 0; s < p.states.size(); ++s) {
    if (p.is_halting(s)) continue;
    for (int a = 0; a < 3; ++a)
      if (!defined[s][a])
        throw MachineParseError(ln, "non-total transition table: missing " + p.states[s] +
                                        " " + std::string(1, sym_char(static_cast<Sym>(a))));
  }
  return p;
}

std::string serialize_program(const Program& p) {
  std::ostringstream os;
  os << "states:";
  for (const auto& s : p.states) os << ' ' << s;
  os << " ; init: " << p.states[p.initial] << " ; halt:";
  for (std::uint32_t s = 0; s < p.states.size(); ++s)
    if (p.is_halting(s)) os << ' ' << p.states[s];
  os << '\n';
  for (std::uint32_t s = 0; s < p.states.size(); ++s) {
    if (p.is_halting(s)) continue;
    for (int a = 0; a < 3; ++a) {
      const Transition& t = p.table[s][a];
      os << p.states[s] << ' ' << sym_char(static_cast<Sym>(a)) << " -> "
         << p.states[t.next] << ' ' << sym_char(t.write) << ' ' << move_char(t.move)
         << '\n';
    }
  }
  return os.str();
}

MachineState init(const Program& p, std::uint64_t input) {
  MachineState st;
  st.control = p.initial;
  std::string bits;
  if (input == 0) {
    bits = "0";
  } else {
    while (input > 0) {
      bits.push_back(static_cast<char>('0' + (input & 1)));
      input >>= 1;
    }
    std::reverse(bits.begin(), bits.end());
  }
  for (std::size_t i = 0; i < bits.size(); ++i)
    st.tape[static_cast<std::int64_t>(i)] = bits[i] == '1' ? Sym::one : Sym::zero;
  return st;
}

std::pair<MachineState, HaltStatus> run_quantum(const Program& p, MachineState state,
                                                std::uint64_t quantum) {
  for (std::uint64_t i = 0; i < quantum; ++i) {
    if (p.is_halting(state.control))
      return {std::move(state), HaltStatus::halted_at(state.steps_executed)};
    const auto it = state.tape.find(state.head);
    const Sym rd = it == state.tape.end() ? Sym::blank : it->second;
    const Transition& t = p.table[state.control][static_cast<int>(rd)];
    if (t.write == Sym::blank) {
      if (it != state.tape.end()) state.tape.erase(it);
    } else if (it != state.tape.end()) {
      it->second = t.write;
    } else {
      state.tape[state.head] = t.write;
    }
    switch (t.move) {
      case Move::left: --state.head; break;
      case Move::right: ++state.head; break;
      case Move::stay: break;
    }
    state.control = t.next;
    ++state.steps_executed;
  }
  if (p.is_halting(state.control))
    return {std::move(state), HaltStatus::halted_at(state.steps_executed)};
  return {std::move(state), HaltStatus::running()};
}

Program loop_forever() {
  Program p;
  p.name = "loop_forever";
  p.states = {"q0"};
  p.initial = 0;
  p.halting = {0};
  p.table.resize(1);
  for (int a = 0; a < 3; ++a)
    p.table[0][a] = Transition{0, static_cast<Sym>(a), Move::stay};
  return p;
}

Program halt_after(std::uint64_t steps) {
  Program p;
  p.name = "halt_after(" + std::to_string(steps) + ")";
  p.states.reserve(steps + 1);
  for (std::uint64_t i = 0; i <= steps; ++i) p.states.push_back("q" + std::to_string(i));
  p.initial = 0;
  p.halting.assign(steps + 1, 0);
  p.halting[steps] = 1;
  p.table.resize(steps + 1);
  for (std::uint64_t i = 0; i < steps; ++i)
    for (int a = 0; a < 3; ++a)
      p.table[i][a] = Transition{static_cast<std::uint32_t>(i + 1), static_cast<Sym>(a),
                                 Move::stay};
  return p;
}

Program collatz_program() {
  // Halts iff the Collatz iteration of the input reaches 1.
  // seek_end walks to the last digit; lsb_check halves by erasing a trailing
  // zero; one_check halts when a lone 1 remains; the mul_pc states write
  // 3n+1 in one right-to-left sweep, carrying (previous bit, carry) in the
  // state. spin absorbs the n = 0 case.
  const std::string text =
      "states: seek_end lsb_check one_check mul_lsb mul_00 mul_01 mul_10 mul_11 spin done"
      " ; init: seek_end ; halt: done\n"
      "seek_end 0 -> seek_end 0 R\n"
      "seek_end 1 -> seek_end 1 R\n"
      "seek_end _ -> lsb_check _ L\n"
      "lsb_check 0 -> lsb_check _ L\n"
      "lsb_check 1 -> one_check 1 L\n"
      "lsb_check _ -> spin _ S\n"
      "one_check 0 -> mul_lsb 0 R\n"
      "one_check 1 -> mul_lsb 1 R\n"
      "one_check _ -> done _ S\n"
      "mul_lsb 1 -> mul_11 0 L\n"
      "mul_lsb 0 -> mul_01 0 L\n"
      "mul_lsb _ -> spin _ S\n"
      "mul_00 0 -> mul_00 0 L\n"
      "mul_00 1 -> mul_10 1 L\n"
      "mul_00 _ -> seek_end _ R\n"
      "mul_01 0 -> mul_00 1 L\n"
      "mul_01 1 -> mul_11 0 L\n"
      "mul_01 _ -> seek_end 1 R\n"
      "mul_10 0 -> mul_00 1 L\n"
      "mul_10 1 -> mul_11 0 L\n"
      "mul_10 _ -> seek_end 1 R\n"
      "mul_11 0 -> mul_01 0 L\n"
      "mul_11 1 -> mul_11 1 L\n"
      "mul_11 _ -> mul_01 0 L\n"
      "spin * -> spin * S\n";
  Program p = parse_program(text);
  p.name = "collatz";
  return p;
}

// Halting members halt strictly after step 10, so with quantum 10 every
// halt lands in round two or later.
std::map<std::string, Program> sample_programs() {
  std::map<std::string, Program> out;
  out["loop_forever"] = loop_forever();
  out["collatz"] = collatz_program();
  out["halt_after(11)"] = halt_after(11);
  out["halt_after(15)"] = halt_after(15);
  out["halt_after(20)"] = halt_after(20);
  return out;
}

}  // namespace hollow
