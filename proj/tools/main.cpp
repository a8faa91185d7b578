// hollow: build eps-nets, compute homology verdicts, run the reduction.
// JSON results go to stdout, a human summary to stderr.
// Exit codes: 0 success, 2 usage, 3 I/O, 4 invalid data.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hollow/homology.hpp"
#include "hollow/machine.hpp"
#include "hollow/net.hpp"
#include "hollow/reduction.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitData = 4;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw std::ios_base::failure("cannot read " + path);
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw std::ios_base::failure("cannot write " + path);
}

struct NetArgs {
  std::uint32_t dim = 3;
  std::uint32_t level = 0;
  bool boundary = false;
  std::string puncture;  // empty, "auto", or a rational d^2
  std::string out;
};

int cmd_net(const NetArgs& a) {
  hollow::EpsNet net;
  std::string kind = "cube";
  if (a.boundary) {
    net = hollow::boundary_net(a.level, a.dim);
    kind = "boundary";
  } else if (!a.puncture.empty()) {
    kind = "punctured";
    const hollow::DyadicPoint center = hollow::cube_center(a.dim);
    const hollow::EpsNet solid = hollow::cumulative_net(a.level, a.dim);
    const hollow::Rational d2 = a.puncture == "auto"
                                    ? hollow::puncture_radius_sq(solid.points, center)
                                    : hollow::Rational::parse(a.puncture);
    net.dim = a.dim;
    net.level = a.level;
    net.tag = hollow::SpaceTag::punctured;
    net.center = center;
    net.d_squared = d2;
    for (std::uint32_t m = 0; m <= a.level; ++m) {
      auto layer = hollow::punctured_layer(m, d2, center, a.dim);
      net.points.insert(net.points.end(), layer.begin(), layer.end());
    }
    std::sort(net.points.begin(), net.points.end());
    net.points.erase(std::unique(net.points.begin(), net.points.end()),
                     net.points.end());
    net.epsilon_bound =
        hollow::certified_epsilon(hollow::covering_radius_sq(net, a.level + 2));
  } else {
    net = hollow::cumulative_net(a.level, a.dim);
  }

  std::string out = a.out;
  if (out.empty()) {
    out = "net_d" + std::to_string(a.dim) + "_m" + std::to_string(a.level);
    if (kind != "cube") out += "_" + kind;
    out += ".net";
  }
  spill(out, hollow::write_net(net));

  nlohmann::ordered_json j;
  j["points"] = net.points.size();
  j["epsilon_bound"] = net.epsilon_bound.str();
  j["dim"] = net.dim;
  j["level"] = net.level;
  j["space_tag"] = kind;
  if (net.d_squared) j["d_squared"] = net.d_squared->str();
  j["file"] = out;
  std::cout << j.dump() << "\n";
  std::cerr << kind << " net, " << net.points.size() << " points, epsilon under "
            << net.epsilon_bound.str() << " -> " << out << "\n";
  return 0;
}

struct HomologyArgs {
  std::string net_path;
  std::int64_t level = -1;  // default: the net's own level
  bool timing = false;
};

int cmd_homology(const HomologyArgs& a) {
  const hollow::EpsNet net = hollow::parse_net(slurp(a.net_path));
  const std::uint32_t m =
      a.level < 0 ? net.level : static_cast<std::uint32_t>(a.level);

  const auto t0 = std::chrono::steady_clock::now();
  const hollow::Verdict v = hollow::q_hat(net, m);
  const auto t1 = std::chrono::steady_clock::now();
  const double ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();

  std::cout << hollow::verdict_json(v, a.timing ? ms : -1.0) << "\n";
  std::cerr << hollow::verdict_name(v.verdict) << " at level " << m << ", betti (";
  for (std::size_t i = 0; i < v.evidence.betti.size(); ++i)
    std::cerr << (i ? "," : "") << v.evidence.betti[i];
  std::cerr << ")\n";
  return 0;
}

struct ReduceArgs {
  std::string machine_path;
  std::uint64_t input = 0;
  std::uint64_t quantum = 1000;
  std::uint32_t budget = 0;
  std::uint32_t dim = 3;
  bool fool = false;
  std::string net_out;
};

int cmd_reduce(const ReduceArgs& a) {
  hollow::Program prog;
  if (a.fool) {
    prog = hollow::fooling_program(a.quantum, a.budget);
  } else {
    prog = hollow::parse_program(slurp(a.machine_path));
    if (prog.name.empty()) {
      auto stem = a.machine_path.substr(a.machine_path.find_last_of("/\\") + 1);
      prog.name = stem.substr(0, stem.rfind('.'));
    }
  }

  const hollow::ReductionReport rep =
      hollow::run_F(prog, a.input, a.quantum, a.budget, a.dim);

  if (!a.net_out.empty()) {
    const hollow::NetStream stream = hollow::run_R(
        [&] {
          std::vector<hollow::HaltStatus> st;
          for (const auto& r : rep.rounds) st.push_back(r.machine_status);
          return st;
        }(),
        a.budget, a.dim);
    spill(a.net_out, hollow::write_net(stream.layers.back().accumulated));
  }

  std::cout << hollow::report_json(rep) << "\n";
  std::cerr << rep.program << " on input " << rep.input << ": answer "
            << rep.answer() << " after " << rep.rounds.size() << " rounds"
            << (rep.misclassified ? " (misclassified)" : "") << "\n";

  if (a.fool && !rep.misclassified) {
    std::cerr << "fooling instance was not misclassified\n";
    return kExitData;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"epsilon-net homology workbench"};
  app.require_subcommand(1);

  NetArgs na;
  CLI::App* net = app.add_subcommand("net", "build an epsilon-net file");
  net->add_option("--dim", na.dim, "ambient dimension")
      ->check(CLI::Range(2u, 4u))
      ->capture_default_str();
  net->add_option("--level", na.level, "grid refinement level")->required();
  auto* bflag = net->add_flag("--boundary", na.boundary, "net of the cube boundary");
  net->add_option("--puncture", na.puncture,
                  "'auto' or a squared radius num/den; removes an open central ball")
      ->excludes(bflag);
  net->add_option("--out", na.out, "output path (default derived from flags)");

  HomologyArgs ha;
  CLI::App* hom = app.add_subcommand("homology", "verdict for a net file");
  hom->add_option("--net", ha.net_path, "net file")->required();
  hom->add_option("--level", ha.level, "complex level (default: net level)");
  hom->add_flag("--timing", ha.timing, "include elapsed_ms in the JSON");

  ReduceArgs ra;
  CLI::App* red = app.add_subcommand("reduce", "run the truncated decision pipeline");
  auto* mopt = red->add_option("--machine", ra.machine_path, "machine-spec file");
  red->add_option("--input", ra.input, "machine input n")->capture_default_str();
  red->add_option("--quantum", ra.quantum, "steps per round")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  red->add_option("--budget", ra.budget, "level budget M")
      ->check(CLI::PositiveNumber)
      ->required();
  red->add_option("--dim", ra.dim, "ambient dimension")
      ->check(CLI::Range(2u, 4u))
      ->capture_default_str();
  auto* fflag = red->add_flag("--fool", ra.fool,
                              "use the budget-fooling machine instead of a file");
  red->add_option("--net-out", ra.net_out, "also write the accumulated net here");
  mopt->excludes(fflag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints help or the usage error
    return rc == 0 ? 0 : kExitUsage;
  }

  if (!na.puncture.empty() && na.puncture != "auto") {
    try {
      if (hollow::Rational::parse(na.puncture).num <= 0) throw std::invalid_argument("");
    } catch (const std::exception&) {
      std::cerr << "--puncture takes 'auto' or a positive rational num/den\n";
      return kExitUsage;
    }
  }

  try {
    if (net->parsed()) return cmd_net(na);
    if (hom->parsed()) return cmd_homology(ha);
    if (red->parsed()) {
      if (!ra.fool && ra.machine_path.empty()) {
        std::cerr << "either --machine or --fool is required\n";
        return kExitUsage;
      }
      return cmd_reduce(ra);
    }
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const hollow::MachineParseError& e) {
    std::cerr << "machine error: " << e.what() << "\n";
    return kExitData;
  } catch (const hollow::NetFormatError& e) {
    std::cerr << "net error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid data: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
