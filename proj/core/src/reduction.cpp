#include "hollow/reduction.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include <nlohmann/json.hpp>

namespace hollow {

namespace {

// Accumulated-net bounds recur across reduction runs (the net is fixed by
// dimension, layer, switch round and the frozen d^2), so certify once.
Dyadic stream_epsilon(const EpsNet& net, std::uint32_t switch_round) {
  using Key = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t,
                         std::int64_t, std::int64_t>;
  static std::mutex mu;
  static std::map<Key, Dyadic> memo;

  Key key{net.dim, net.level, switch_round,
          net.d_squared ? net.d_squared->num : 0,
          net.d_squared ? net.d_squared->den : 1};
  {
    std::lock_guard<std::mutex> lock(mu);
    const auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  const Dyadic eps = certified_epsilon(covering_radius_sq(net, net.level + 2));
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, eps);
  return eps;
}

// Builds the stream one round at a time; round r contributes layer r-1.
class StreamBuilder {
 public:
  explicit StreamBuilder(std::uint32_t dim)
      : dim_(dim), center_(cube_center(dim)) {
    stream_.dim = dim;
  }

  const NetLayer& step(const HaltStatus& status) {
    const std::uint32_t m = static_cast<std::uint32_t>(stream_.layers.size());

    if (status.halted && !stream_.d_squared) {
      stream_.d_squared = puncture_radius_sq(acc_, center_);
      stream_.switch_level = m;
    }

    NetLayer layer;
    layer.m = m;
    layer.method = status.halted ? Method::two : Method::one;
    layer.added = status.halted
                      ? punctured_layer(m, *stream_.d_squared, center_, dim_)
                      : grid_layer(m, dim_);

    std::vector<DyadicPoint> merged;
    merged.reserve(acc_.size() + layer.added.size());
    std::set_union(acc_.begin(), acc_.end(), layer.added.begin(),
                   layer.added.end(), std::back_inserter(merged));
    acc_ = std::move(merged);

    EpsNet& net = layer.accumulated;
    net.dim = dim_;
    net.level = m;
    net.points = acc_;
    if (stream_.d_squared) {
      net.tag = SpaceTag::punctured;
      net.center = center_;
      net.d_squared = stream_.d_squared;
    }
    net.epsilon_bound =
        stream_epsilon(net, stream_.switch_level ? *stream_.switch_level + 1 : 0);

    stream_.layers.push_back(std::move(layer));
    return stream_.layers.back();
  }

  NetStream take() && { return std::move(stream_); }
  const NetStream& stream() const { return stream_; }

 private:
  std::uint32_t dim_;
  DyadicPoint center_;
  NetStream stream_;
  std::vector<DyadicPoint> acc_;
};

nlohmann::ordered_json halt_json(const HaltStatus& st) {
  if (!st.halted) return "running";
  nlohmann::ordered_json j;
  j["halted_at"] = st.step;
  return j;
}

}  // namespace

NetStream run_R(const std::vector<HaltStatus>& status_per_round,
                std::uint32_t levels, std::uint32_t dim) {
  if (levels == 0) throw std::invalid_argument("at least one round required");
  if (status_per_round.size() != levels)
    throw std::invalid_argument("one halt status per round required");
  for (std::size_t i = 1; i < status_per_round.size(); ++i) {
    const HaltStatus& prev = status_per_round[i - 1];
    const HaltStatus& cur = status_per_round[i];
    if (prev.halted && !(cur.halted && cur.step == prev.step))
      throw std::invalid_argument("non-monotone halt status sequence");
  }

  StreamBuilder builder(dim);
  for (const HaltStatus& st : status_per_round) builder.step(st);
  return std::move(builder).take();
}

ReductionReport run_F(const Program& program, std::uint64_t input,
                      std::uint64_t quantum, std::uint32_t level_budget,
                      std::uint32_t dim) {
  if (quantum < 1) throw std::invalid_argument("quantum must be positive");
  if (level_budget < 1) throw std::invalid_argument("level budget must be positive");

  ReductionReport report;
  report.program = program.name;
  report.input = input;
  report.quantum = quantum;
  report.level_budget = level_budget;
  report.dim = dim;

  MachineState ms = init(program, input);
  StreamBuilder builder(dim);
  for (std::uint32_t round = 1; round <= level_budget; ++round) {
    HaltStatus status;
    std::tie(ms, status) = run_quantum(program, std::move(ms), quantum);
    const NetLayer& layer = builder.step(status);

    RoundLog log;
    log.round = round;
    log.machine_status = status;
    log.method = layer.method;
    log.layer_size = layer.added.size();
    log.epsilon_bound = layer.accumulated.epsilon_bound;
    if (layer.method == Method::two) log.d_squared = layer.accumulated.d_squared;
    report.rounds.push_back(log);
  }

  // The accumulated net lives on the level reached by the last layer.
  const EpsNet& net = builder.stream().layers.back().accumulated;
  report.final_verdict = q_hat(net, level_budget - 1);

  report.ground_truth =
      ground_truth(program, input, quantum * (level_budget + 2));
  report.misclassified = report.ground_truth->halted &&
                         report.ground_truth->step > quantum * level_budget &&
                         report.final_verdict.verdict == Triviality::trivial;
  return report;
}

Program fooling_program(std::uint64_t quantum, std::uint32_t level_budget) {
  if (quantum * level_budget < 1)
    throw std::invalid_argument("empty budget cannot be fooled");
  return halt_after(quantum * level_budget + 1);
}

HaltStatus ground_truth(const Program& program, std::uint64_t input,
                        std::uint64_t max_steps) {
  return run_quantum(program, init(program, input), max_steps).second;
}

std::string report_json(const ReductionReport& r) {
  nlohmann::ordered_json j;
  j["program"] = r.program;
  j["input"] = r.input;
  j["quantum"] = r.quantum;
  j["level_budget"] = r.level_budget;
  j["dim"] = r.dim;
  j["rounds"] = nlohmann::ordered_json::array();
  for (const RoundLog& log : r.rounds) {
    nlohmann::ordered_json row;
    row["round"] = log.round;
    row["machine_status"] = halt_json(log.machine_status);
    row["method"] = log.method == Method::two ? "Two" : "One";
    row["layer_size"] = log.layer_size;
    row["epsilon_bound"] = log.epsilon_bound.str();
    if (log.d_squared) row["d_squared"] = log.d_squared->str();
    j["rounds"].push_back(std::move(row));
  }
  j["final_verdict"] = nlohmann::ordered_json::parse(verdict_json(r.final_verdict));
  j["answer"] = r.answer();
  if (r.ground_truth) j["ground_truth"] = halt_json(*r.ground_truth);
  j["misclassified"] = r.misclassified;
  return j.dump();
}

}  // namespace hollow
