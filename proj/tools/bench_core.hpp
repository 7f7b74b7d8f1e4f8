#pragma once

// Engine driver behind itopo-bench: runs an arc stream through one engine,
// optionally checks it against the static oracles, and summarizes the run as
// a JSON report.

#include <chrono>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "itopo/itopo.hpp"
#include "json.hpp"

namespace itopo::bench {

using nlohmann::json;

enum class CheckMode { None, Order, Oracle };

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"sparse", "sparse-limited", "dense", "scc-sparse", "scc-dense"};
  return names;
}

inline bool is_scc(const std::string& algo) { return algo.starts_with("scc-"); }

struct RunOptions {
  std::string algorithm = "sparse";
  PivotRule pivot = PivotRule::Median;
  std::uint64_t seed = 0;
  CheckMode check = CheckMode::None;
};

struct RunReport {
  std::string algorithm;
  std::size_t n = 0;
  std::size_t arcs_attempted = 0;
  std::size_t arcs_accepted = 0;
  std::optional<std::size_t> cycle_at;  ///< 1-based stream index of the arc that closed a cycle
  std::optional<Arc> witness;
  Metrics metrics;
  std::vector<VertexId> order;                   ///< vertices, or canonical vertices for SCC engines
  std::optional<std::vector<VertexId>> partition;  ///< canonical vertex of each vertex (SCC engines)
  std::optional<std::string> check_failure;
  double wall_time = 0;  ///< seconds

  bool operator==(const RunReport&) const = default;
};

}  // namespace itopo::bench

namespace itopo {

inline void to_json(nlohmann::json& j, const Arc& a) { j = nlohmann::json::array({a.tail, a.head}); }
inline void from_json(const nlohmann::json& j, Arc& a) {
  a.tail = j.at(0).get<VertexId>();
  a.head = j.at(1).get<VertexId>();
}

#define ITOPO_METRIC_FIELDS(X) \
  X(arc_traversals) X(search_steps) X(loop_iterations) X(vertex_moves) X(total_move_distance) X(pivot_selections)

inline void to_json(nlohmann::json& j, const Metrics& m) {
  j = nlohmann::json::object();
#define ITOPO_PUT(f) j[#f] = m.f;
  ITOPO_METRIC_FIELDS(ITOPO_PUT)
#undef ITOPO_PUT
}

inline void from_json(const nlohmann::json& j, Metrics& m) {
#define ITOPO_GET(f) j.at(#f).get_to(m.f);
  ITOPO_METRIC_FIELDS(ITOPO_GET)
#undef ITOPO_GET
}

#undef ITOPO_METRIC_FIELDS

}  // namespace itopo

namespace itopo::bench {

inline void to_json(json& j, const RunReport& r) {
  j = json{{"algorithm", r.algorithm},
           {"n", r.n},
           {"arcs_attempted", r.arcs_attempted},
           {"arcs_accepted", r.arcs_accepted},
           {"metrics", r.metrics},
           {"order", r.order},
           {"wall_time", r.wall_time}};
  if (r.cycle_at) j["cycle_at"] = *r.cycle_at;
  if (r.witness) j["witness"] = *r.witness;
  if (r.partition) j["partition"] = *r.partition;
  if (r.check_failure) j["check_failure"] = *r.check_failure;
}

inline void from_json(const json& j, RunReport& r) {
  j.at("algorithm").get_to(r.algorithm);
  j.at("n").get_to(r.n);
  j.at("arcs_attempted").get_to(r.arcs_attempted);
  j.at("arcs_accepted").get_to(r.arcs_accepted);
  j.at("metrics").get_to(r.metrics);
  j.at("order").get_to(r.order);
  j.at("wall_time").get_to(r.wall_time);
  r.cycle_at = j.contains("cycle_at") ? std::optional(j["cycle_at"].get<std::size_t>()) : std::nullopt;
  r.witness = j.contains("witness") ? std::optional(j["witness"].get<Arc>()) : std::nullopt;
  r.partition =
      j.contains("partition") ? std::optional(j["partition"].get<std::vector<VertexId>>()) : std::nullopt;
  r.check_failure =
      j.contains("check_failure") ? std::optional(j["check_failure"].get<std::string>()) : std::nullopt;
}

/// Above this size the dense engines store arcs in a hash set instead of an n*n bit matrix.
inline constexpr std::size_t kBitMatrixLimit = 1 << 14;

enum class StepKind { Accepted, Duplicate, Cycle };

struct Step {
  StepKind kind = StepKind::Accepted;
  std::optional<Arc> witness;
};

/// Uniform face over the five engines.
class Driver {
 public:
  virtual ~Driver() = default;
  virtual Step insert(Arc a) = 0;
  virtual const Metrics& metrics() const = 0;
  virtual std::vector<VertexId> order() = 0;
  virtual std::optional<std::vector<VertexId>> partition() { return std::nullopt; }
  virtual bool order_valid() = 0;
};

namespace detail {

template <class Engine>
class TopoDriver final : public Driver {
 public:
  template <class... Args>
  explicit TopoDriver(Args&&... args) : engine_(std::forward<Args>(args)...) {}

  Step insert(Arc a) override {
    try {
      const InsertResult r = engine_.add_arc(a.tail, a.head);
      if (r.outcome == Outcome::Cycle) return {StepKind::Cycle, r.witness};
      return {};
    } catch (const DuplicateArcError&) {
      return {StepKind::Duplicate, std::nullopt};
    }
  }
  const Metrics& metrics() const override { return engine_.metrics(); }
  std::vector<VertexId> order() override { return engine_.order(); }
  bool order_valid() override { return engine_.order_is_topological(); }

 private:
  Engine engine_;
};

template <class Engine>
class SccDriver final : public Driver {
 public:
  template <class... Args>
  explicit SccDriver(Args&&... args) : engine_(std::forward<Args>(args)...) {}

  Step insert(Arc a) override {
    try {
      engine_.add_arc(a.tail, a.head);
      return {};
    } catch (const DuplicateArcError&) {
      return {StepKind::Duplicate, std::nullopt};
    }
  }
  const Metrics& metrics() const override { return engine_.metrics(); }
  std::vector<VertexId> order() override { return engine_.canonical_order(); }
  std::optional<std::vector<VertexId>> partition() override { return engine_.components(); }
  bool order_valid() override { return engine_.condensation_is_topological(); }

 private:
  Engine engine_;
};

}  // namespace detail

inline std::unique_ptr<Driver> make_driver(const RunOptions& opt, std::size_t n) {
  const std::string& a = opt.algorithm;
  const bool small = n <= kBitMatrixLimit;
  if (a == "sparse" || a == "sparse-limited") {
    SparseConfig cfg{.mode = a == "sparse" ? SearchMode::SoftThreshold : SearchMode::Limited,
                     .pivot = opt.pivot,
                     .seed = opt.seed};
    return std::make_unique<detail::TopoDriver<SparseEngine>>(n, cfg);
  }
  if (a == "dense") {
    if (small) return std::make_unique<detail::TopoDriver<DenseEngine<BitMatrix>>>(n);
    return std::make_unique<detail::TopoDriver<DenseEngine<HashedMatrix>>>(n);
  }
  if (a == "scc-sparse") {
    SccSparseConfig cfg{.pivot = opt.pivot, .seed = opt.seed};
    return std::make_unique<detail::SccDriver<SccSparseEngine>>(n, cfg);
  }
  if (a == "scc-dense") {
    if (small) return std::make_unique<detail::SccDriver<SccDenseEngine<BitMatrix>>>(n);
    return std::make_unique<detail::SccDriver<SccDenseEngine<HashedMatrix>>>(n);
  }
  throw std::invalid_argument("unknown algorithm '" + a + "'");
}

/// Reachability oracle fed with the same accepted arcs as the engine.
class OracleCheck {
 public:
  OracleCheck(std::size_t n, bool scc) : graph_(n), scc_(scc) {}

  /// True iff inserting `a` closes a cycle in the accepted graph.
  bool closes_cycle(Arc a) const { return a.tail == a.head || reachable(graph_, a.head, a.tail); }
  void accept(Arc a) {
    graph_.add(a);
    arcs_.push_back(a);
  }

  /// Empty when the driver agrees with the oracle; otherwise a description.
  std::string verify(Driver& d) const {
    if (scc_) {
      const auto expect = static_scc(graph_);
      if (!same_partition(*d.partition(), expect.component)) return "partition differs from static SCC";
      if (!d.order_valid()) return "condensation order is not topological";
      return {};
    }
    if (!is_topological(d.order(), graph_.n, arcs_)) return "order is not topological";
    return {};
  }

 private:
  StaticGraph graph_;
  std::vector<Arc> arcs_;
  bool scc_;
};

inline void dump_counterexample(std::ostream& err, const ArcSequence& seq, std::size_t upto, const std::string& why) {
  err << "check failed at arc " << upto << ": " << why << "\n# counterexample prefix\n";
  ArcSequence prefix{seq.n, {seq.arcs.begin(), seq.arcs.begin() + static_cast<std::ptrdiff_t>(upto)}};
  write_edge_stream(err, prefix);
}

inline RunReport run_stream(const RunOptions& opt, const ArcSequence& seq, std::ostream& err = std::cerr) {
  RunReport report;
  report.algorithm = opt.algorithm;
  report.n = seq.n;
  const bool scc = is_scc(opt.algorithm);
  auto driver = make_driver(opt, seq.n);
  std::optional<OracleCheck> oracle;
  if (opt.check == CheckMode::Oracle) oracle.emplace(seq.n, scc);

  auto fail = [&](std::size_t index, std::string why) {
    dump_counterexample(err, seq, index, why);
    report.check_failure = "arc " + std::to_string(index) + ": " + why;
  };

  const auto start = std::chrono::steady_clock::now();
  for (std::size_t idx = 1; idx <= seq.arcs.size(); ++idx) {
    const Arc a = seq.arcs[idx - 1];
    ++report.arcs_attempted;
    const bool expect_cycle = oracle && !scc && oracle->closes_cycle(a);
    const Step step = driver->insert(a);
    if (step.kind == StepKind::Duplicate) {
      err << "arc " << idx << " " << to_string(a) << " is a duplicate; skipped\n";
      continue;
    }
    if (step.kind == StepKind::Cycle) {
      report.cycle_at = idx;
      report.witness = step.witness;
      if (oracle && !expect_cycle) fail(idx, "engine reported a cycle the oracle does not see");
      break;
    }
    ++report.arcs_accepted;
    if (oracle) {
      if (expect_cycle) {
        fail(idx, "oracle sees a cycle the engine missed");
        break;
      }
      oracle->accept(a);
      if (std::string why = oracle->verify(*driver); !why.empty()) {
        fail(idx, why);
        break;
      }
    }
  }
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (opt.check == CheckMode::Order && !driver->order_valid())
    report.check_failure = scc ? "condensation order is not topological" : "final order is not topological";
  report.metrics = driver->metrics();
  report.order = driver->order();
  report.partition = driver->partition();
  return report;
}

struct CompareReport {
  std::string first, second;
  std::size_t arcs = 0;
  std::size_t divergences = 0;
  std::optional<std::size_t> first_divergence;  ///< 1-based arc index
  std::string detail;
};

inline void to_json(json& j, const CompareReport& c) {
  j = json{{"algorithms", {c.first, c.second}}, {"arcs", c.arcs}, {"divergences", c.divergences}};
  if (c.first_divergence) {
    j["first_divergence"] = *c.first_divergence;
    j["detail"] = c.detail;
  }
}

/// Drives two engines of the same kind in lockstep. Topological engines must
/// agree on where the first cycle appears; SCC engines on the partition after
/// every insertion. Stops at the first divergence.
inline CompareReport compare_stream(const RunOptions& a, const RunOptions& b, const ArcSequence& seq) {
  if (is_scc(a.algorithm) != is_scc(b.algorithm))
    throw std::invalid_argument("compare needs two topological engines or two SCC engines");
  const bool scc = is_scc(a.algorithm);
  CompareReport report;
  report.first = a.algorithm;
  report.second = b.algorithm;
  auto da = make_driver(a, seq.n), db = make_driver(b, seq.n);
  for (std::size_t idx = 1; idx <= seq.arcs.size(); ++idx) {
    ++report.arcs;
    const Step sa = da->insert(seq.arcs[idx - 1]), sb = db->insert(seq.arcs[idx - 1]);
    std::string why;
    if (sa.kind != sb.kind)
      why = "step outcomes differ";
    else if (scc && !same_partition(*da->partition(), *db->partition()))
      why = "partitions differ";
    if (!why.empty()) {
      report.divergences = 1;
      report.first_divergence = idx;
      report.detail = why;
      break;
    }
    if (sa.kind == StepKind::Cycle) break;
  }
  return report;
}

/// Parses NAME:ARGS, for example "lower-bound:3,3", "path:100",
/// "random:50,200,7,acyclic" or "complete-dag:64,1".
inline ArcSequence generate(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<std::string> args;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    for (std::string part; std::getline(ss, part, ',');) args.push_back(part);
  }
  auto num = [&](std::size_t i) -> std::uint64_t {
    if (i >= args.size()) throw std::invalid_argument("generator '" + name + "' needs more arguments");
    return std::stoull(args[i]);
  };
  if (name == "lower-bound") return gen_local_lower_bound(num(0), num(1));
  if (name == "path") return gen_path(num(0));
  if (name == "complete-dag") return gen_complete_dag(num(0), args.size() > 1 ? num(1) : 0);
  if (name == "random") {
    RandomMode mode = RandomMode::Acyclic;
    if (args.size() > 3) {
      if (args[3] == "arbitrary")
        mode = RandomMode::Arbitrary;
      else if (args[3] != "acyclic")
        throw std::invalid_argument("random mode must be acyclic or arbitrary");
    }
    return gen_random(num(0), num(1), args.size() > 2 ? num(2) : 0, mode);
  }
  throw std::invalid_argument("unknown generator '" + name + "'");
}

}  // namespace itopo::bench
