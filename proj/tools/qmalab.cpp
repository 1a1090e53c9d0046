// qmalab: simulator and verification laboratory for single-qubit-measurement
// QMA over a noisy channel. Subcommands drive the protocol Monte Carlo, the
// analytic gap bounds, the tableau/dense cross-checks and the code demo.

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmalab/codes.hpp"
#include "qmalab/gap.hpp"
#include "qmalab/graph_basis.hpp"
#include "qmalab/protocol.hpp"
#include "qmalab/verify.hpp"

using json = nlohmann::ordered_json;
using namespace qmalab;

namespace {

constexpr uint64_t kDefaultSeed = 0x51ab5eed2026ull;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return cfg;
}

GraphSpec graph_from_string(const std::string& name) {
  if (name.rfind("preset:grid:", 0) == 0) {
    // preset:grid:ROWSxCOLS:V1COLS
    std::string rest = name.substr(12);
    std::size_t x = rest.find('x');
    std::size_t colon = rest.find(':', x);
    if (x == std::string::npos || colon == std::string::npos) {
      throw ConfigError("bad grid preset '" + name + "', expected preset:grid:RxC:V1COLS");
    }
    return make_grid_spec(std::stoul(rest.substr(0, x)),
                          std::stoul(rest.substr(x + 1, colon - x - 1)),
                          std::stoul(rest.substr(colon + 1)));
  }
  try {
    return load_graph_file(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<LogicalGate> gates_from_json(const json& arr) {
  std::vector<LogicalGate> gates;
  for (const auto& item : arr) {
    if (!item.is_array() || item.empty()) throw ConfigError("pattern gate must be an array");
    std::string op = item[0].get<std::string>();
    if (op == "h") {
      gates.push_back(LogicalGate::h(item.at(1).get<std::size_t>()));
    } else if (op == "s") {
      gates.push_back(LogicalGate::s(item.at(1).get<std::size_t>()));
    } else if (op == "t") {
      gates.push_back(LogicalGate::t(item.at(1).get<std::size_t>()));
    } else if (op == "z") {
      gates.push_back(LogicalGate::z(item.at(1).get<std::size_t>()));
    } else if (op == "rz") {
      gates.push_back(
          LogicalGate::rz(item.at(1).get<std::size_t>(), item.at(2).get<double>()));
    } else if (op == "cz") {
      gates.push_back(LogicalGate::cz(item.at(1).get<std::size_t>(),
                                      item.at(2).get<std::size_t>()));
    } else {
      throw ConfigError("unsupported gate '" + op + "' (use h, s, t, z, rz, cz)");
    }
  }
  return gates;
}

NoiseChannel channel_from_json(const json& cfg, std::size_t n) {
  if (cfg.is_null()) return NoiseChannel::none(n);
  std::string kind = cfg.value("kind", "none");
  try {
    if (kind == "none") return NoiseChannel::none(n);
    if (kind == "z-only") return NoiseChannel::z_only(n, cfg.value("pz", 0.0));
    if (kind == "iid-pauli") {
      return NoiseChannel::iid_pauli(n, cfg.value("px", 0.0), cfg.value("py", 0.0),
                                     cfg.value("pz", 0.0));
    }
    if (kind == "depolarizing") return NoiseChannel::depolarizing(n, cfg.value("p", 0.0));
    if (kind == "correlated") {
      std::vector<PauliEvent> events;
      for (const auto& e : cfg.at("events")) {
        events.push_back({PauliString::from_ops(e.at("pauli").get<std::string>()),
                          e.at("probability").get<double>()});
      }
      return NoiseChannel::correlated(n, std::move(events));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError("bad channel config: " + std::string(e.what()));
  }
  throw ConfigError("unknown channel kind '" + kind + "'");
}

DenseState amplitudes_from_json(const json& arr, std::size_t n) {
  uint64_t dim = uint64_t{1} << n;
  if (!arr.is_array() || arr.size() != dim) {
    throw ConfigError("amplitudes must be an array of 2^" + std::to_string(n) + " entries");
  }
  std::vector<std::complex<double>> amps(dim);
  double norm_sq = 0.0;
  for (uint64_t i = 0; i < dim; ++i) {
    const json& e = arr[i];
    if (e.is_array()) {
      amps[i] = {e.at(0).get<double>(), e.at(1).get<double>()};
    } else {
      amps[i] = e.get<double>();
    }
    norm_sq += std::norm(amps[i]);
  }
  if (norm_sq <= 0.0) throw ConfigError("amplitudes are all zero");
  double scale = 1.0 / std::sqrt(norm_sq);
  for (auto& a : amps) a *= scale;
  return DenseState::from_amplitudes(n, std::move(amps));
}

MerlinStrategy strategy_from_json(const json& cfg, const ProtocolGraph& g) {
  if (cfg.is_null()) return MerlinStrategy::honest();
  std::string kind = cfg.value("kind", "honest");
  try {
    if (kind == "honest") {
      std::string witness = cfg.value("witness", "induced");
      if (witness == "induced") return MerlinStrategy::honest();
      if (witness == "plus") {
        return MerlinStrategy::honest(MerlinStrategy::Witness::PlusProduct);
      }
      if (witness == "computation") {
        return MerlinStrategy::honest(MerlinStrategy::Witness::ComputationInput);
      }
      if (witness == "dense") {
        MerlinStrategy strat = MerlinStrategy::honest(MerlinStrategy::Witness::Dense);
        strat.dense_witness = amplitudes_from_json(cfg.at("amplitudes"), g.v2().size());
        return strat;
      }
      throw ConfigError("unknown witness '" + witness +
                        "' (use induced, plus, computation, dense)");
    }
    if (kind == "custom-dense") {
      return MerlinStrategy::custom_dense(
          amplitudes_from_json(cfg.at("amplitudes"), g.num_vertices()));
    }
    if (kind == "deviated") {
      BitVec gamma = BitVec::from_string(cfg.at("gamma").get<std::string>());
      if (gamma.size() != g.v1().size()) {
        throw ConfigError("deviated: gamma must have length |V1| = " +
                          std::to_string(g.v1().size()));
      }
      return MerlinStrategy::deviated(std::move(gamma));
    }
    if (kind == "graph-basis") {
      BitVec u = BitVec::from_string(cfg.at("u").get<std::string>());
      BitVec v = BitVec::from_string(cfg.at("v").get<std::string>());
      return MerlinStrategy::graph_basis(std::move(u), std::move(v), cfg.value("t", 0));
    }
    if (kind == "random-stabilizer") {
      return MerlinStrategy::random_stabilizer(cfg.value("gates", 0));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError("bad strategy config: " + std::string(e.what()));
  }
  throw ConfigError("unknown strategy kind '" + kind + "'");
}

ProtocolParams params_from_json(const json& cfg) {
  ProtocolParams p;
  if (!cfg.is_null()) {
    p.q = cfg.value("q", p.q);
    p.epsilon = cfg.value("epsilon", p.epsilon);
    p.s = cfg.value("s", p.s);
    p.t = cfg.value("t", p.t);
    p.delta = cfg.value("delta", p.delta);
    p.r = cfg.value("r", p.r);
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

json estimate_to_json(const PassEstimate& e) {
  Interval ci = e.wilson95();
  return json{{"mean", e.rate()}, {"wilson_lo", ci.lo}, {"wilson_hi", ci.hi},
              {"passes", e.passes}, {"shots", e.shots}};
}

void write_output(const json& out, const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write output file: " + path);
  f << out.dump(2) << '\n';
}

void print_estimate_row(const char* label, const PassEstimate& e) {
  Interval ci = e.wilson95();
  std::cout << "  " << std::left << std::setw(9) << label << std::right << std::fixed
            << std::setprecision(4) << std::setw(8) << e.rate() << "   [" << ci.lo << ", "
            << ci.hi << "]   " << e.passes << "/" << e.shots << '\n';
}

struct SimulateOptions {
  std::string config_path;
  std::string out_path;
  std::string trace_path;
  uint64_t seed = kDefaultSeed;
  bool seed_set = false;
  uint64_t shots = 0;  // 0 = take from config
  unsigned workers = 1;
  bool strict = false;
};

int cmd_simulate(const SimulateOptions& opt) {
  json cfg = load_config(opt.config_path);

  std::optional<ProtocolFixture> fixture;
  std::optional<ProtocolGraph> graph;
  if (cfg.contains("pattern")) {
    const json& pat = cfg["pattern"];
    fixture = make_computation_fixture(pat.value("wires", 1),
                                       gates_from_json(pat.at("gates")));
    graph = fixture->graph;
  } else if (cfg.contains("graph")) {
    graph = build_graph(graph_from_string(cfg["graph"].get<std::string>()));
  } else {
    throw ConfigError("config needs either \"graph\" or \"pattern\"");
  }

  ProtocolParams params = params_from_json(cfg.contains("params") ? cfg["params"] : json());
  if (!fixture && params.q > 0.0) {
    std::cout << "note: no pattern in the config, computation branch disabled (q = 0)\n";
    params.q = 0.0;
  }
  NoiseChannel channel = channel_from_json(cfg.contains("channel") ? cfg["channel"] : json(),
                                           graph->num_vertices());
  MerlinStrategy strategy =
      strategy_from_json(cfg.contains("strategy") ? cfg["strategy"] : json(), *graph);
  if (strategy.witness == MerlinStrategy::Witness::ComputationInput && !fixture) {
    throw ConfigError("computation witness requires a pattern in the config");
  }
  CorrectableSet gamma = build_correctable_set(*graph, cfg.value("weight_bound", 1));

  uint64_t shots = opt.shots ? opt.shots : cfg.value("shots", 10000);
  uint64_t seed = opt.seed_set ? opt.seed : cfg.value("seed", kDefaultSeed);

  std::ofstream trace_file;
  SyndromeTraceSink sink;
  if (!opt.trace_path.empty()) {
    trace_file.open(opt.trace_path);
    if (!trace_file) throw std::runtime_error("cannot write trace file: " + opt.trace_path);
    sink = [&trace_file](uint64_t shot, const SyndromeRecord& rec) {
      trace_file << "{\"shot\":" << shot << ',' << rec.to_json_line().substr(1) << '\n';
    };
  }

  AcceptanceReport rep =
      estimate_acceptance(strategy, channel, *graph, gamma, params,
                          fixture ? &*fixture : nullptr, opt.strict, shots, seed, opt.workers,
                          sink);

  std::cout << "protocol simulation: N=" << graph->num_vertices()
            << " |V1|=" << graph->v1().size() << " w=" << gamma.weight_bound
            << " q=" << params.q << (opt.strict ? " [strict tests]" : "")
            << " seed=" << seed << " shots=" << shots << '\n';
  std::cout << "  branch       rate   95% Wilson interval        counts\n";
  print_estimate_row("p_acc", rep.acc);
  print_estimate_row("p_comp", rep.comp);
  print_estimate_row("p_test1", rep.test1);
  print_estimate_row("p_test2", rep.test2);

  json out{{"schema", 1},
           {"command", "simulate"},
           {"seed", seed},
           {"shots", shots},
           {"strict_test", opt.strict},
           {"config", cfg},
           {"results",
            {{"p_acc", estimate_to_json(rep.acc)},
             {"p_comp", estimate_to_json(rep.comp)},
             {"p_test1", estimate_to_json(rep.test1)},
             {"p_test2", estimate_to_json(rep.test2)}}},
           {"meta", {{"timestamp", iso_timestamp()}}}};
  write_output(out, opt.out_path);
  return 0;
}

struct GapOptions {
  std::string config_path;
  double epsilon = 1.0 / 64.0;
  int s = 3;
  int t = 4;
  double delta = 0.0;
  bool epsilon_set = false, s_set = false, t_set = false, delta_set = false;
  std::string out_path;
  std::string sweep_path;
};

int cmd_gap(const GapOptions& opt) {
  ProtocolParams p;
  if (!opt.config_path.empty()) {
    json cfg = load_config(opt.config_path);
    p = params_from_json(cfg.contains("params") ? cfg["params"] : json());
  } else {
    p.epsilon = opt.epsilon;
    p.s = opt.s;
    p.t = opt.t;
    p.delta = opt.delta;
  }
  if (opt.epsilon_set) p.epsilon = opt.epsilon;
  if (opt.s_set) p.s = opt.s;
  if (opt.t_set) p.t = opt.t;
  if (opt.delta_set) p.delta = opt.delta;

  GapReport rep = gap_analysis(p);
  std::cout << std::setprecision(12);
  std::cout << "gap analysis: epsilon=" << p.epsilon << " s=" << p.s << " t=" << p.t
            << " delta=" << p.delta << " (a=" << p.a() << ", b=" << p.b() << ")\n";
  std::cout << "  q*            = " << rep.q_star << '\n';
  std::cout << "  alpha         = " << rep.alpha << '\n';
  std::cout << "  beta1..3      = " << rep.beta1 << ", " << rep.beta2 << ", " << rep.beta3
            << '\n';
  std::cout << "  Delta1..3     = " << rep.delta1 << ", " << rep.delta2 << ", " << rep.delta3
            << '\n';
  std::cout << "  grid argmax q = " << rep.grid_q << " (gap " << rep.grid_gap << ")\n";
  std::cout << "  closed-form lower bound 25/8256 - delta = " << rep.paper_bound
            << (rep.paper_bound_holds ? "  [holds]" : "  [VIOLATED]") << '\n';
  std::cout << "  strict-test protocol max gap = " << rep.failed_delta_max
            << (rep.failed_nonpositive ? "  [never positive]" : "  [POSITIVE?]") << '\n';
  if (rep.delta3 <= 0.0) {
    std::cout << "  NOTE: gap is not positive at these parameters\n";
  }

  if (!opt.sweep_path.empty()) {
    std::ofstream csv(opt.sweep_path);
    if (!csv) throw std::runtime_error("cannot write sweep file: " + opt.sweep_path);
    csv << "epsilon,q_star,delta3\n" << std::setprecision(12);
    for (double eps = 1.0 / 1024.0; eps <= 0.25 + 1e-12; eps += 1.0 / 1024.0) {
      ProtocolParams ps = p;
      ps.epsilon = eps;
      try {
        GapReport r = gap_analysis(ps, 1e-4);
        csv << eps << ',' << r.q_star << ',' << r.delta3 << '\n';
      } catch (const AnalyticDomainError&) {
        csv << eps << ",nan,nan\n";
      }
    }
    std::cout << "  sweep written to " << opt.sweep_path << '\n';
  }

  json out{{"schema", 1},
           {"command", "gap"},
           {"params",
            {{"epsilon", p.epsilon}, {"s", p.s}, {"t", p.t}, {"delta", p.delta},
             {"a", p.a()}, {"b", p.b()}}},
           {"report",
            {{"q_star", rep.q_star},
             {"alpha", rep.alpha},
             {"beta1", rep.beta1},
             {"beta2", rep.beta2},
             {"beta3", rep.beta3},
             {"delta1", rep.delta1},
             {"delta2", rep.delta2},
             {"delta3", rep.delta3},
             {"sqrt_term", rep.sqrt_term},
             {"grid_q", rep.grid_q},
             {"grid_gap", rep.grid_gap},
             {"equalize_residual", rep.equalize_residual},
             {"paper_bound", rep.paper_bound},
             {"paper_bound_holds", rep.paper_bound_holds},
             {"failed_protocol_max_gap", rep.failed_delta_max},
             {"failed_protocol_nonpositive", rep.failed_nonpositive}}},
           {"meta", {{"timestamp", iso_timestamp()}}}};
  write_output(out, opt.out_path);
  return rep.paper_bound_holds || p.delta > 0.0 ? 0 : 1;
}

struct OracleCheckOptions {
  uint64_t seed = kDefaultSeed;
  int circuits = 60;
  int bound_states = 100;
  bool inject_bug = false;
};

int cmd_oracle_check(const OracleCheckOptions& opt) {
  RandomStream rng(opt.seed);
  int failures = 0;
  auto report = [&failures](const char* what, bool ok) {
    std::cout << (ok ? "  ok   " : "  FAIL ") << what << '\n';
    failures += !ok;
  };

  // Tableau vs dense on random circuits.
  {
    bool ok = true;
    const char ops[] = {'I', 'X', 'Y', 'Z'};
    for (int c = 0; c < opt.circuits && ok; ++c) {
      RandomStream trial = rng.split(c);
      std::size_t n = 2 + trial.next_below(7);
      auto gates = random_clifford_circuit(n, 1 + trial.next_below(40), trial);
      StabilizerTableau t(n);
      apply_circuit(t, gates);
      DenseState d(n);
      apply_circuit(d, gates);
      if (fidelity(dense_from_tableau(t), d) <= 1.0 - 1e-10) ok = false;
      for (int probe = 0; probe < 8 && ok; ++probe) {
        PauliString obs(n);
        for (std::size_t q = 0; q < n; ++q) obs.set_op(q, ops[trial.next_below(4)]);
        if (obs.is_identity_ops()) continue;
        double pt = (1.0 + t.expectation(obs)) / 2.0;
        if (opt.inject_bug && c == opt.circuits / 2) pt = 1.0 - pt + 0.25;  // self-test
        double pd = (1.0 + d.expectation(obs)) / 2.0;
        if (std::abs(pt - pd) >= 1e-10) ok = false;
      }
    }
    report("tableau outcome probabilities match the dense oracle", ok);
  }

  // Graph states against their dense construction.
  {
    bool ok = true;
    for (std::size_t cols = 2; cols <= 5 && ok; ++cols) {
      ProtocolGraph g = build_graph(make_grid_spec(2, cols, cols - 1));
      DenseState direct = DenseState::plus_state(g.num_vertices());
      for (auto [a, b] : g.edges()) direct.apply_cz(a, b);
      ok = fidelity(dense_from_tableau(graph_state(g)), direct) > 1.0 - 1e-10;
    }
    report("graph states equal their dense construction", ok);
  }

  // G_u orthogonality sample.
  {
    ProtocolGraph g = build_graph(make_grid_spec(2, 4, 3));
    bool ok = true;
    for (int pair = 0; pair < 50 && ok; ++pair) {
      RandomStream trial = rng.split(1000 + pair);
      BitVec u(g.num_vertices()), v(g.num_vertices());
      for (std::size_t q = 0; q < g.num_vertices(); ++q) {
        u.set(q, trial.next_bool());
        v.set(q, trial.next_bool());
      }
      if (u == v) v.flip(0);
      ok = std::abs(dense_from_tableau(gu_state(g, u)).inner(
               dense_from_tableau(gu_state(g, v)))) < 1e-10;
    }
    report("G_u basis states are orthogonal", ok);
  }

  // Trace-distance bound suite on randomized near-honest states.
  {
    ProtocolGraph g = build_graph(make_grid_spec(2, 4, 3));
    CorrectableSet gamma = build_correctable_set(g, 1);
    // Weight-2 flips on each V1 color class push both syndromes out of Omega.
    StabilizerTableau bad_t = graph_state(g, Subgraph::Tested);
    for (std::size_t k = 0; k < 2; ++k) {
      bad_t.apply_z(g.v1_black()[k % g.v1_black().size()]);
      bad_t.apply_z(g.v1_white()[k % g.v1_white().size()]);
    }
    DenseState honest = dense_from_tableau(graph_state(g, Subgraph::Tested));
    DenseState bad = dense_from_tableau(bad_t);

    bool ok = true;
    for (int trial_i = 0; trial_i < opt.bound_states && ok; ++trial_i) {
      RandomStream trial = rng.split(2000 + trial_i);
      double m_bad = trial.next_double() / 64.0;
      std::vector<std::complex<double>> amps(honest.dim());
      double nrm = 0.0;
      for (uint64_t i = 0; i < honest.dim(); ++i) {
        amps[i] = std::sqrt(1.0 - m_bad) * honest.amp(i) + std::sqrt(m_bad) * bad.amp(i);
        nrm += std::norm(amps[i]);
      }
      for (auto& a : amps) a /= std::sqrt(nrm);
      DenseState psi = DenseState::from_amplitudes(g.num_vertices(), std::move(amps));
      TraceDistanceBoundReport rep = verify_trace_distance_bound(psi, g, gamma);
      if (!rep.epsilon_in_range) continue;
      ok = rep.holds && rep.yy >= 1.0 - 2.0 * rep.epsilon - 1e-9;
    }
    report("trace-distance bound holds on randomized states", ok);
  }

  // Joint vs single-qubit measurement of the random stabilizer product.
  {
    ProtocolGraph g = build_graph(make_grid_spec(2, 4, 3));
    BitVec u(g.num_vertices());
    u.set(g.v1()[1], true);
    uint64_t pass_single = 0, pass_joint = 0;
    const uint64_t shots = 10000;
    for (uint64_t i = 0; i < shots; ++i) {
      RandomStream t1 = rng.split(3000 + 2 * i);
      RandomStream t2 = rng.split(3000 + 2 * i + 1);
      ReceivedState s1 = gu_state(g, u);
      pass_single += strict_stabilizer_test(s1, g, t1);
      StabilizerTableau s2 = gu_state(g, u);
      pass_joint += strict_stabilizer_test_joint(s2, g, t2);
    }
    double stat = chi_square_two_proportions(pass_single, shots - pass_single, pass_joint,
                                             shots - pass_joint);
    report("joint and single-qubit stabilizer tests agree (chi-square)",
           stat < kChiSquare1Dof001);
  }

  // Conjugation identity: the connecting layer maps inner generators onto
  // the tested-subgraph generators.
  {
    ProtocolGraph g = build_graph(make_grid_spec(3, 4, 2));
    bool ok = true;
    for (std::size_t j : g.v1()) {
      PauliString inner = g.stabilizer_generator(j, Subgraph::Inner);
      for (auto [a, b] : g.e_connect()) inner.conj_cz(a, b);
      ok = ok && inner == g.stabilizer_generator(j, Subgraph::Tested);
    }
    report("connecting layer conjugates inner generators onto tested ones", ok);
  }

  std::cout << (failures ? "oracle-check: FAILED\n" : "oracle-check: all checks passed\n");
  return failures ? 1 : 0;
}

struct AmplifyOptions {
  std::string config_path;
  std::string out_path;
  uint64_t seed = kDefaultSeed;
  bool seed_set = false;
  uint64_t experiments = 200;
  int r = 15;
  bool correlated = false;
};

int cmd_amplify(const AmplifyOptions& opt) {
  json cfg = load_config(opt.config_path);
  if (!cfg.contains("pattern")) throw ConfigError("amplify config needs a \"pattern\"");
  ProtocolFixture fixture = make_computation_fixture(cfg["pattern"].value("wires", 1),
                                                     gates_from_json(cfg["pattern"].at("gates")));
  ProtocolParams params = params_from_json(cfg.contains("params") ? cfg["params"] : json());
  params.r = opt.r;
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  NoiseChannel channel = channel_from_json(cfg.contains("channel") ? cfg["channel"] : json(),
                                           fixture.graph.num_vertices());
  CorrectableSet gamma = build_correctable_set(fixture.graph, cfg.value("weight_bound", 1));
  MerlinStrategy strategy = MerlinStrategy::honest(MerlinStrategy::Witness::ComputationInput);
  uint64_t seed = opt.seed_set ? opt.seed : cfg.value("seed", kDefaultSeed);

  AmplifyReport rep = amplify(strategy, channel, fixture.graph, gamma, params, &fixture,
                              opt.experiments, opt.correlated, seed);
  std::cout << "amplification: r=" << params.r << " experiments=" << rep.experiments
            << (opt.correlated ? " [correlated noise]" : "") << " seed=" << seed << '\n'
            << std::setprecision(6) << "  per-run accept     = " << rep.per_run.rate() << '\n'
            << "  majority rejected  = " << rep.rejected << " (" << rep.reject_rate() << ")\n"
            << "  chernoff reference = " << rep.chernoff_reference << '\n'
            << "  binomial reference = " << rep.binomial_reference << '\n';

  json out{{"schema", 1},
           {"command", "amplify"},
           {"seed", seed},
           {"r", params.r},
           {"experiments", rep.experiments},
           {"correlated", opt.correlated},
           {"results",
            {{"per_run", estimate_to_json(rep.per_run)},
             {"rejected", rep.rejected},
             {"reject_rate", rep.reject_rate()},
             {"chernoff_reference", rep.chernoff_reference},
             {"binomial_reference", rep.binomial_reference}}},
           {"meta", {{"timestamp", iso_timestamp()}}}};
  write_output(out, opt.out_path);
  return 0;
}

struct Theorem1Options {
  std::string code = "five-qubit";
  double p = 0.01;
  uint64_t shots = 10000;
  uint64_t seed = kDefaultSeed;
  std::string out_path;
};

int cmd_theorem1(const Theorem1Options& opt) {
  StabilizerCode code;
  NoiseChannel channel = NoiseChannel::none(1);
  if (opt.code == "five-qubit") {
    code = five_qubit_code();
    channel = NoiseChannel::depolarizing(code.n, opt.p);
  } else if (opt.code == "repetition-z") {
    code = phase_flip_repetition_code();
    channel = NoiseChannel::z_only(code.n, opt.p);
  } else {
    throw ConfigError("unsupported code '" + opt.code +
                      "' (use five-qubit or repetition-z)");
  }
  RandomStream rng(opt.seed);
  DenseState witness = DenseState::random_state(1, rng);
  CodeDemoReport rep = code_correction_demo(code, channel, witness, opt.shots, opt.seed + 1);

  std::cout << "encode/correct demo: code=" << rep.code_name << " p=" << opt.p
            << " shots=" << rep.shots << " seed=" << opt.seed << '\n'
            << std::setprecision(6) << "  weight-1 errors corrected exactly: "
            << (rep.weight1_all_corrected ? "yes" : "NO") << '\n'
            << "  mean decoded fidelity = " << rep.mean_fidelity << '\n'
            << "  infidelity            = " << rep.infidelity() << '\n'
            << "  weight>=2 error mass  = " << rep.weight2_mass << '\n'
            << "  verifier acceptance   = " << rep.acceptance.rate() << '\n'
            << "  trace distance (mean state vs ideal) = " << rep.trace_distance_mean << '\n';

  json out{{"schema", 1},
           {"command", "theorem1"},
           {"code", rep.code_name},
           {"p", opt.p},
           {"shots", rep.shots},
           {"seed", opt.seed},
           {"results",
            {{"weight1_all_corrected", rep.weight1_all_corrected},
             {"mean_fidelity", rep.mean_fidelity},
             {"infidelity", rep.infidelity()},
             {"weight2_mass", rep.weight2_mass},
             {"acceptance", estimate_to_json(rep.acceptance)},
             {"trace_distance_mean", rep.trace_distance_mean}}},
           {"meta", {{"timestamp", iso_timestamp()}}}};
  write_output(out, opt.out_path);
  return rep.weight1_all_corrected ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmalab: graph-state verification laboratory for QMA over a noisy channel"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand(
      "simulate",
      "Monte Carlo of the three-branch protocol (computation + two relaxed "
      "stabilizer tests); reports p_acc, p_comp, p_test1, p_test2 with Wilson intervals");
  simulate->add_option("--config", sim.config_path, "JSON run config")->required();
  simulate->add_option("--seed", sim.seed, "override the config seed")
      ->each([&sim](const std::string&) { sim.seed_set = true; });
  simulate->add_option("--shots", sim.shots, "override the config shot count");
  simulate->add_option("--workers", sim.workers, "worker threads (counts merge deterministically)");
  simulate->add_flag("--strict-test", sim.strict,
                     "replace both relaxed tests with the strict stabilizer test");
  simulate->add_option("--out", sim.out_path, "write results as JSON");
  simulate->add_option("--trace", sim.trace_path,
                       "write one JSON line per relaxed-test shot (syndrome trace; single worker)");

  GapOptions gap;
  auto* gapcmd = app.add_subcommand(
      "gap", "Analytic completeness/soundness bounds alpha, beta1-3, Delta1-3, the "
             "optimizing branch probability q*, and the strict-test protocol's non-gap");
  gapcmd->add_option("--config", gap.config_path, "JSON run config (params block)");
  gapcmd->add_option("--epsilon", gap.epsilon, "test slack epsilon in (0, 1/2]")
      ->each([&gap](const std::string&) { gap.epsilon_set = true; });
  gapcmd->add_option("--s", gap.s, "computation-failure exponent")
      ->each([&gap](const std::string&) { gap.s_set = true; });
  gapcmd->add_option("--t", gap.t, "error-reduction exponent (a = 1-2^-t, b = 2^-t)")
      ->each([&gap](const std::string&) { gap.t_set = true; });
  gapcmd->add_option("--delta", gap.delta, "channel badness delta")
      ->each([&gap](const std::string&) { gap.delta_set = true; });
  gapcmd->add_option("--out", gap.out_path, "write the report as JSON");
  gapcmd->add_option("--sweep", gap.sweep_path,
                     "write a CSV sweep of (epsilon, q*, Delta3(q*))");

  OracleCheckOptions oc;
  auto* occmd = app.add_subcommand(
      "oracle-check", "Cross-validate the tableau engine, graph states, the G_u basis and "
                      "the trace-distance bound against the dense oracle");
  occmd->add_option("--seed", oc.seed, "seed");
  occmd->add_option("--circuits", oc.circuits, "number of random circuits");
  occmd->add_option("--states", oc.bound_states, "number of bound-suite states");
  occmd->add_flag("--inject-bug", oc.inject_bug,
                  "deliberately corrupt one tableau probability (checker self-test)");

  AmplifyOptions amp;
  auto* ampcmd = app.add_subcommand(
      "amplify", "Majority vote over r parallel protocol instances, with an optional "
                 "shared correctable error across instances");
  ampcmd->add_option("--config", amp.config_path, "JSON run config (needs a pattern)")
      ->required();
  ampcmd->add_option("--seed", amp.seed, "override the config seed")
      ->each([&amp](const std::string&) { amp.seed_set = true; });
  ampcmd->add_option("--experiments", amp.experiments, "number of majority-vote experiments");
  ampcmd->add_option("--r", amp.r, "instances per experiment (odd)");
  ampcmd->add_flag("--correlated", amp.correlated, "share a correctable error across instances");
  ampcmd->add_option("--out", amp.out_path, "write results as JSON");

  Theorem1Options th;
  auto* thcmd = app.add_subcommand(
      "theorem1", "Encode -> noisy channel -> syndrome-correct -> decode demo on a small "
                  "stabilizer code, with the exact weight>=2 error budget");
  thcmd->add_option("--code", th.code, "five-qubit or repetition-z");
  thcmd->add_option("--p", th.p, "per-qubit error probability");
  thcmd->add_option("--shots", th.shots, "Monte Carlo shots");
  thcmd->add_option("--seed", th.seed, "seed");
  thcmd->add_option("--out", th.out_path, "write results as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (gapcmd->parsed()) return cmd_gap(gap);
    if (occmd->parsed()) return cmd_oracle_check(oc);
    if (ampcmd->parsed()) return cmd_amplify(amp);
    if (thcmd->parsed()) return cmd_theorem1(th);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
