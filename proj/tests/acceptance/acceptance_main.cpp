// Acceptance suite: end-to-end checks of the protocol laboratory, one line of
// output per criterion. Exit status 0 iff everything holds.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qmalab/codes.hpp"
#include "qmalab/gap.hpp"
#include "qmalab/graph_basis.hpp"
#include "qmalab/mbqc.hpp"
#include "qmalab/protocol.hpp"
#include "qmalab/verify.hpp"

using namespace qmalab;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define REQUIRE_TRUE(cond, msg)                                              \
  do {                                                                       \
    if (!(cond)) {                                                           \
      std::ostringstream oss_;                                               \
      oss_ << msg;                                                           \
      throw Failure(oss_.str());                                             \
    }                                                                        \
  } while (0)

std::vector<LogicalGate> accept_circuit() {
  return {LogicalGate::h(0), LogicalGate::z(0), LogicalGate::h(0)};
}

std::vector<LogicalGate> t_circuit() {
  return {LogicalGate::h(0), LogicalGate::t(0), LogicalGate::t(0), LogicalGate::h(0)};
}

// --- criterion 1: strict test kills deviated states at exactly 1/2 ---------
void criterion_strict_test_half() {
  ProtocolGraph g = build_graph(make_grid_spec(3, 4, 3));  // N = 12, N1 = 9
  REQUIRE_TRUE(g.num_vertices() <= 12, "fixture too large");
  BitVec gamma_v1(g.v1().size());
  gamma_v1.set(2, true);

  BitVec u_full(g.num_vertices());
  u_full.set(g.v1()[2], true);

  DenseState dense = dense_from_tableau(gu_state(g, u_full));
  double exact = exact_strict_test_probability(dense, g);
  REQUIRE_TRUE(std::abs(exact - 0.5) < 1e-10,
               "exact oracle value " << exact << " is not 1/2");

  RandomStream rng(1001);
  uint64_t passes = 0;
  const uint64_t shots = 10000;
  for (uint64_t i = 0; i < shots; ++i) {
    RandomStream trial = rng.split(i);
    ReceivedState state = gu_state(g, u_full);
    passes += strict_stabilizer_test(state, g, trial);
  }
  double rate = static_cast<double>(passes) / shots;
  REQUIRE_TRUE(rate >= 0.485 && rate <= 0.515,
               "empirical strict-test rate " << rate << " outside [0.485, 0.515]");
}

// --- criterion 2: gap analysis reproduces the closed-form bound ------------
void criterion_gap_bound() {
  ProtocolParams p;
  p.epsilon = 1.0 / 64.0;
  p.s = 3;
  p.t = 4;
  p.delta = 0.0;
  GapReport rep = gap_analysis(p, 1e-5);
  REQUIRE_TRUE(rep.delta3 >= 25.0 / 8256.0 - 1e-15,
               "Delta3(q*) = " << rep.delta3 << " below 25/8256 = " << 25.0 / 8256.0);
  REQUIRE_TRUE(rep.equalize_residual <= 1e-12,
               "Delta1(q*) != Delta3(q*), residual " << rep.equalize_residual);
  REQUIRE_TRUE(std::abs(rep.grid_q - rep.q_star) <= 1e-5 + 1e-12,
               "grid argmax " << rep.grid_q << " vs q* " << rep.q_star);
}

// --- criterion 3: the strict-test protocol has no positive gap -------------
void criterion_failed_protocol() {
  for (double eps : {1.0 / 64.0, 0.1, 0.25, 0.5}) {
    for (int s : {2, 3, 8}) {
      for (int t : {4, 10}) {
        ProtocolParams p;
        p.epsilon = eps;
        p.s = s;
        p.t = t;
        double max_gap = -1.0;
        for (double q = 0.0; q <= 1.0 + 1e-12; q += 1e-3) {
          max_gap = std::max(max_gap, failed_protocol_gap(p, q));
        }
        REQUIRE_TRUE(max_gap <= 0.0 + 1e-12,
                     "positive gap " << max_gap << " at eps=" << eps << " s=" << s
                                     << " t=" << t);
      }
    }
  }
}

// --- criterion 4: trace-distance bound on 100 randomized near-honest states -
void criterion_bound_suite() {
  ProtocolGraph g = build_graph(make_grid_spec(2, 5, 4));  // N = 10
  CorrectableSet gamma = build_correctable_set(g, 1);
  std::size_t n1b = g.v1_black().size(), n1w = g.v1_white().size();
  RandomStream rng(4004);

  auto basis_state = [&g](const BitVec& u, const BitVec& v, uint64_t t) {
    DenseState s(g.num_vertices());
    for (std::size_t q : g.v1()) s.apply_h(q);
    for (std::size_t k = 0; k < g.v2().size(); ++k) {
      if ((t >> k) & 1) s.apply_x(g.v2()[k]);
    }
    for (auto [a, b] : g.e1()) s.apply_cz(a, b);
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (u.get(k)) s.apply_z(g.v1_black()[k]);
    }
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v.get(k)) s.apply_z(g.v1_white()[k]);
    }
    for (auto [a, b] : g.e_connect()) s.apply_cz(a, b);
    return s;
  };

  auto weight2 = [&rng](std::size_t len) {
    BitVec b(len);
    std::size_t first = rng.next_below(len);
    std::size_t second = rng.next_below(len - 1);
    if (second >= first) ++second;
    b.set(first, true);
    b.set(second, true);
    return b;
  };

  const double eps_budget = 1.0 / 64.0;
  int states_checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    // Mass split: honest component plus YN / NY / NN contamination, with
    // NY + NN <= eps and YN + NN <= eps by construction.
    double m_nn = rng.next_double() * eps_budget / 2.0;
    double m_yn = rng.next_double() * (eps_budget - m_nn);
    double m_ny = rng.next_double() * (eps_budget - m_nn);
    double m_yy = 1.0 - m_yn - m_ny - m_nn;

    BitVec u_in(n1b), v_in(n1w);  // weight <= 1 restrictions stay inside
    u_in.set(rng.next_below(n1b), true);
    v_in.set(rng.next_below(n1w), true);
    BitVec u_out = weight2(n1b);
    BitVec v_out = weight2(n1w);

    DenseState yy = basis_state(BitVec(n1b), BitVec(n1w), 0);
    DenseState yn = basis_state(u_in, v_out, 1);
    DenseState ny = basis_state(u_out, v_in, 2);
    DenseState nn = basis_state(u_out, v_out, 3);

    auto phase = [&rng] {
      double a = rng.next_double() * 2.0 * M_PI;
      return std::complex<double>(std::cos(a), std::sin(a));
    };
    std::vector<std::complex<double>> amps(yy.dim());
    std::complex<double> cyy = std::sqrt(m_yy) * phase();
    std::complex<double> cyn = std::sqrt(m_yn) * phase();
    std::complex<double> cny = std::sqrt(m_ny) * phase();
    std::complex<double> cnn = std::sqrt(m_nn) * phase();
    for (uint64_t i = 0; i < yy.dim(); ++i) {
      amps[i] = cyy * yy.amp(i) + cyn * yn.amp(i) + cny * ny.amp(i) + cnn * nn.amp(i);
    }
    DenseState psi = DenseState::from_amplitudes(g.num_vertices(), std::move(amps));

    TraceDistanceBoundReport rep = verify_trace_distance_bound(psi, g, gamma);
    REQUIRE_TRUE(rep.p_test1_exact >= 1.0 - eps_budget - 1e-9,
                 "p_test1 " << rep.p_test1_exact << " below 1 - eps");
    REQUIRE_TRUE(rep.p_test2_exact >= 1.0 - eps_budget - 1e-9,
                 "p_test2 " << rep.p_test2_exact << " below 1 - eps");
    REQUIRE_TRUE(rep.trace_distance <= rep.bound + 1e-9,
                 "distance " << rep.trace_distance << " exceeds bound " << rep.bound);
    REQUIRE_TRUE(rep.yy >= 1.0 - 2.0 * rep.epsilon - 1e-9,
                 "YY " << rep.yy << " below 1 - 2 eps");
    ++states_checked;
  }
  REQUIRE_TRUE(states_checked >= 100, "only " << states_checked << " states checked");
}

// --- criterion 5: relaxed-test completeness under correctable z noise ------
void criterion_relaxed_completeness() {
  ProtocolGraph g = build_graph(make_grid_spec(3, 4, 3));  // N = 12, V1 = 9
  CorrectableSet gamma = build_correctable_set(g, 1);
  double pz = 0.01;
  double mass_ok = 1.0 - z_only_delta_formula(g.num_vertices(), pz, 1);
  REQUIRE_TRUE(mass_ok >= 0.99, "weight-<=1 mass " << mass_ok << " below 0.99");

  NoiseChannel ch = NoiseChannel::z_only(g.num_vertices(), pz);
  StateSource source = [&](RandomStream& r) -> ReceivedState {
    StabilizerTableau t = graph_state(g);
    PauliString err = ch.sample(r);
    for (std::size_t q = 0; q < g.num_vertices(); ++q) {
      if (err.z_bit(q)) t.apply_z(q);
    }
    return t;
  };

  RandomStream rng(5005);
  const uint64_t shots = 10000;
  PassEstimate e1 = estimate_pass_probability(source, TestKind::Relaxed1, g, gamma, shots, rng);
  RandomStream rng2(5006);
  PassEstimate e2 = estimate_pass_probability(source, TestKind::Relaxed2, g, gamma, shots, rng2);

  unsigned n1b = static_cast<unsigned>(g.v1_black().size());
  unsigned n1w = static_cast<unsigned>(g.v1_white().size());
  double formula1 = binomial_cdf(n1b, 1, pz);
  double formula2 = binomial_cdf(n1w, 1, pz);
  REQUIRE_TRUE(e1.rate() >= 0.99 - e1.three_sigma(),
               "test 1 rate " << e1.rate() << " below 0.99 - 3 sigma");
  REQUIRE_TRUE(e2.rate() >= 0.99 - e2.three_sigma(),
               "test 2 rate " << e2.rate() << " below 0.99 - 3 sigma");
  REQUIRE_TRUE(e1.wilson95().contains(formula1),
               "test 1 CI misses the closed form " << formula1);
  REQUIRE_TRUE(e2.wilson95().contains(formula2),
               "test 2 CI misses the closed form " << formula2);
}

// --- criterion 6: the frame surrogate corrects exactly on Gamma ------------
void criterion_frame_surrogate() {
  MeasurementPattern p = compile_small_circuit(1, t_circuit());
  DenseState input(1);
  DenseState clean_resource = build_resource_state(p, input);
  std::vector<double> clean = exact_output_distribution(clean_resource, p);

  // All weight <= 1 patterns: framed TVD is 0 analytically and small
  // empirically.
  RandomStream rng(6006);
  const uint64_t shots = 10000;
  for (std::size_t v = 0; v <= p.num_vertices; ++v) {
    PauliFrame frame(p.num_vertices);
    DenseState resource = clean_resource;
    if (v < p.num_vertices) {
      frame.set(v, true);
      resource.apply_z(v);
    }
    std::vector<double> framed = exact_output_distribution(resource, p, frame);
    REQUIRE_TRUE(total_variation_distance(framed, clean) < 1e-9,
                 "analytic TVD nonzero for framed error at vertex " << v);

    uint64_t ones = 0;
    for (uint64_t i = 0; i < shots; ++i) {
      RandomStream trial = rng.split(v * shots + i);
      PatternRun run = run_pattern(resource, p, trial, frame);
      ones += run.output_state.measure_qubit_z(0, trial);
    }
    double empirical = static_cast<double>(ones) / shots;
    double sigma = std::sqrt(0.25 / shots);
    REQUIRE_TRUE(std::abs(empirical - (1.0 - clean[0])) <= 3.0 * sigma + 1e-9,
                 "framed empirical rate off by more than 3 sigma at vertex " << v);
  }

  // A weight-2 adversarial pattern, unframed, on a T circuit: the error flips
  // exactly one of the two T rotations and the output distribution moves by
  // more than 0.1.
  DenseState skewed_resource = clean_resource;
  skewed_resource.apply_z(p.order[0]);
  skewed_resource.apply_z(p.order[2]);
  std::vector<double> skewed = exact_output_distribution(skewed_resource, p);
  double tvd = total_variation_distance(skewed, clean);
  REQUIRE_TRUE(tvd > 0.1, "unframed weight-2 TVD " << tvd << " not above 0.1");
}

// --- criterion 7: tableau vs dense oracle on random Clifford circuits ------
void criterion_tableau_oracle() {
  RandomStream rng(7007);
  const char ops[] = {'I', 'X', 'Y', 'Z'};
  for (int circuit = 0; circuit < 200; ++circuit) {
    RandomStream trial = rng.split(circuit);
    std::size_t n = 2 + trial.next_below(7);  // up to 8 qubits
    std::size_t depth = 1 + trial.next_below(40);
    auto gates = random_clifford_circuit(n, depth, trial);

    StabilizerTableau t(n);
    apply_circuit(t, gates);
    DenseState d(n);
    apply_circuit(d, gates);

    REQUIRE_TRUE(fidelity(dense_from_tableau(t), d) > 1.0 - 1e-10,
                 "state mismatch on circuit " << circuit);

    for (int probe = 0; probe < 10; ++probe) {
      PauliString obs(n);
      bool identity = true;
      for (std::size_t q = 0; q < n; ++q) {
        char op = ops[trial.next_below(4)];
        obs.set_op(q, op);
        identity &= op == 'I';
      }
      if (identity) continue;
      double p_plus_tableau = (1.0 + t.expectation(obs)) / 2.0;
      double p_plus_dense = (1.0 + d.expectation(obs)) / 2.0;
      REQUIRE_TRUE(std::abs(p_plus_tableau - p_plus_dense) < 1e-10,
                   "probability mismatch " << p_plus_tableau << " vs " << p_plus_dense
                                           << " on circuit " << circuit);
    }
  }
}

// --- criterion 8: the G_u family is orthonormal -----------------------------
void criterion_gu_orthonormal() {
  ProtocolGraph g = build_graph(make_grid_spec(2, 4, 3));  // N = 8
  RandomStream rng(8008);
  for (int pair = 0; pair < 100; ++pair) {
    RandomStream trial = rng.split(pair);
    BitVec u(g.num_vertices()), v(g.num_vertices());
    for (std::size_t q = 0; q < g.num_vertices(); ++q) {
      u.set(q, trial.next_bool());
      v.set(q, trial.next_bool());
    }
    if (u == v) v.flip(trial.next_below(g.num_vertices()));
    DenseState du = dense_from_tableau(gu_state(g, u));
    DenseState dv = dense_from_tableau(gu_state(g, v));
    REQUIRE_TRUE(std::abs(du.inner(dv)) < 1e-10, "nonzero overlap at pair " << pair);
    REQUIRE_TRUE(std::abs(du.inner(du).real() - 1.0) < 1e-10, "norm drift at pair " << pair);
  }
}

// --- criterion 9: majority-vote amplification --------------------------------
void criterion_amplification() {
  ProtocolFixture fx = make_computation_fixture(1, accept_circuit());
  CorrectableSet gamma = build_correctable_set(fx.graph, 1);
  ProtocolParams params;
  params.q = 0.5;
  params.epsilon = 1.0 / 64.0;
  params.r = 15;
  NoiseChannel ch = NoiseChannel::z_only(fx.graph.num_vertices(), 0.05);
  MerlinStrategy honest = MerlinStrategy::honest(MerlinStrategy::Witness::ComputationInput);

  const uint64_t experiments = 400;
  double reference = majority_reject_prob(15, 0.1);
  double slack = 3.0 * std::sqrt(std::max(reference * (1.0 - reference), 0.25 / experiments) /
                                 experiments);

  for (bool correlated : {false, true}) {
    AmplifyReport rep = amplify(honest, ch, fx.graph, gamma, params, &fx, experiments,
                                correlated, correlated ? 9009 : 9010);
    REQUIRE_TRUE(rep.per_run.rate() >= 0.9,
                 "per-run accept " << rep.per_run.rate() << " below 0.9 (correlated="
                                   << correlated << ")");
    REQUIRE_TRUE(rep.reject_rate() <= reference + slack,
                 "majority-reject " << rep.reject_rate() << " above reference " << reference
                                    << " + 3 sigma (correlated=" << correlated << ")");
  }
}

// --- criterion 10: five-qubit code demo -------------------------------------
void criterion_code_demo() {
  RandomStream rng(1010);
  DenseState witness = DenseState::random_state(1, rng);
  double p = 0.01;
  CodeDemoReport rep = code_correction_demo(five_qubit_code(),
                                            NoiseChannel::depolarizing(5, p), witness, 10000,
                                            101010);
  REQUIRE_TRUE(rep.weight1_all_corrected, "a weight-1 error was not corrected exactly");
  double sigma = 3.0 * std::sqrt(rep.weight2_mass * (1.0 - rep.weight2_mass) /
                                 static_cast<double>(rep.shots));
  REQUIRE_TRUE(rep.infidelity() <= rep.weight2_mass + sigma,
               "infidelity " << rep.infidelity() << " above weight>=2 mass "
                             << rep.weight2_mass << " + 3 sigma");
}

struct Criterion {
  const char* name;
  double time_budget_s;
  std::function<void()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"strict-test failure value is 1/2 on deviated states", 10.0, criterion_strict_test_half},
      {"gap analysis meets the closed-form lower bound", 1.0, criterion_gap_bound},
      {"strict-test protocol gap is never positive", 1.0, criterion_failed_protocol},
      {"trace-distance bound holds on 100 randomized states", 60.0, criterion_bound_suite},
      {"relaxed tests accept correctable z noise", 30.0, criterion_relaxed_completeness},
      {"pauli-frame surrogate corrects exactly on the correctable set", 60.0,
       criterion_frame_surrogate},
      {"tableau matches the dense oracle on 200 random circuits", 30.0,
       criterion_tableau_oracle},
      {"G_u family is orthonormal", 30.0, criterion_gu_orthonormal},
      {"majority-vote amplification beats the binomial reference", 60.0,
       criterion_amplification},
      {"five-qubit code corrects weight-1 errors and meets the weight-2 budget", 60.0,
       criterion_code_demo},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      criteria[i].run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty() && elapsed > criteria[i].time_budget_s) {
      std::ostringstream oss;
      oss << "runtime " << elapsed << "s exceeds budget " << criteria[i].time_budget_s << "s";
      error = oss.str();
    }
    bool ok = error.empty();
    failures += !ok;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << (i + 1) << ": "
              << criteria[i].name << " (" << std::fixed << std::setprecision(2) << elapsed
              << "s)";
    if (!ok) std::cout << " -- " << error;
    std::cout << std::endl;
  }
  if (failures != 0) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
