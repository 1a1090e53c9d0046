#include <doctest.h>

#include <cmath>

#include "qmalab/graph_basis.hpp"
#include "qmalab/verify.hpp"

using namespace qmalab;

namespace {

ProtocolGraph fixture_graph() { return build_graph(make_grid_spec(2, 3, 2)); }

// W(|G''_u> tensor |xi>) with xi the induced V2 subgraph state; u over all of
// V1 in canonical order.
StabilizerTableau deviated_state(const ProtocolGraph& g, const BitVec& gamma_v1) {
  BitVec u(g.num_vertices());
  for (std::size_t k = 0; k < g.v1().size(); ++k) {
    if (gamma_v1.get(k)) u.set(g.v1()[k], true);
  }
  return gu_state(g, u);
}

}  // namespace

TEST_CASE("strict test always passes honest states") {
  ProtocolGraph g = fixture_graph();
  RandomStream rng(11);
  for (int i = 0; i < 10000; ++i) {
    ReceivedState state = graph_state(g);
    RandomStream trial = rng.split(i);
    CHECK(strict_stabilizer_test(state, g, trial));
  }
}

TEST_CASE("deviated states pass the strict test with probability exactly 1/2") {
  ProtocolGraph g = fixture_graph();
  BitVec gamma_v1(g.v1().size());
  gamma_v1.set(2, true);

  // Exact oracle value via the dense projector route.
  DenseState dense = dense_from_tableau(deviated_state(g, gamma_v1));
  CHECK(exact_strict_test_probability(dense, g) == doctest::Approx(0.5).epsilon(1e-12));

  RandomStream rng(12);
  int passes = 0;
  const int shots = 10000;
  for (int i = 0; i < shots; ++i) {
    ReceivedState state = deviated_state(g, gamma_v1);
    RandomStream trial = rng.split(i);
    passes += strict_stabilizer_test(state, g, trial);
  }
  ProportionEstimate est{static_cast<uint64_t>(passes), shots};
  CHECK(std::abs(est.mean() - 0.5) < 0.015);
}

TEST_CASE("strict test rate never falls below 1/2 minus noise") {
  ProtocolGraph g = fixture_graph();
  RandomStream rng(13);
  // Arbitrary stabilizer strategies still clear the 1/2 floor.
  for (int strategy = 0; strategy < 4; ++strategy) {
    int passes = 0;
    const int shots = 2000;
    for (int i = 0; i < shots; ++i) {
      RandomStream trial = rng.split(strategy * 100000 + i);
      StabilizerTableau t(g.num_vertices());
      apply_circuit(t, random_clifford_circuit(g.num_vertices(), 24, trial));
      ReceivedState state = std::move(t);
      passes += strict_stabilizer_test(state, g, trial);
    }
    ProportionEstimate est{static_cast<uint64_t>(passes), shots};
    CHECK(est.mean() >= 0.5 - est.three_sigma());
  }
}

TEST_CASE("strict test on dense states matches the exact projector value") {
  ProtocolGraph g = fixture_graph();
  RandomStream rng(271);
  for (int fixture = 0; fixture < 3; ++fixture) {
    RandomStream state_rng = rng.split(900 + fixture);
    DenseState psi = DenseState::random_state(g.num_vertices(), state_rng);
    double exact = exact_strict_test_probability(psi, g);
    uint64_t passes = 0;
    const uint64_t shots = 4000;
    for (uint64_t i = 0; i < shots; ++i) {
      RandomStream trial = rng.split(fixture * shots + i);
      ReceivedState state = psi;
      passes += strict_stabilizer_test(state, g, trial);
    }
    ProportionEstimate est{passes, shots};
    CHECK(std::abs(est.mean() - exact) <= est.three_sigma());
    CHECK(exact >= 0.5 - 1e-12);  // the analytic floor
  }
}

TEST_CASE("joint and single-qubit strict tests are distribution-identical (chi-square)") {
  ProtocolGraph g = fixture_graph();
  BitVec gamma_v1(g.v1().size());
  gamma_v1.set(0, true);
  RandomStream rng(14);
  uint64_t pass_single = 0, pass_joint = 0;
  const uint64_t shots = 10000;
  for (uint64_t i = 0; i < shots; ++i) {
    RandomStream t1 = rng.split(2 * i);
    RandomStream t2 = rng.split(2 * i + 1);
    ReceivedState s1 = deviated_state(g, gamma_v1);
    pass_single += strict_stabilizer_test(s1, g, t1);
    StabilizerTableau s2 = deviated_state(g, gamma_v1);
    pass_joint += strict_stabilizer_test_joint(s2, g, t2);
  }
  double stat = chi_square_two_proportions(pass_single, shots - pass_single, pass_joint,
                                           shots - pass_joint);
  CHECK(stat < kChiSquare1Dof001);
}

TEST_CASE("relaxed tests on the honest state") {
  ProtocolGraph g = fixture_graph();
  CorrectableSet gamma = build_correctable_set(g, 1);
  RandomStream rng(15);
  for (int i = 0; i < 500; ++i) {
    RandomStream trial = rng.split(i);
    ReceivedState s1 = graph_state(g);
    SyndromeRecord r1 = relaxed_test_1(s1, g, gamma, trial);
    CHECK(r1.pass);
    CHECK(!r1.syndrome.any());
    ReceivedState s2 = graph_state(g);
    SyndromeRecord r2 = relaxed_test_2(s2, g, gamma, trial);
    CHECK(r2.pass);
    CHECK(!r2.syndrome.any());
  }
}

TEST_CASE("syndrome equals the V1 restriction of a Z-error pattern") {
  ProtocolGraph g = fixture_graph();
  CorrectableSet gamma = build_correctable_set(g, 2);
  RandomStream rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    RandomStream t = rng.split(trial);
    BitVec gamma_v1(g.v1().size());
    for (std::size_t k = 0; k < gamma_v1.size(); ++k) gamma_v1.set(k, t.next_bool());
    BitVec u_full(g.num_vertices());
    for (std::size_t k = 0; k < g.v1().size(); ++k) {
      if (gamma_v1.get(k)) u_full.set(g.v1()[k], true);
    }
    ReceivedState s1 = deviated_state(g, gamma_v1);
    SyndromeRecord r1 = relaxed_test_1(s1, g, gamma, t);
    CHECK(r1.syndrome == u_full.select(g.v1_black()));

    ReceivedState s2 = deviated_state(g, gamma_v1);
    SyndromeRecord r2 = relaxed_test_2(s2, g, gamma, t);
    CHECK(r2.syndrome == u_full.select(g.v1_white()));
  }
}

TEST_CASE("weight w+1 concentrated on one color class fails deterministically") {
  ProtocolGraph g = fixture_graph();
  CorrectableSet gamma = build_correctable_set(g, 1);
  REQUIRE(g.v1_black().size() >= 2);
  BitVec gamma_v1(g.v1().size());
  // Two flips on black vertices of V1: syndrome weight 2 > w = 1.
  int placed = 0;
  for (std::size_t k = 0; k < g.v1().size() && placed < 2; ++k) {
    if (g.color(g.v1()[k]) == Color::Black) {
      gamma_v1.set(k, true);
      ++placed;
    }
  }
  RandomStream rng(17);
  for (int i = 0; i < 200; ++i) {
    RandomStream trial = rng.split(i);
    ReceivedState s = deviated_state(g, gamma_v1);
    CHECK(!relaxed_test_1(s, g, gamma, trial).pass);
  }
}

TEST_CASE("all-ones pattern on the white class fails test 2") {
  ProtocolGraph g = fixture_graph();
  CorrectableSet gamma = build_correctable_set(g, 1);
  BitVec gamma_v1(g.v1().size());
  for (std::size_t k = 0; k < g.v1().size(); ++k) {
    if (g.color(g.v1()[k]) == Color::White) gamma_v1.set(k, true);
  }
  REQUIRE(g.v1_white().size() >= 2);
  RandomStream rng(23);
  for (int i = 0; i < 200; ++i) {
    RandomStream trial = rng.split(i);
    ReceivedState s = deviated_state(g, gamma_v1);
    CHECK(!relaxed_test_2(s, g, gamma, trial).pass);
  }
}

TEST_CASE("single white-vertex Z error passes test 2 with its own syndrome") {
  ProtocolGraph g = fixture_graph();
  CorrectableSet gamma = build_correctable_set(g, 1);
  std::size_t white_pos = 0;
  for (std::size_t k = 0; k < g.v1().size(); ++k) {
    if (g.color(g.v1()[k]) == Color::White) {
      white_pos = k;
      break;
    }
  }
  BitVec gamma_v1(g.v1().size());
  gamma_v1.set(white_pos, true);
  RandomStream rng(18);
  for (int i = 0; i < 200; ++i) {
    RandomStream trial = rng.split(i);
    ReceivedState s = deviated_state(g, gamma_v1);
    SyndromeRecord rec = relaxed_test_2(s, g, gamma, trial);
    CHECK(rec.pass);
    CHECK(rec.syndrome.popcount() == 1);
  }
}

TEST_CASE("z-only noise inside Gamma always passes both relaxed tests") {
  ProtocolGraph g = fixture_graph();
  CorrectableSet gamma = build_correctable_set(g, 1);
  RandomStream rng(19);
  for (int i = 0; i < 1000; ++i) {
    RandomStream trial = rng.split(i);
    // Sample u from Gamma (uniform over members).
    const BitVec& u = gamma.members[trial.next_below(gamma.members.size())];
    StabilizerTableau t = gu_state(g, u);
    ReceivedState s1 = t;
    CHECK(relaxed_test_1(s1, g, gamma, trial).pass);
    ReceivedState s2 = std::move(t);
    CHECK(relaxed_test_2(s2, g, gamma, trial).pass);
  }
}

TEST_CASE("relaxed tests run identically on the dense oracle") {
  ProtocolGraph g = fixture_graph();
  CorrectableSet gamma = build_correctable_set(g, 1);
  BitVec gamma_v1(g.v1().size());
  gamma_v1.set(1, true);
  RandomStream rng(20);
  for (int i = 0; i < 100; ++i) {
    RandomStream trial = rng.split(i);
    ReceivedState dense = dense_from_tableau(deviated_state(g, gamma_v1));
    SyndromeRecord rec = relaxed_test_1(dense, g, gamma, trial);
    BitVec u_full(g.num_vertices());
    u_full.set(g.v1()[1], true);
    CHECK(rec.syndrome == u_full.select(g.v1_black()));
  }
}

TEST_CASE("relaxed tests work on a non-grid bipartite graph") {
  // A small tree: black hub 0 in V1 with white leaves, one leaf in V2 and a
  // second black branch hanging off a leaf.
  GraphSpec spec;
  spec.vertices = {{0, Color::Black, Region::Tested}, {1, Color::White, Region::Tested},
                   {2, Color::White, Region::Tested}, {3, Color::White, Region::Witness},
                   {4, Color::Black, Region::Tested}, {5, Color::White, Region::Witness}};
  spec.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {4, 5}};
  ProtocolGraph g = build_graph(spec);
  CHECK(g.v_connect().size() == 2);
  CorrectableSet gamma = build_correctable_set(g, 1);

  RandomStream rng(606);
  for (int i = 0; i < 200; ++i) {
    RandomStream trial = rng.split(i);
    ReceivedState honest = graph_state(g);
    CHECK(relaxed_test_1(honest, g, gamma, trial).pass);
    ReceivedState honest2 = graph_state(g);
    CHECK(relaxed_test_2(honest2, g, gamma, trial).pass);

    // A single Z on the hub shows up as exactly its own syndrome bit.
    BitVec u(g.num_vertices());
    u.set(g.qubit_of(0), true);
    ReceivedState hit = gu_state(g, u);
    SyndromeRecord rec = relaxed_test_1(hit, g, gamma, trial);
    CHECK(rec.pass);
    CHECK(rec.syndrome == u.select(g.v1_black()));
    CHECK(rec.syndrome.popcount() == 1);
  }
}

TEST_CASE("estimate_pass_probability") {
  ProtocolGraph g = fixture_graph();
  CorrectableSet gamma = build_correctable_set(g, 1);
  RandomStream rng(21);

  SUBCASE("deterministic pass source") {
    StateSource source = [&g](RandomStream&) -> ReceivedState { return graph_state(g); };
    PassEstimate est = estimate_pass_probability(source, TestKind::Relaxed1, g, gamma, 500, rng);
    CHECK(est.rate() == 1.0);
    CHECK(est.wilson95().hi == doctest::Approx(1.0));
  }
  SUBCASE("deviated source under the strict test straddles 1/2") {
    BitVec gamma_v1(g.v1().size());
    gamma_v1.set(0, true);
    StateSource source = [&](RandomStream&) -> ReceivedState {
      return deviated_state(g, gamma_v1);
    };
    PassEstimate est =
        estimate_pass_probability(source, TestKind::Strict, g, gamma, 10000, rng);
    CHECK(est.wilson95().contains(0.5));
  }
  SUBCASE("z-only channel on the honest state matches the binomial tail") {
    double pz = 0.02;
    NoiseChannel ch = NoiseChannel::z_only(g.num_vertices(), pz);
    StateSource source = [&](RandomStream& r) -> ReceivedState {
      StabilizerTableau t = graph_state(g);
      PauliString err = ch.sample(r);
      for (std::size_t q = 0; q < g.num_vertices(); ++q) {
        if (err.z_bit(q)) t.apply_z(q);
      }
      return t;
    };
    PassEstimate est =
        estimate_pass_probability(source, TestKind::Relaxed1, g, gamma, 20000, rng);
    // Pass iff the pattern restricted to V1 black has weight <= 1.
    unsigned n1b = static_cast<unsigned>(g.v1_black().size());
    double formula = binomial_cdf(n1b, 1, pz);
    CHECK(est.wilson95().contains(formula));
    double delta_full = z_only_delta_formula(g.num_vertices(), pz, 1);
    CHECK(est.rate() >= 1.0 - delta_full - est.three_sigma());
  }
}

TEST_CASE("syndrome records serialize to JSON lines") {
  ProtocolGraph g = fixture_graph();
  CorrectableSet gamma = build_correctable_set(g, 1);
  RandomStream rng(22);
  ReceivedState s = graph_state(g);
  SyndromeRecord rec = relaxed_test_1(s, g, gamma, rng);
  std::string line = rec.to_json_line();
  CHECK(line.find("\"branch\":1") != std::string::npos);
  CHECK(line.find("\"pass\":true") != std::string::npos);
  CHECK(line.find("\"syndrome\":\"") != std::string::npos);
  CHECK(line.find('\n') == std::string::npos);
}
