#include <doctest.h>

#include <cmath>
#include <set>

#include "qmalab/codes.hpp"
#include "qmalab/random.hpp"

using namespace qmalab;

namespace {
DenseState random_qubit(RandomStream& rng) { return DenseState::random_state(1, rng); }
}  // namespace

TEST_CASE("five-qubit code structure") {
  StabilizerCode code = five_qubit_code();
  for (std::size_t i = 0; i < code.generators.size(); ++i) {
    for (std::size_t j = i + 1; j < code.generators.size(); ++j) {
      CHECK(code.generators[i].commutes(code.generators[j]));
    }
    CHECK(code.generators[i].commutes(code.logical_x));
    CHECK(code.generators[i].commutes(code.logical_z));
  }
  CHECK(!code.logical_x.commutes(code.logical_z));
}

TEST_CASE("encoding is an isometry onto the +1 eigenspace") {
  RandomStream rng(61);
  for (auto code : {five_qubit_code(), phase_flip_repetition_code()}) {
    DenseState witness = random_qubit(rng);
    DenseState enc = code.encode(witness);
    CHECK(enc.norm() == doctest::Approx(1.0).epsilon(1e-10));
    for (const auto& g : code.generators) {
      CHECK(enc.expectation(g) == doctest::Approx(1.0).epsilon(1e-10));
    }
    // Logical Z expectation matches the witness Z expectation.
    double wz = std::norm(witness.amp(0)) - std::norm(witness.amp(1));
    CHECK(enc.expectation(code.logical_z) == doctest::Approx(wz).epsilon(1e-10));
  }
}

TEST_CASE("every listed error is corrected exactly") {
  RandomStream rng(62);
  for (auto code : {five_qubit_code(), phase_flip_repetition_code()}) {
    DenseState enc = code.encode(random_qubit(rng));
    for (const auto& err : code.correctable_errors) {
      DenseState state = enc;
      state.apply_pauli(err);
      uint32_t syn = code.syndrome_of(state);
      CHECK(syn != 0);  // detectable
      state.apply_pauli(code.correction_for(syn));
      CHECK(fidelity(state, enc) == doctest::Approx(1.0).epsilon(1e-12));
    }
    // No error: syndrome 0, identity correction.
    CHECK(code.syndrome_of(enc) == 0);
  }
}

TEST_CASE("five-qubit syndromes are distinct across all 16 cosets") {
  StabilizerCode code = five_qubit_code();
  std::set<uint32_t> seen{0};
  for (const auto& err : code.correctable_errors) {
    uint32_t syn = 0;
    for (std::size_t i = 0; i < code.generators.size(); ++i) {
      if (!code.generators[i].commutes(err)) syn |= uint32_t{1} << i;
    }
    CHECK(seen.insert(syn).second);
  }
  CHECK(seen.size() == 16);
}

TEST_CASE("jacobi eigenvalues on a known matrix") {
  // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
  std::vector<std::complex<double>> m = {
      {2.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}, {2.0, 0.0}};
  auto eig = hermitian_eigenvalues(m, 2);
  std::sort(eig.begin(), eig.end());
  CHECK(eig[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(eig[1] == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("mixed trace distance endpoints") {
  DenseState a(2), b(2);
  b.apply_x(0);
  std::vector<std::complex<double>> ra, rb;
  accumulate_outer_product(ra, a, 1.0);
  accumulate_outer_product(rb, b, 1.0);
  CHECK(trace_distance_mixed(ra, ra, 4) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(trace_distance_mixed(ra, rb, 4) == doctest::Approx(1.0).epsilon(1e-10));

  // Equal mixture vs one component: distance 1/2.
  std::vector<std::complex<double>> mix;
  accumulate_outer_product(mix, a, 0.5);
  accumulate_outer_product(mix, b, 0.5);
  CHECK(trace_distance_mixed(mix, ra, 4) == doctest::Approx(0.5).epsilon(1e-10));
}
