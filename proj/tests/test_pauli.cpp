#include <doctest.h>

#include "matrix_oracle.hpp"
#include "qmalab/pauli.hpp"
#include "qmalab/random.hpp"

using namespace qmalab;

namespace {
PauliString random_pauli(std::size_t n, RandomStream& rng) {
  PauliString p(n);
  const char ops[] = {'I', 'X', 'Y', 'Z'};
  for (std::size_t q = 0; q < n; ++q) p.set_op(q, ops[rng.next_below(4)]);
  p.set_phase(static_cast<Phase>(rng.next_below(4)));
  return p;
}
}  // namespace

TEST_CASE("single-qubit products have exact phases") {
  PauliString x = PauliString::from_ops("XI");
  PauliString z = PauliString::from_ops("ZI");
  PauliString xz = x * z;
  CHECK(xz.to_string() == "-iYI");

  PauliString zx = z * x;
  CHECK(zx.to_string() == "+iYI");

  PauliString y = PauliString::from_ops("YI");
  CHECK((x * y).to_string() == "+iZI");
  CHECK((y * x).to_string() == "-iZI");
}

TEST_CASE("stabilizer generators square to the identity with phase +1") {
  // g = X Z Z on a path center vertex
  PauliString g = PauliString::from_ops("ZXZ");
  PauliString sq = g * g;
  CHECK(sq.is_identity_ops());
  CHECK(sq.phase() == Phase::PlusOne);
}

TEST_CASE("path-graph generator product matches the matrix oracle") {
  // 2-vertex path: g_0 = X0 Z1, g_1 = Z0 X1.
  PauliString g0 = PauliString::from_ops("XZ");
  PauliString g1 = PauliString::from_ops("ZX");
  PauliString prod = g0 * g1;
  CHECK(oracle::approx_equal(oracle::matrix_of(prod),
                             oracle::matmul(oracle::matrix_of(g0), oracle::matrix_of(g1))));
}

TEST_CASE("random products and commutators agree with the matrix oracle") {
  RandomStream rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng.next_below(3);
    PauliString a = random_pauli(n, rng);
    PauliString b = random_pauli(n, rng);
    auto ma = oracle::matrix_of(a);
    auto mb = oracle::matrix_of(b);
    CHECK(oracle::approx_equal(oracle::matrix_of(a * b), oracle::matmul(ma, mb)));

    auto ab = oracle::matmul(ma, mb);
    auto ba = oracle::matmul(mb, ma);
    bool commute_oracle = oracle::approx_equal(ab, ba);
    CHECK(a.commutes(b) == commute_oracle);
  }
}

TEST_CASE("parse / print round trip") {
  RandomStream rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    PauliString p = random_pauli(1 + rng.next_below(6), rng);
    CHECK(PauliString::from_ops(p.to_string()) == p);
  }
  CHECK(PauliString::from_ops("-iYX").to_string() == "-iYX");
  CHECK_THROWS_AS(PauliString::from_ops("XQ"), std::invalid_argument);
}

TEST_CASE("size mismatch is a dimension error") {
  PauliString a(2), b(3);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
  CHECK_THROWS_AS(a.commutes(b), std::invalid_argument);
}

TEST_CASE("conjugation by gates matches the matrix oracle") {
  RandomStream rng(1234);
  auto h2 = [] {
    oracle::CMat m{{M_SQRT1_2, M_SQRT1_2}, {M_SQRT1_2, -M_SQRT1_2}};
    return m;
  }();
  oracle::CMat s2{{1.0, 0.0}, {0.0, oracle::C{0.0, 1.0}}};
  oracle::CMat id2{{1.0, 0.0}, {0.0, 1.0}};
  oracle::CMat cz4{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}};
  // control = qubit 0 (low bit), target = qubit 1
  oracle::CMat cnot4{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}};

  for (int trial = 0; trial < 100; ++trial) {
    PauliString p = random_pauli(2, rng);
    auto mp = oracle::matrix_of(p);
    // H on qubit 0: qubit 0 is the low bit -> kron(id, h)
    PauliString ph = p;
    ph.conj_h(0);
    auto u = oracle::kron(id2, h2);
    CHECK(oracle::approx_equal(oracle::matrix_of(ph),
                               oracle::matmul(oracle::matmul(u, mp), u)));

    PauliString ps = p;
    ps.conj_s(1);
    auto us = oracle::kron(s2, id2);
    oracle::CMat us_dag = us;
    for (auto& row : us_dag) {
      for (auto& x : row) x = std::conj(x);
    }
    // S is diagonal, so dagger = conjugate
    CHECK(oracle::approx_equal(oracle::matrix_of(ps),
                               oracle::matmul(oracle::matmul(us, mp), us_dag)));

    PauliString pc = p;
    pc.conj_cz(0, 1);
    CHECK(oracle::approx_equal(oracle::matrix_of(pc),
                               oracle::matmul(oracle::matmul(cz4, mp), cz4)));

    PauliString pn = p;
    pn.conj_cnot(0, 1);
    CHECK(oracle::approx_equal(oracle::matrix_of(pn),
                               oracle::matmul(oracle::matmul(cnot4, mp), cnot4)));
  }
}
