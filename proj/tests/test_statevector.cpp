// Copyright 2026 The shotadapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "shotadapt/hamiltonian.hpp"
#include "shotadapt/pools.hpp"
#include "shotadapt/statevector.hpp"

using namespace shotadapt;

namespace {

PauliString P(const char *s) { return PauliString::parse(s); }

double max_diff(const Statevector &psi, const oracle::Vec &v) {
  return (oracle::vec(psi) - v).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(Statevector, BasisStateIndexing) {
  const Statevector psi = Statevector::basis_state("1100");
  EXPECT_EQ(psi[0b1100], Complex(1.0, 0.0));
  EXPECT_EQ(outcome_bitstring(0b0110, 4), "0110");
  EXPECT_EQ(bitstring_outcome("0110"), 0b0110u);
  EXPECT_LT((oracle::vec(psi) - oracle::basis("1100")).norm(), 1e-15);
}

TEST(Statevector, PauliApplicationMatchesDense) {
  std::mt19937_64 rng(2);
  const oracle::Vec v = oracle::random_state(4, rng);
  for (int t = 0; t < 50; ++t) {
    const PauliString p = oracle::random_string(4, rng);
    Statevector psi = oracle::to_state(v, 4);
    psi.apply_pauli(p);
    ASSERT_LT(max_diff(psi, oracle::pauli(p.str()) * v), 1e-14) << p.str();
  }
}

TEST(Evolve, ZeroAngleIsIdentity) {
  std::mt19937_64 rng(4);
  const oracle::Vec v = oracle::random_state(4, rng);
  const OperatorPool pool = build_pool(PoolKind::kCeo, 4);
  for (const PoolOperator &op : pool.operators) {
    Statevector psi = oracle::to_state(v, 4);
    evolve(psi, op.generators[0], 0.0);
    EXPECT_LT(max_diff(psi, v), 1e-15);
  }
}

TEST(Evolve, TwoQubitClosedForm) {
  const double theta = 0.37;
  Statevector psi = Statevector::basis_state("00");
  evolve(psi, PauliSum(P("YX"), Complex(0.0, 1.0)), theta);
  EXPECT_NEAR(psi[0b00].real(), std::cos(theta), 1e-15);
  EXPECT_NEAR(psi[0b11].real(), -std::sin(theta), 1e-15);
  EXPECT_NEAR(std::abs(psi[0b01]) + std::abs(psi[0b10]), 0.0, 1e-15);
}

TEST(Evolve, MatchesDenseExponentialForPoolGenerators) {
  std::mt19937_64 rng(9);
  for (std::size_t n : {4u, 6u}) {
    for (PoolKind kind : {PoolKind::kFermionic, PoolKind::kQubit, PoolKind::kQubitExcitation,
                          PoolKind::kCeo}) {
      const OperatorPool pool = build_pool(kind, n);
      for (std::size_t k = 0; k < pool.size(); k += (n == 4 ? 1 : 7)) {
        const oracle::Vec v = oracle::random_state(n, rng);
        for (const PauliSum &g : pool.operators[k].generators) {
          const double theta = 0.3;
          Statevector psi = oracle::to_state(v, n);
          evolve(psi, g, theta);
          const oracle::Mat u = (theta * oracle::matrix(g)).exp();
          ASSERT_LT(max_diff(psi, u * v), 1e-10) << pool.operators[k].label;
          ASSERT_NEAR(psi.norm(), 1.0, 1e-10);
        }
      }
    }
  }
}

TEST(Evolve, NonCommutingGeneratorMatchesDenseExponential) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 20; ++t) {
    const PauliSum g = oracle::random_sum(5, 6, false, rng);
    const oracle::Vec v = oracle::random_state(5, rng);
    Statevector psi = oracle::to_state(v, 5);
    evolve(psi, g, 0.8);
    const oracle::Mat u = (0.8 * oracle::matrix(g)).exp();
    ASSERT_LT(max_diff(psi, u * v), 1e-10);
  }
}

TEST(Evolve, RejectsHermitianComponents) {
  Statevector psi(2);
  EXPECT_THROW(evolve(psi, PauliSum(P("XY"), 1.0), 0.1), std::invalid_argument);
}

TEST(Evolve, NormIsPreservedOverManyApplications) {
  const OperatorPool pool = build_pool(PoolKind::kQubitExcitation, 6);
  Statevector psi = Statevector::basis_state("110000");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 200; ++t) {
    evolve(psi, pool.operators[t % pool.size()].generators[0], u(rng));
    ASSERT_NEAR(psi.norm(), 1.0, 1e-10);
  }
}

TEST(Ansatz, PrepareAppliesLayersInOrder) {
  const OperatorPool pool = build_pool(PoolKind::kCeo, 4);
  Ansatz a("1100");
  a.append(pool.operators[4]);
  a.append(pool.operators[0]);
  ASSERT_EQ(a.n_parameters(), pool.operators[4].n_parameters() + 1);
  std::vector<double> theta(a.n_parameters());
  for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = 0.2 + 0.1 * static_cast<double>(i);

  oracle::Vec v = oracle::basis("1100");
  std::size_t offset = 0;
  for (std::size_t k = 0; k < a.n_layers(); ++k) {
    for (const PauliSum &g : a.layer(k).generators) {
      v = (theta[offset++] * oracle::matrix(g)).exp() * v;
    }
  }
  EXPECT_LT(max_diff(a.prepare(theta), v), 1e-10);
}

TEST(Expectation, MatchesDenseQuadraticForm) {
  const Hamiltonian h = load_hamiltonian(std::string(SHOTADAPT_DATA_DIR) + "/h4.json");
  std::mt19937_64 rng(6);
  const oracle::Vec v = oracle::random_state(h.n_qubits, rng);
  const double expect = (v.adjoint() * oracle::matrix(h.op) * v)(0, 0).real();
  EXPECT_NEAR(expectation_exact(oracle::to_state(v, h.n_qubits), h.op), expect, 1e-10);
  Statevector zero(1);
  EXPECT_EQ(expectation_exact(zero, P("Z")), 1.0);
}

TEST(Expectation, RejectsImaginaryValues) {
  Statevector psi = Statevector::basis_state("0");
  psi.apply_h(0);
  const PauliSum anti(P("X"), Complex(0.0, 1.0));
  EXPECT_THROW(expectation_exact(psi, anti), std::domain_error);
}

TEST(Sampling, EigenstatesGiveDeterministicOutcomes) {
  const Histogram h0 = sample_in_basis(Statevector::basis_state("0"), P("Z"), 100, 1);
  ASSERT_EQ(h0.size(), 1u);
  EXPECT_EQ(h0.at(0), 100);

  Statevector plus = Statevector::basis_state("0");
  plus.apply_h(0);
  const Histogram hx = sample_in_basis(plus, P("X"), 1000, 2);
  ASSERT_EQ(hx.size(), 1u);
  EXPECT_EQ(hx.at(0), 1000);

  // |+i> = S H |0> is the +1 eigenstate of Y.
  Statevector plus_i = Statevector::basis_state("0");
  plus_i.apply_h(0);
  plus_i.amplitudes()[1] *= Complex(0.0, 1.0);
  const Histogram hy = sample_in_basis(plus_i, P("Y"), 1000, 3);
  ASSERT_EQ(hy.size(), 1u);
  EXPECT_EQ(hy.at(0), 1000);

  EXPECT_TRUE(sample_in_basis(plus, P("Z"), 0, 4).empty());
}

TEST(Sampling, FrequenciesFollowBornRule) {
  std::mt19937_64 rng(12);
  const oracle::Vec v = oracle::random_state(3, rng);
  const std::int64_t shots = 200000;
  const Histogram h = sample_in_basis(oracle::to_state(v, 3), P("ZZZ"), shots, 5);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double p = std::norm(v[i]);
    const auto it = h.find(static_cast<std::uint64_t>(i));
    const double f = it == h.end() ? 0.0 : static_cast<double>(it->second) / shots;
    EXPECT_NEAR(f, p, 5.0 * std::sqrt(p * (1 - p) / shots) + 1e-12) << i;
  }
}

TEST(Sampling, RotatedBasisMatchesDenseRotation) {
  std::mt19937_64 rng(13);
  const oracle::Vec v = oracle::random_state(2, rng);
  Statevector psi = oracle::to_state(v, 2);
  rotate_to_basis(psi, P("XY"));
  oracle::Mat h(2, 2), sdg(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  sdg << 1, 0, 0, Complex(0.0, -1.0);
  const oracle::Mat u = Eigen::kroneckerProduct(h, (h * sdg).eval()).eval();
  EXPECT_LT(max_diff(psi, u * v), 1e-14);
}

TEST(Sampling, IdenticalSeedsGiveIdenticalHistograms) {
  std::mt19937_64 rng(14);
  const Statevector psi = oracle::to_state(oracle::random_state(4, rng), 4);
  EXPECT_EQ(sample_in_basis(psi, P("XZYZ"), 5000, 99), sample_in_basis(psi, P("XZYZ"), 5000, 99));
  EXPECT_NE(sample_in_basis(psi, P("XZYZ"), 5000, 99), sample_in_basis(psi, P("XZYZ"), 5000, 98));
}

TEST(Noise, MeasurementFlipAtOneHalf) {
  NoiseModel noise;
  noise.measurement = 0.5;
  Ansatz a("0");
  StateSampler sampler(a, {}, noise);
  Rng rng(21);
  const std::int64_t shots = 100000;
  const Histogram h = sampler.sample(P("Z"), shots, rng);
  const double ones = h.count(1) ? static_cast<double>(h.at(1)) / shots : 0.0;
  EXPECT_NEAR(ones, 0.5, 0.01);
}

TEST(Noise, ResetCollapsesOccupiedQubits) {
  NoiseModel noise;
  noise.reset = 1.0;
  Ansatz a("11");
  StateSampler sampler(a, {}, noise);
  Rng rng(22);
  const Histogram h = sampler.sample(P("ZZ"), 500, rng);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.at(0), 500);
}

TEST(Noise, PhaseErrorsFlipXOutcomes) {
  // |+> after a layer; Z errors with probability p turn it into |->.
  const PauliSum g(P("Y"), Complex(0.0, 1.0));
  PoolOperator op;
  op.label = "rot";
  op.role = OperatorRole::kPauli;
  op.generators = {g};
  Ansatz a("0");
  a.append(op);
  NoiseModel noise;
  noise.phase = 0.25;
  StateSampler sampler(a, {M_PI / 4}, noise);
  Rng rng(23);
  const std::int64_t shots = 100000;
  const Histogram h = sampler.sample(P("X"), shots, rng);
  const double minus = h.count(1) ? static_cast<double>(h.at(1)) / shots : 0.0;
  // exp(i pi/4 Y)|0> = (|0> - |1>)/sqrt2 = |->; a Z error returns it to |+>.
  EXPECT_NEAR(minus, 0.75, 0.01);
}

TEST(Noise, NoiselessSamplerMatchesIdealState) {
  const OperatorPool pool = build_pool(PoolKind::kQubitExcitation, 4);
  Ansatz a("1100");
  a.append(pool.operators[2]);
  StateSampler sampler(a, {0.4}, NoiseModel{});
  EXPECT_LT((oracle::vec(sampler.ideal_state()) - oracle::vec(a.prepare({0.4}))).norm(), 1e-15);
}
