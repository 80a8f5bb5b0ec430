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

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "shotadapt/pauli.hpp"
#include "shotadapt/pools.hpp"

namespace shotadapt {

using Rng = std::mt19937_64;

/// Outcome index (qubit 0 is the most significant bit) to count.
using Histogram = std::map<std::uint64_t, std::int64_t>;

std::string outcome_bitstring(std::uint64_t outcome, std::size_t n_qubits);
std::uint64_t bitstring_outcome(std::string_view bits);

/// Dense state over 2^n amplitudes; basis index bit (n-1-q) holds qubit q.
class Statevector {
 public:
  explicit Statevector(std::size_t n_qubits);
  static Statevector basis_state(std::string_view bitstring);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Complex> &amplitudes() const { return amps_; }
  std::vector<Complex> &amplitudes() { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;

  /// this <- P this.
  void apply_pauli(const PauliString &p);
  /// this <- exp(i phi P) this.
  void apply_pauli_rotation(const PauliString &p, double phi);
  /// this <- op this (op need not be unitary).
  void apply_sum(const PauliSum &op);
  void apply_h(std::size_t q);
  void apply_sdg(std::size_t q);

  std::vector<double> probabilities() const;

 private:
  std::size_t n_qubits_;
  std::vector<Complex> amps_;
};

Statevector hartree_fock_state(std::string_view hf_bitstring);

bool terms_mutually_commute(const PauliSum &generator);

/// psi <- exp(theta * generator) psi for an anti-Hermitian generator. Commuting terms use an
/// exact product of Pauli rotations; otherwise a scaled Taylor series is summed to machine
/// precision. Throws std::invalid_argument for a generator with Hermitian components.
void evolve(Statevector &psi, const PauliSum &generator, double theta);

/// <psi|op|psi>.
Complex expectation(const Statevector &psi, const PauliSum &op);
/// Real part of <psi|op|psi>; throws std::domain_error if the imaginary part exceeds 1e-8.
double expectation_exact(const Statevector &psi, const PauliSum &op);
double expectation_exact(const Statevector &psi, const PauliString &p);

/// Rotates psi so that measuring Z on every qubit measures basis[q] (X: H, Y: H S^dagger).
void rotate_to_basis(Statevector &psi, const PauliString &basis);

/// Stochastic error channels. Each probability applies per qubit per opportunity.
struct NoiseModel {
  double gate = 0.0;         ///< random X/Y/Z after each pool-operator application
  double phase = 0.0;        ///< Z after each pool-operator application
  double reset = 0.0;        ///< collapse to |0> during reference preparation
  double measurement = 0.0;  ///< readout bit flip

  bool any() const { return gate > 0 || phase > 0 || reset > 0 || measurement > 0; }
  bool any_state_error() const { return gate > 0 || phase > 0 || reset > 0; }
};

/// Reference bitstring followed by an ordered list of pool-operator layers.
class Ansatz {
 public:
  Ansatz() = default;
  explicit Ansatz(std::string reference) : reference_(std::move(reference)) {}

  const std::string &reference() const { return reference_; }
  std::size_t n_qubits() const { return reference_.size(); }
  std::size_t n_layers() const { return layers_.size(); }
  std::size_t n_parameters() const { return n_parameters_; }
  const PoolOperator &layer(std::size_t k) const { return layers_[k]; }
  std::size_t parameter_offset(std::size_t k) const { return offsets_[k]; }

  void append(const PoolOperator &op);

  /// Generator of layer k at the given parameters: sum_i theta_i A_i.
  PauliSum layer_generator(std::size_t k, const std::vector<double> &theta) const;

  Statevector prepare(const std::vector<double> &theta) const;

  /// One error occurrence on a noisy trajectory.
  struct ErrorEvent {
    /// Layer after which the Pauli acts; kReferenceLayer marks a reset during preparation.
    std::size_t layer;
    std::size_t qubit;
    Pauli pauli;
    bool operator<(const ErrorEvent &o) const {
      return std::tie(layer, qubit, pauli) < std::tie(o.layer, o.qubit, o.pauli);
    }
    bool operator==(const ErrorEvent &o) const = default;
  };
  static constexpr std::size_t kReferenceLayer = static_cast<std::size_t>(-1);

  /// Trajectory with the listed errors inserted; events must be sorted.
  Statevector prepare(const std::vector<double> &theta, const std::vector<ErrorEvent> &events) const;

 private:
  std::string reference_;
  std::vector<PoolOperator> layers_;
  std::vector<std::size_t> offsets_;
  std::size_t n_parameters_ = 0;
};

/// Draws measurement outcomes from a fixed prepared state, with optional noise. Caches the
/// rotated distributions so repeated requests in one basis are cheap.
class StateSampler {
 public:
  /// Noiseless sampler for an explicit state.
  explicit StateSampler(Statevector state);
  /// Sampler for ansatz(theta), inserting stochastic errors per shot.
  StateSampler(const Ansatz &ansatz, std::vector<double> theta, NoiseModel noise);

  const Statevector &ideal_state() const { return ideal_; }
  std::size_t n_qubits() const { return ideal_.n_qubits(); }

  Histogram sample(const PauliString &basis, std::int64_t shots, Rng &rng);

 private:
  using Cumulative = std::vector<double>;
  const Cumulative &distribution(const std::vector<Ansatz::ErrorEvent> &events,
                                 const PauliString &basis);

  Statevector ideal_;
  Ansatz ansatz_;
  bool has_ansatz_ = false;
  std::vector<double> theta_;
  NoiseModel noise_;
  std::map<std::pair<std::vector<Ansatz::ErrorEvent>, PauliString>, Cumulative> cache_;
};

/// Convenience wrapper: noiseless histogram of `shots` outcomes of psi in the given basis.
Histogram sample_in_basis(const Statevector &psi, const PauliString &basis, std::int64_t shots,
                          std::uint64_t seed);

}  // namespace shotadapt
