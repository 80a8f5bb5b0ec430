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

#include <stdexcept>
#include <string>

#include "shotadapt/pauli.hpp"

namespace shotadapt {

/// Largest register the dense simulator accepts.
inline constexpr std::size_t kMaxQubits = 20;

enum class HamiltonianErrorKind {
  kIo,
  kSyntax,
  kMissingField,
  kBadValue,
  kPauliLength,
  kPauliCharacter,
  kNonHermitian,
  kBitstring,
};

class HamiltonianError : public std::runtime_error {
 public:
  HamiltonianError(HamiltonianErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  HamiltonianErrorKind kind() const { return kind_; }

 private:
  HamiltonianErrorKind kind_;
};

struct Hamiltonian {
  std::size_t n_qubits = 0;
  std::size_t n_electrons = 0;
  std::string molecule;
  std::string basis;
  std::string mapping = "jordan_wigner";
  /// Occupation string, qubit 0 leftmost.
  std::string hf_bitstring;
  double hf_energy = 0.0;
  double fci_energy = 0.0;
  /// Real-coefficient Pauli sum, duplicates combined.
  PauliSum op;
  /// Unrecognised top-level fields, kept as a JSON object so saving round-trips them.
  std::string extra_json = "{}";
};

/// Imaginary parts above this magnitude make a Hamiltonian non-Hermitian.
inline constexpr double kHermiticityTolerance = 1e-10;

Hamiltonian parse_hamiltonian(const std::string &json_text);
Hamiltonian load_hamiltonian(const std::string &path);
std::string serialize_hamiltonian(const Hamiltonian &h);
void save_hamiltonian(const Hamiltonian &h, const std::string &path);

}  // namespace shotadapt
