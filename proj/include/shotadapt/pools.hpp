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

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "shotadapt/pauli.hpp"

namespace shotadapt {

enum class PoolKind { kFermionic, kQubit, kQubitExcitation, kCeo };

std::string pool_kind_name(PoolKind kind);
PoolKind parse_pool_kind(std::string_view name);

enum class OperatorRole { kSingle, kDouble, kPauli, kOvpPlus, kOvpMinus, kMvp };

std::string operator_role_name(OperatorRole role);

inline constexpr std::size_t kNoQuadruple = std::numeric_limits<std::size_t>::max();

/// One pool entry. Each generator is anti-Hermitian and owns one variational parameter;
/// the entry's unitary is exp(sum_i theta_i * generators[i]).
struct PoolOperator {
  std::size_t id = 0;
  std::string label;
  OperatorRole role = OperatorRole::kSingle;
  std::vector<PauliSum> generators;
  /// Spin-orbital quadruple index for CEO doubles, kNoQuadruple otherwise.
  std::size_t quadruple = kNoQuadruple;

  std::size_t n_parameters() const { return generators.size(); }
};

struct OperatorPool {
  PoolKind kind = PoolKind::kQubitExcitation;
  std::size_t n_qubits = 0;
  std::vector<PoolOperator> operators;

  std::size_t size() const { return operators.size(); }
};

/// Spin-adapted generalized singles and doubles, Jordan-Wigner mapped.
OperatorPool build_fermionic_pool(std::size_t n_qubits);
/// Distinct parity-stripped Pauli strings P of the generalized spin-conserving excitations,
/// each as the generator i*P.
OperatorPool build_qubit_pool(std::size_t n_qubits);
/// Generalized spin-conserving qubit excitations.
OperatorPool build_qe_pool(std::size_t n_qubits);
/// Coupled exchange operators: QE singles, OVP+/- per QE pair and one MVP per quadruple.
OperatorPool build_ceo_pool(std::size_t n_qubits);

OperatorPool build_pool(PoolKind kind, std::size_t n_qubits);
/// Same pool; rejects electron counts outside [1, n_qubits]. The generalized pools do not
/// otherwise depend on the occupation.
OperatorPool build_pool(PoolKind kind, std::size_t n_qubits, std::size_t n_electrons);

/// Generalized spin-conserving single excitations (i < j, same spin).
std::vector<std::pair<std::size_t, std::size_t>> generalized_singles(std::size_t n_qubits);

struct DoubleExcitation {
  /// Annihilated pair (p, q) and created pair (r, s): a_r^ a_s^ a_q a_p - h.c.
  std::size_t p, q, r, s;
};

/// All spin-conserving pairings of each ordered quadruple, in lexicographic quadruple order.
std::vector<DoubleExcitation> generalized_doubles(std::size_t n_qubits);

PauliSum fermionic_single(std::size_t i, std::size_t j, std::size_t n_qubits);
PauliSum fermionic_double(const DoubleExcitation &d, std::size_t n_qubits);
PauliSum qubit_single(std::size_t i, std::size_t j, std::size_t n_qubits);
PauliSum qubit_double(const DoubleExcitation &d, std::size_t n_qubits);

}  // namespace shotadapt
