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

#include <vector>

#include "shotadapt/pauli.hpp"

namespace shotadapt {

struct LadderOp {
  std::size_t mode;
  bool dagger;
};

/// coefficient * ops[0] * ops[1] * ... (the last operator acts first).
struct FermionTerm {
  Complex coefficient{1.0, 0.0};
  std::vector<LadderOp> ops;
};

using FermionOperator = std::vector<FermionTerm>;

/// Spin orbital index under interleaved ordering (even = alpha, odd = beta).
inline std::size_t spin_orbital(std::size_t spatial, int spin) { return 2 * spatial + spin; }

/// Jordan-Wigner image of a_p^dagger / a_p: (X -/+ iY)/2 on p with Z on every q < p.
PauliSum jordan_wigner(const LadderOp &op, std::size_t n_qubits);
PauliSum jordan_wigner(const FermionTerm &term, std::size_t n_qubits);
PauliSum jordan_wigner(const FermionOperator &op, std::size_t n_qubits);

/// Qubit ladder operator Q^dagger = (X - iY)/2 without a parity string.
PauliSum qubit_ladder(const LadderOp &op, std::size_t n_qubits);
PauliSum qubit_ladder(const FermionTerm &term, std::size_t n_qubits);

/// op - op^dagger with negligible terms removed.
PauliSum anti_hermitize(const PauliSum &op);

}  // namespace shotadapt
