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

#include "shotadapt/fermion.hpp"

#include <stdexcept>
#include <string>

namespace shotadapt {

namespace {

PauliSum ladder(const LadderOp &op, std::size_t n_qubits, bool parity_string) {
  if (op.mode >= n_qubits) {
    throw std::out_of_range("mode " + std::to_string(op.mode) + " outside " +
                            std::to_string(n_qubits) + " qubits");
  }
  PauliString x(n_qubits);
  if (parity_string) {
    for (std::size_t q = 0; q < op.mode; ++q) x.set(q, Pauli::Z);
  }
  PauliString y = x;
  x.set(op.mode, Pauli::X);
  y.set(op.mode, Pauli::Y);
  PauliSum out(n_qubits);
  out.add(x, {0.5, 0.0});
  out.add(y, {0.0, op.dagger ? -0.5 : 0.5});
  return out;
}

PauliSum product(const FermionTerm &term, std::size_t n_qubits, bool parity_string) {
  PauliSum out(PauliString(n_qubits), term.coefficient);
  for (const LadderOp &op : term.ops) out = out * ladder(op, n_qubits, parity_string);
  return out.pruned(kPruneTolerance);
}

}  // namespace

PauliSum jordan_wigner(const LadderOp &op, std::size_t n_qubits) {
  return ladder(op, n_qubits, true);
}

PauliSum jordan_wigner(const FermionTerm &term, std::size_t n_qubits) {
  return product(term, n_qubits, true);
}

PauliSum jordan_wigner(const FermionOperator &op, std::size_t n_qubits) {
  PauliSum out(n_qubits);
  for (const FermionTerm &t : op) out += jordan_wigner(t, n_qubits);
  return out.pruned(kPruneTolerance);
}

PauliSum qubit_ladder(const LadderOp &op, std::size_t n_qubits) {
  return ladder(op, n_qubits, false);
}

PauliSum qubit_ladder(const FermionTerm &term, std::size_t n_qubits) {
  return product(term, n_qubits, false);
}

PauliSum anti_hermitize(const PauliSum &op) { return (op - op.adjoint()).pruned(kPruneTolerance); }

}  // namespace shotadapt
