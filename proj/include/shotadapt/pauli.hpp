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

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace shotadapt {

using Complex = std::complex<double>;

/// Coefficients with magnitude at or below this are dropped from commutators.
inline constexpr double kPruneTolerance = 1e-12;

/// Single-qubit Pauli axis. The enum order defines the canonical order I < X < Y < Z.
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// Tensor product of single-qubit Paulis. Position 0 is the leftmost character.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n_qubits) : axes_(n_qubits, Pauli::I) {}

  /// Parses a string over {I,X,Y,Z}. Throws std::invalid_argument on other characters.
  static PauliString parse(std::string_view text);

  std::size_t size() const { return axes_.size(); }
  Pauli operator[](std::size_t q) const { return axes_[q]; }
  void set(std::size_t q, Pauli p) { axes_[q] = p; }

  bool is_identity() const;
  std::size_t weight() const;
  std::string str() const;

  /// Bit masks over basis-state indices. Qubit q maps to bit (size - 1 - q).
  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;
  std::uint64_t support_mask() const;

  auto operator<=>(const PauliString &) const = default;
  bool operator==(const PauliString &) const = default;

 private:
  std::vector<Pauli> axes_;
};

struct PhasedPauli {
  Complex phase;
  PauliString string;
};

/// Product a * b with its phase in {+1, -1, +i, -i}.
PhasedPauli multiply(const PauliString &a, const PauliString &b);

/// True when the full operators commute (even number of anticommuting positions).
bool commutes(const PauliString &a, const PauliString &b);

/// True when every qubit position carries the same axis or at least one identity.
bool qubit_wise_commutes(const PauliString &a, const PauliString &b);

/// Linear combination of Pauli strings, kept in canonical (lexicographic) order.
class PauliSum {
 public:
  using TermMap = std::map<PauliString, Complex>;

  PauliSum() = default;
  explicit PauliSum(std::size_t n_qubits) : n_qubits_(n_qubits) {}
  PauliSum(const PauliString &p, Complex c);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const TermMap &terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  /// Adds c * p, combining with an existing term. Throws on qubit-count mismatch.
  void add(const PauliString &p, Complex c);
  Complex coefficient(const PauliString &p) const;

  PauliSum pruned(double tol) const;
  PauliSum adjoint() const;
  double max_abs_coefficient() const;
  bool is_hermitian(double tol) const;
  bool is_anti_hermitian(double tol) const;

  PauliSum &operator+=(const PauliSum &other);
  PauliSum &operator-=(const PauliSum &other);
  PauliSum &operator*=(Complex s);
  friend PauliSum operator+(PauliSum a, const PauliSum &b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum &b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Complex s) { return a *= s; }
  friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }
  friend PauliSum operator*(const PauliSum &a, const PauliSum &b);

  std::string str() const;

 private:
  std::size_t n_qubits_ = 0;
  TermMap terms_;
};

/// [h, a] = h a - a h with terms of magnitude <= tol removed.
PauliSum commutator(const PauliSum &h, const PauliSum &a, double tol = kPruneTolerance);

}  // namespace shotadapt
