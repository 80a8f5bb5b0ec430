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

#include "shotadapt/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace shotadapt {

char pauli_char(Pauli p) {
  static constexpr char kChars[4] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I':
      return Pauli::I;
    case 'X':
      return Pauli::X;
    case 'Y':
      return Pauli::Y;
    case 'Z':
      return Pauli::Z;
    default:
      throw std::invalid_argument(std::string("invalid Pauli character '") + c + "'");
  }
}

PauliString PauliString::parse(std::string_view text) {
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) {
    p.axes_[q] = pauli_from_char(text[q]);
  }
  return p;
}

bool PauliString::is_identity() const {
  return std::all_of(axes_.begin(), axes_.end(), [](Pauli p) { return p == Pauli::I; });
}

std::size_t PauliString::weight() const {
  return static_cast<std::size_t>(
      std::count_if(axes_.begin(), axes_.end(), [](Pauli p) { return p != Pauli::I; }));
}

std::string PauliString::str() const {
  std::string s(axes_.size(), 'I');
  for (std::size_t q = 0; q < axes_.size(); ++q) {
    s[q] = pauli_char(axes_[q]);
  }
  return s;
}

std::uint64_t PauliString::x_mask() const {
  std::uint64_t m = 0;
  const std::size_t n = axes_.size();
  for (std::size_t q = 0; q < n; ++q) {
    if (axes_[q] == Pauli::X || axes_[q] == Pauli::Y) {
      m |= std::uint64_t{1} << (n - 1 - q);
    }
  }
  return m;
}

std::uint64_t PauliString::z_mask() const {
  std::uint64_t m = 0;
  const std::size_t n = axes_.size();
  for (std::size_t q = 0; q < n; ++q) {
    if (axes_[q] == Pauli::Z || axes_[q] == Pauli::Y) {
      m |= std::uint64_t{1} << (n - 1 - q);
    }
  }
  return m;
}

std::uint64_t PauliString::support_mask() const { return x_mask() | z_mask(); }

namespace {

// Single-qubit product table: result axis and power of i.
struct SingleProduct {
  Pauli axis;
  int i_power;
};

SingleProduct multiply_single(Pauli a, Pauli b) {
  if (a == Pauli::I) return {b, 0};
  if (b == Pauli::I) return {a, 0};
  if (a == b) return {Pauli::I, 0};
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  // X=1, Y=2, Z=3: cyclic order X->Y->Z gives +i.
  const Pauli c = static_cast<Pauli>(6 - ia - ib);
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {c, cyclic ? 1 : 3};
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) {
    throw std::invalid_argument("Pauli operands act on different qubit counts (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

PhasedPauli multiply(const PauliString &a, const PauliString &b) {
  check_sizes(a.size(), b.size());
  PauliString out(a.size());
  int power = 0;
  for (std::size_t q = 0; q < a.size(); ++q) {
    const SingleProduct s = multiply_single(a[q], b[q]);
    out.set(q, s.axis);
    power += s.i_power;
  }
  static const Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return {kPowers[power % 4], std::move(out)};
}

bool commutes(const PauliString &a, const PauliString &b) {
  check_sizes(a.size(), b.size());
  int anti = 0;
  for (std::size_t q = 0; q < a.size(); ++q) {
    if (a[q] != Pauli::I && b[q] != Pauli::I && a[q] != b[q]) ++anti;
  }
  return anti % 2 == 0;
}

bool qubit_wise_commutes(const PauliString &a, const PauliString &b) {
  check_sizes(a.size(), b.size());
  for (std::size_t q = 0; q < a.size(); ++q) {
    if (a[q] != Pauli::I && b[q] != Pauli::I && a[q] != b[q]) return false;
  }
  return true;
}

PauliSum::PauliSum(const PauliString &p, Complex c) : n_qubits_(p.size()) { add(p, c); }

void PauliSum::add(const PauliString &p, Complex c) {
  if (terms_.empty() && n_qubits_ == 0) n_qubits_ = p.size();
  check_sizes(n_qubits_, p.size());
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (!inserted) it->second += c;
}

Complex PauliSum::coefficient(const PauliString &p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Complex{} : it->second;
}

PauliSum PauliSum::pruned(double tol) const {
  PauliSum out(n_qubits_);
  for (const auto &[p, c] : terms_) {
    if (std::abs(c) > tol) out.terms_.emplace_hint(out.terms_.end(), p, c);
  }
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_qubits_);
  for (const auto &[p, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), p, std::conj(c));
  return out;
}

double PauliSum::max_abs_coefficient() const {
  double m = 0;
  for (const auto &[p, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const auto &t) { return std::abs(t.second.imag()) <= tol; });
}

bool PauliSum::is_anti_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const auto &t) { return std::abs(t.second.real()) <= tol; });
}

PauliSum &PauliSum::operator+=(const PauliSum &other) {
  for (const auto &[p, c] : other.terms_) add(p, c);
  return *this;
}

PauliSum &PauliSum::operator-=(const PauliSum &other) {
  for (const auto &[p, c] : other.terms_) add(p, -c);
  return *this;
}

PauliSum &PauliSum::operator*=(Complex s) {
  for (auto &[p, c] : terms_) c *= s;
  return *this;
}

PauliSum operator*(const PauliSum &a, const PauliSum &b) {
  PauliSum out(a.n_qubits_ != 0 ? a.n_qubits_ : b.n_qubits_);
  for (const auto &[pa, ca] : a.terms_) {
    for (const auto &[pb, cb] : b.terms_) {
      PhasedPauli r = multiply(pa, pb);
      out.add(r.string, r.phase * ca * cb);
    }
  }
  return out;
}

std::string PauliSum::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto &[p, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)*" << p.str();
  }
  return os.str();
}

PauliSum commutator(const PauliSum &h, const PauliSum &a, double tol) {
  check_sizes(h.n_qubits(), a.n_qubits());
  PauliSum out(h.n_qubits());
  for (const auto &[ph, ch] : h) {
    for (const auto &[pa, ca] : a) {
      if (commutes(ph, pa)) continue;
      // Anticommuting strings: P Q - Q P = 2 P Q.
      PhasedPauli r = multiply(ph, pa);
      out.add(r.string, 2.0 * r.phase * ch * ca);
    }
  }
  return out.pruned(tol);
}

}  // namespace shotadapt
