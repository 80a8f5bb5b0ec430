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

#include "shotadapt/pools.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "shotadapt/fermion.hpp"

namespace shotadapt {

std::string pool_kind_name(PoolKind kind) {
  switch (kind) {
    case PoolKind::kFermionic:
      return "fermionic";
    case PoolKind::kQubit:
      return "qubit";
    case PoolKind::kQubitExcitation:
      return "qe";
    case PoolKind::kCeo:
      return "ceo";
  }
  return "?";
}

PoolKind parse_pool_kind(std::string_view name) {
  if (name == "fermionic") return PoolKind::kFermionic;
  if (name == "qubit") return PoolKind::kQubit;
  if (name == "qe") return PoolKind::kQubitExcitation;
  if (name == "ceo") return PoolKind::kCeo;
  throw std::invalid_argument("unknown pool '" + std::string(name) +
                              "' (expected fermionic, qubit, qe or ceo)");
}

std::string operator_role_name(OperatorRole role) {
  switch (role) {
    case OperatorRole::kSingle:
      return "single";
    case OperatorRole::kDouble:
      return "double";
    case OperatorRole::kPauli:
      return "pauli";
    case OperatorRole::kOvpPlus:
      return "ovp+";
    case OperatorRole::kOvpMinus:
      return "ovp-";
    case OperatorRole::kMvp:
      return "mvp";
  }
  return "?";
}

namespace {

void check_register(std::size_t n_qubits) {
  if (n_qubits < 2 || n_qubits % 2 != 0) {
    throw std::invalid_argument("pools need an even number of spin orbitals, got " +
                                std::to_string(n_qubits));
  }
}

std::size_t spin_of(std::size_t so) { return so % 2; }

std::string pair_label(std::size_t a, std::size_t b) {
  return std::to_string(a) + "," + std::to_string(b);
}

std::string double_label(const DoubleExcitation &d) {
  return pair_label(d.p, d.q) + "->" + pair_label(d.r, d.s);
}

PauliSum excitation(const FermionTerm &forward, std::size_t n_qubits, bool parity) {
  PauliSum op = parity ? jordan_wigner(forward, n_qubits) : qubit_ladder(forward, n_qubits);
  return anti_hermitize(op);
}

PoolOperator make_operator(std::string label, OperatorRole role, std::vector<PauliSum> gens,
                           std::size_t quadruple = kNoQuadruple) {
  PoolOperator op;
  op.label = std::move(label);
  op.role = role;
  op.generators = std::move(gens);
  op.quadruple = quadruple;
  return op;
}

void assign_ids(OperatorPool &pool) {
  for (std::size_t k = 0; k < pool.operators.size(); ++k) pool.operators[k].id = k;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> generalized_singles(std::size_t n_qubits) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n_qubits; ++i) {
    for (std::size_t j = i + 1; j < n_qubits; ++j) {
      if (spin_of(i) == spin_of(j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<DoubleExcitation> generalized_doubles(std::size_t n_qubits) {
  std::vector<DoubleExcitation> out;
  for (std::size_t p = 0; p < n_qubits; ++p) {
    for (std::size_t q = p + 1; q < n_qubits; ++q) {
      for (std::size_t r = q + 1; r < n_qubits; ++r) {
        for (std::size_t s = r + 1; s < n_qubits; ++s) {
          const DoubleExcitation pairings[3] = {{p, q, r, s}, {p, r, q, s}, {p, s, q, r}};
          for (const DoubleExcitation &d : pairings) {
            if (spin_of(d.p) + spin_of(d.q) == spin_of(d.r) + spin_of(d.s)) out.push_back(d);
          }
        }
      }
    }
  }
  return out;
}

PauliSum fermionic_single(std::size_t i, std::size_t j, std::size_t n_qubits) {
  return excitation({1.0, {{j, true}, {i, false}}}, n_qubits, true);
}

PauliSum fermionic_double(const DoubleExcitation &d, std::size_t n_qubits) {
  return excitation({1.0, {{d.r, true}, {d.s, true}, {d.q, false}, {d.p, false}}}, n_qubits,
                    true);
}

PauliSum qubit_single(std::size_t i, std::size_t j, std::size_t n_qubits) {
  return excitation({1.0, {{j, true}, {i, false}}}, n_qubits, false);
}

PauliSum qubit_double(const DoubleExcitation &d, std::size_t n_qubits) {
  return excitation({1.0, {{d.r, true}, {d.s, true}, {d.q, false}, {d.p, false}}}, n_qubits,
                    false);
}

OperatorPool build_fermionic_pool(std::size_t n_qubits) {
  check_register(n_qubits);
  OperatorPool pool{PoolKind::kFermionic, n_qubits, {}};
  const std::size_t norb = n_qubits / 2;
  auto a = [](std::size_t i) { return spin_orbital(i, 0); };
  auto b = [](std::size_t i) { return spin_orbital(i, 1); };

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t p = 0; p < norb; ++p) {
    for (std::size_t q = p; q < norb; ++q) {
      FermionOperator f = {{inv_sqrt2, {{a(p), true}, {a(q), false}}},
                           {inv_sqrt2, {{b(p), true}, {b(q), false}}}};
      PauliSum gen = anti_hermitize(jordan_wigner(f, n_qubits));
      if (gen.empty()) continue;
      pool.operators.push_back(make_operator("S(" + pair_label(p, q) + ")",
                                             OperatorRole::kSingle, {std::move(gen)}));
    }
  }

  const double c1 = 2.0 / std::sqrt(12.0);
  const double c2 = 1.0 / std::sqrt(12.0);
  std::size_t pq = 0;
  for (std::size_t p = 0; p < norb; ++p) {
    for (std::size_t q = p; q < norb; ++q, ++pq) {
      std::size_t rs = 0;
      for (std::size_t r = 0; r < norb; ++r) {
        for (std::size_t s = r; s < norb; ++s, ++rs) {
          if (pq > rs) continue;
          auto term = [](double c, std::size_t w, std::size_t x, std::size_t y, std::size_t z) {
            return FermionTerm{c, {{w, true}, {x, false}, {y, true}, {z, false}}};
          };
          // Singlet and triplet-coupled pair excitations (p,q) -> (r,s).
          FermionOperator singlet = {
              term(c1, a(r), a(p), a(s), a(q)), term(c1, b(r), b(p), b(s), b(q)),
              term(c2, a(r), a(p), b(s), b(q)), term(c2, b(r), b(p), a(s), a(q)),
              term(c2, a(r), b(p), b(s), a(q)), term(c2, b(r), a(p), a(s), b(q))};
          FermionOperator triplet = {
              term(0.5, a(r), a(p), b(s), b(q)), term(0.5, b(r), b(p), a(s), a(q)),
              term(-0.5, a(r), b(p), b(s), a(q)), term(-0.5, b(r), a(p), a(s), b(q))};
          const std::string base = pair_label(p, q) + "->" + pair_label(r, s);
          int variant = 0;
          for (const FermionOperator *f : {&singlet, &triplet}) {
            PauliSum gen = anti_hermitize(jordan_wigner(*f, n_qubits));
            ++variant;
            if (gen.empty()) continue;
            if (gen.size() == 1 && gen.begin()->first.is_identity()) continue;
            pool.operators.push_back(make_operator(
                (variant == 1 ? "D1(" : "D2(") + base + ")", OperatorRole::kDouble,
                {std::move(gen)}));
          }
        }
      }
    }
  }
  assign_ids(pool);
  return pool;
}

OperatorPool build_qubit_pool(std::size_t n_qubits) {
  check_register(n_qubits);
  std::set<PauliString> strings;
  auto collect = [&](const PauliSum &gen) {
    for (const auto &[p, c] : gen) {
      PauliString stripped = p;
      for (std::size_t q = 0; q < n_qubits; ++q) {
        if (stripped[q] == Pauli::Z) stripped.set(q, Pauli::I);
      }
      strings.insert(stripped);
    }
  };
  for (const auto &[i, j] : generalized_singles(n_qubits)) {
    collect(fermionic_single(i, j, n_qubits));
  }
  for (const DoubleExcitation &d : generalized_doubles(n_qubits)) {
    collect(fermionic_double(d, n_qubits));
  }
  OperatorPool pool{PoolKind::kQubit, n_qubits, {}};
  for (const PauliString &p : strings) {
    pool.operators.push_back(make_operator("P(" + p.str() + ")", OperatorRole::kPauli,
                                           {PauliSum(p, Complex{0.0, 1.0})}));
  }
  assign_ids(pool);
  return pool;
}

OperatorPool build_qe_pool(std::size_t n_qubits) {
  check_register(n_qubits);
  OperatorPool pool{PoolKind::kQubitExcitation, n_qubits, {}};
  for (const auto &[i, j] : generalized_singles(n_qubits)) {
    pool.operators.push_back(make_operator("QE(" + pair_label(i, j) + ")",
                                           OperatorRole::kSingle,
                                           {qubit_single(i, j, n_qubits)}));
  }
  for (const DoubleExcitation &d : generalized_doubles(n_qubits)) {
    pool.operators.push_back(make_operator("QE(" + double_label(d) + ")",
                                           OperatorRole::kDouble, {qubit_double(d, n_qubits)}));
  }
  assign_ids(pool);
  return pool;
}

OperatorPool build_ceo_pool(std::size_t n_qubits) {
  check_register(n_qubits);
  OperatorPool pool{PoolKind::kCeo, n_qubits, {}};
  for (const auto &[i, j] : generalized_singles(n_qubits)) {
    pool.operators.push_back(make_operator("QE(" + pair_label(i, j) + ")",
                                           OperatorRole::kSingle,
                                           {qubit_single(i, j, n_qubits)}));
  }
  // Group the QE doubles by quadruple; generalized_doubles emits them contiguously.
  std::map<std::array<std::size_t, 4>, std::vector<DoubleExcitation>> quads;
  std::vector<std::array<std::size_t, 4>> order;
  for (const DoubleExcitation &d : generalized_doubles(n_qubits)) {
    std::array<std::size_t, 4> key = {d.p, d.q, d.r, d.s};
    std::sort(key.begin(), key.end());
    auto [it, inserted] = quads.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(d);
  }
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    const auto &key = order[qi];
    const auto &members = quads[key];
    std::vector<PauliSum> qes;
    for (const DoubleExcitation &d : members) qes.push_back(qubit_double(d, n_qubits));
    const std::string quad = std::to_string(key[0]) + "," + std::to_string(key[1]) + "," +
                             std::to_string(key[2]) + "," + std::to_string(key[3]);
    for (std::size_t x = 0; x < qes.size(); ++x) {
      for (std::size_t y = x + 1; y < qes.size(); ++y) {
        const std::string pair = double_label(members[x]) + "|" + double_label(members[y]);
        pool.operators.push_back(make_operator("OVP+(" + pair + ")", OperatorRole::kOvpPlus,
                                               {(qes[x] + qes[y]).pruned(kPruneTolerance)}, qi));
        pool.operators.push_back(make_operator("OVP-(" + pair + ")", OperatorRole::kOvpMinus,
                                               {(qes[x] - qes[y]).pruned(kPruneTolerance)}, qi));
      }
    }
    pool.operators.push_back(make_operator("MVP(" + quad + ")", OperatorRole::kMvp, qes, qi));
  }
  assign_ids(pool);
  return pool;
}

OperatorPool build_pool(PoolKind kind, std::size_t n_qubits) {
  switch (kind) {
    case PoolKind::kFermionic:
      return build_fermionic_pool(n_qubits);
    case PoolKind::kQubit:
      return build_qubit_pool(n_qubits);
    case PoolKind::kQubitExcitation:
      return build_qe_pool(n_qubits);
    case PoolKind::kCeo:
      return build_ceo_pool(n_qubits);
  }
  throw std::invalid_argument("unknown pool kind");
}

OperatorPool build_pool(PoolKind kind, std::size_t n_qubits, std::size_t n_electrons) {
  if (n_electrons == 0 || n_electrons > n_qubits) {
    throw std::invalid_argument("pool needs 1 <= n_electrons <= n_qubits, got " +
                                std::to_string(n_electrons));
  }
  return build_pool(kind, n_qubits);
}

}  // namespace shotadapt
