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

#include "shotadapt/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace shotadapt {

using json = nlohmann::json;

namespace {

const json &require(const json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw HamiltonianError(HamiltonianErrorKind::kMissingField,
                           std::string("missing required field '") + key + "'");
  }
  return *it;
}

std::size_t require_count(const json &j, const char *key) {
  const json &v = require(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw HamiltonianError(HamiltonianErrorKind::kBadValue,
                           std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double require_number(const json &j, const char *key) {
  const json &v = require(j, key);
  if (!v.is_number()) {
    throw HamiltonianError(HamiltonianErrorKind::kBadValue,
                           std::string("field '") + key + "' must be a number");
  }
  return v.get<double>();
}

std::string require_string(const json &j, const char *key) {
  const json &v = require(j, key);
  if (!v.is_string()) {
    throw HamiltonianError(HamiltonianErrorKind::kBadValue,
                           std::string("field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

const char *const kKnownFields[] = {"n_qubits",   "n_electrons", "molecule",  "basis",
                                    "mapping",    "hf_bitstring", "hf_energy", "fci_energy",
                                    "terms"};

}  // namespace

Hamiltonian parse_hamiltonian(const std::string &json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw HamiltonianError(HamiltonianErrorKind::kSyntax, e.what());
  }
  if (!j.is_object()) {
    throw HamiltonianError(HamiltonianErrorKind::kSyntax, "top-level value must be an object");
  }

  Hamiltonian h;
  h.n_qubits = require_count(j, "n_qubits");
  h.n_electrons = require_count(j, "n_electrons");
  h.molecule = require_string(j, "molecule");
  h.basis = require_string(j, "basis");
  h.mapping = require_string(j, "mapping");
  h.hf_bitstring = require_string(j, "hf_bitstring");
  h.hf_energy = require_number(j, "hf_energy");
  h.fci_energy = require_number(j, "fci_energy");

  if (h.n_qubits == 0 || h.n_qubits > kMaxQubits) {
    throw HamiltonianError(HamiltonianErrorKind::kBadValue,
                           "n_qubits must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
  if (h.n_electrons > h.n_qubits) {
    throw HamiltonianError(HamiltonianErrorKind::kBadValue, "n_electrons exceeds n_qubits");
  }
  if (h.mapping != "jordan_wigner") {
    throw HamiltonianError(HamiltonianErrorKind::kBadValue,
                           "unsupported mapping '" + h.mapping + "'");
  }
  if (h.hf_bitstring.size() != h.n_qubits ||
      h.hf_bitstring.find_first_not_of("01") != std::string::npos) {
    throw HamiltonianError(HamiltonianErrorKind::kBitstring,
                           "hf_bitstring must be a 0/1 string of length n_qubits");
  }
  const auto ones = static_cast<std::size_t>(
      std::count(h.hf_bitstring.begin(), h.hf_bitstring.end(), '1'));
  if (ones != h.n_electrons) {
    throw HamiltonianError(HamiltonianErrorKind::kBitstring,
                           "hf_bitstring occupation does not equal n_electrons");
  }

  const json &terms = require(j, "terms");
  if (!terms.is_array()) {
    throw HamiltonianError(HamiltonianErrorKind::kBadValue, "field 'terms' must be an array");
  }
  h.op = PauliSum(h.n_qubits);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const json &t = terms[k];
    if (!t.is_object()) {
      throw HamiltonianError(HamiltonianErrorKind::kBadValue,
                             "term " + std::to_string(k) + " must be an object");
    }
    const std::string text = require_string(t, "pauli");
    const double re = require_number(t, "re");
    const double im = t.contains("im") ? require_number(t, "im") : 0.0;
    if (text.size() != h.n_qubits) {
      throw HamiltonianError(HamiltonianErrorKind::kPauliLength,
                             "term " + std::to_string(k) + " '" + text + "' has length " +
                                 std::to_string(text.size()) + ", expected " +
                                 std::to_string(h.n_qubits));
    }
    PauliString p;
    try {
      p = PauliString::parse(text);
    } catch (const std::invalid_argument &e) {
      throw HamiltonianError(HamiltonianErrorKind::kPauliCharacter,
                             "term " + std::to_string(k) + ": " + e.what());
    }
    h.op.add(p, {re, im});
  }
  for (const auto &[p, c] : h.op) {
    if (std::abs(c.imag()) > kHermiticityTolerance) {
      throw HamiltonianError(HamiltonianErrorKind::kNonHermitian,
                             "term " + p.str() + " has imaginary coefficient " +
                                 std::to_string(c.imag()));
    }
  }
  PauliSum real_op(h.n_qubits);
  for (const auto &[p, c] : h.op) real_op.add(p, c.real());
  h.op = std::move(real_op);

  json extra = json::object();
  for (const auto &[key, value] : j.items()) {
    if (std::find(std::begin(kKnownFields), std::end(kKnownFields), key) == std::end(kKnownFields)) {
      extra[key] = value;
    }
  }
  h.extra_json = extra.dump();
  return h;
}

Hamiltonian load_hamiltonian(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw HamiltonianError(HamiltonianErrorKind::kIo, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_hamiltonian(ss.str());
}

std::string serialize_hamiltonian(const Hamiltonian &h) {
  // ordered_json keeps the schema's field order in the written file.
  nlohmann::ordered_json j;
  j["n_qubits"] = h.n_qubits;
  j["n_electrons"] = h.n_electrons;
  j["molecule"] = h.molecule;
  j["basis"] = h.basis;
  j["mapping"] = h.mapping;
  j["hf_bitstring"] = h.hf_bitstring;
  j["hf_energy"] = h.hf_energy;
  j["fci_energy"] = h.fci_energy;
  const nlohmann::ordered_json extra = nlohmann::ordered_json::parse(h.extra_json);
  for (const auto &[key, value] : extra.items()) j[key] = value;
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto &[p, c] : h.op) {
    terms.push_back({{"pauli", p.str()}, {"re", c.real()}, {"im", c.imag()}});
  }
  j["terms"] = std::move(terms);
  return j.dump(1);
}

void save_hamiltonian(const Hamiltonian &h, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw HamiltonianError(HamiltonianErrorKind::kIo, "cannot write '" + path + "'");
  out << serialize_hamiltonian(h) << "\n";
}

}  // namespace shotadapt
