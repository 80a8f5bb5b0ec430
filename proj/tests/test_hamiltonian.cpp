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

#include <filesystem>
#include <fstream>
#include <string>

#include "dense_oracle.hpp"
#include "json.hpp"
#include "shotadapt/hamiltonian.hpp"
#include "shotadapt/measurement.hpp"
#include "shotadapt/statevector.hpp"

using namespace shotadapt;
using nlohmann::json;

namespace {

std::string data(const std::string &name) { return std::string(SHOTADAPT_DATA_DIR) + "/" + name; }

json minimal() {
  return json{{"n_qubits", 2},          {"n_electrons", 1},        {"molecule", "toy"},
              {"basis", "none"},        {"mapping", "jordan_wigner"}, {"hf_bitstring", "10"},
              {"hf_energy", -0.5},      {"fci_energy", -0.6},
              {"terms", json::array({json{{"pauli", "ZI"}, {"re", 0.5}, {"im", 0.0}},
                                     json{{"pauli", "XX"}, {"re", 0.1}}})}};
}

HamiltonianErrorKind kind_of(const json &j) {
  try {
    parse_hamiltonian(j.dump());
  } catch (const HamiltonianError &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << j.dump();
  return HamiltonianErrorKind::kIo;
}

}  // namespace

TEST(Hamiltonian, H2FileHasFifteenTermsAndFiveCliques) {
  const Hamiltonian h = load_hamiltonian(data("h2.json"));
  EXPECT_EQ(h.n_qubits, 4u);
  EXPECT_EQ(h.n_electrons, 2u);
  EXPECT_EQ(h.op.size(), 15u);
  EXPECT_EQ(h.hf_bitstring, "1100");
  EXPECT_EQ(group_qwc(h.op).size(), 5u);
}

TEST(Hamiltonian, ReducedLiHHasNineCliques) {
  const Hamiltonian h = load_hamiltonian(data("lih_reduced.json"));
  EXPECT_EQ(h.n_qubits, 4u);
  EXPECT_EQ(group_qwc(h.op).size(), 9u);
}

TEST(Hamiltonian, BundledFilesReproduceTheirReferenceEnergies) {
  for (const char *name : {"h2.json", "h3.json", "h4.json", "lih_reduced.json"}) {
    const Hamiltonian h = load_hamiltonian(data(name));
    const double hf = expectation_exact(hartree_fock_state(h.hf_bitstring), h.op);
    EXPECT_NEAR(hf, h.hf_energy, 1e-8) << name;
    // Dense ground state of the full Hamiltonian, particle number unrestricted, bounds FCI.
    const double ground = oracle::ground_energy(h.op);
    EXPECT_LE(ground, h.fci_energy + 1e-8) << name;
    EXPECT_LE(h.fci_energy, h.hf_energy + 1e-12) << name;
    EXPECT_TRUE(h.op.is_hermitian(kHermiticityTolerance)) << name;
  }
}

TEST(Hamiltonian, H2FciIsTheDenseGroundState) {
  const Hamiltonian h = load_hamiltonian(data("h2.json"));
  EXPECT_NEAR(oracle::ground_energy(h.op), h.fci_energy, 1e-8);
}

TEST(Hamiltonian, RoundTripPreservesEverything) {
  json j = minimal();
  j["geometry_angstrom"] = "H 0 0 0";
  j["spin_ordering"] = "interleaved";
  const Hamiltonian a = parse_hamiltonian(j.dump());
  const Hamiltonian b = parse_hamiltonian(serialize_hamiltonian(a));
  EXPECT_EQ(a.op.terms(), b.op.terms());
  EXPECT_EQ(a.hf_bitstring, b.hf_bitstring);
  EXPECT_EQ(a.hf_energy, b.hf_energy);
  EXPECT_EQ(a.fci_energy, b.fci_energy);
  EXPECT_EQ(a.molecule, b.molecule);
  EXPECT_EQ(json::parse(a.extra_json), json::parse(b.extra_json));
  EXPECT_EQ(json::parse(b.extra_json)["spin_ordering"], "interleaved");
}

TEST(Hamiltonian, FileRoundTrip) {
  const Hamiltonian a = load_hamiltonian(data("lih_reduced.json"));
  const std::string path =
      (std::filesystem::temp_directory_path() / "shotadapt_roundtrip.json").string();
  save_hamiltonian(a, path);
  const Hamiltonian b = load_hamiltonian(path);
  std::filesystem::remove(path);
  EXPECT_EQ(a.op.terms(), b.op.terms());
  EXPECT_EQ(a.hf_energy, b.hf_energy);
}

TEST(Hamiltonian, DuplicateTermsAreCombined) {
  json j = minimal();
  j["terms"].push_back(json{{"pauli", "ZI"}, {"re", 0.25}});
  const Hamiltonian h = parse_hamiltonian(j.dump());
  EXPECT_EQ(h.op.size(), 2u);
  EXPECT_EQ(h.op.coefficient(PauliString::parse("ZI")), Complex(0.75, 0.0));
}

TEST(Hamiltonian, ErrorKinds) {
  EXPECT_EQ(kind_of(json("not an object")), HamiltonianErrorKind::kSyntax);
  try {
    parse_hamiltonian("{\"n_qubits\": 2,");
    ADD_FAILURE();
  } catch (const HamiltonianError &e) {
    EXPECT_EQ(e.kind(), HamiltonianErrorKind::kSyntax);
  }

  json j = minimal();
  j.erase("fci_energy");
  EXPECT_EQ(kind_of(j), HamiltonianErrorKind::kMissingField);

  j = minimal();
  j["mapping"] = "bravyi_kitaev";
  EXPECT_EQ(kind_of(j), HamiltonianErrorKind::kBadValue);

  j = minimal();
  j["n_qubits"] = -1;
  EXPECT_EQ(kind_of(j), HamiltonianErrorKind::kBadValue);

  j = minimal();
  j["terms"][0]["pauli"] = "ZII";
  EXPECT_EQ(kind_of(j), HamiltonianErrorKind::kPauliLength);

  j = minimal();
  j["terms"][0]["pauli"] = "ZA";
  EXPECT_EQ(kind_of(j), HamiltonianErrorKind::kPauliCharacter);

  j = minimal();
  j["terms"][1]["im"] = 0.3;
  EXPECT_EQ(kind_of(j), HamiltonianErrorKind::kNonHermitian);

  j = minimal();
  j["hf_bitstring"] = "1";
  EXPECT_EQ(kind_of(j), HamiltonianErrorKind::kBitstring);

  j = minimal();
  j["hf_bitstring"] = "11";
  EXPECT_EQ(kind_of(j), HamiltonianErrorKind::kBitstring);

  try {
    load_hamiltonian("/nonexistent/h.json");
    ADD_FAILURE();
  } catch (const HamiltonianError &e) {
    EXPECT_EQ(e.kind(), HamiltonianErrorKind::kIo);
  }
}

TEST(Hamiltonian, TinyImaginaryPartsAreTolerated) {
  json j = minimal();
  j["terms"][1]["im"] = 1e-12;
  EXPECT_NO_THROW(parse_hamiltonian(j.dump()));
}

TEST(Hamiltonian, AllZeroBitstringIsTheVacuum) {
  json j = minimal();
  j["n_electrons"] = 0;
  j["hf_bitstring"] = "00";
  const Hamiltonian h = parse_hamiltonian(j.dump());
  const Statevector psi = hartree_fock_state(h.hf_bitstring);
  EXPECT_EQ(psi[0], Complex(1.0, 0.0));
  EXPECT_DOUBLE_EQ(psi.norm(), 1.0);
}
