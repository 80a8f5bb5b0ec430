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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shotadapt/pauli.hpp"
#include "shotadapt/pools.hpp"
#include "shotadapt/statevector.hpp"

namespace shotadapt {

/// Mutually qubit-wise commuting terms sharing one measurement basis.
struct MeasurementClique {
  std::size_t id = 0;
  /// Member axes with unused positions resolved to Z.
  PauliString basis;
  std::vector<PauliString> members;
  std::vector<double> coefficients;
};

enum class GroupingStrategy {
  /// Terms sorted by descending |coefficient| (canonical order on ties), first-fit.
  kGreedyMagnitude,
  /// Graph colouring of the non-QWC graph, vertices by descending degree.
  kLargestFirst,
};

GroupingStrategy parse_grouping(std::string_view name);
std::string grouping_name(GroupingStrategy g);

/// Partitions the non-identity terms of a real-coefficient observable into QWC cliques.
std::vector<MeasurementClique> group_qwc(const PauliSum &observable,
                                         GroupingStrategy strategy = GroupingStrategy::kGreedyMagnitude);

/// Real coefficient of the identity term (0 when absent).
double identity_offset(const PauliSum &observable);

/// True when every non-identity position of `term` matches the basis axis.
bool basis_covers(const PauliString &basis, const PauliString &term);

/// Eigenvalue (+1/-1) of `term` on a computational-basis outcome recorded in a basis covering it.
int term_eigenvalue(const PauliString &term, std::uint64_t outcome);

struct MeasurementRecord {
  std::size_t clique_id = 0;
  PauliString basis;
  std::uint64_t state_tag = 0;
  std::int64_t shots = 0;
  Histogram histogram;
};

struct CliqueEstimate {
  double mean = 0.0;
  /// Unbiased single-shot variance of the clique value (0 for fewer than two shots).
  double variance = 0.0;
  std::int64_t shots = 0;
  /// Sample mean of each member's eigenvalue.
  std::vector<double> term_means;
};

CliqueEstimate estimate_clique(const MeasurementClique &clique, const Histogram &histogram);

/// Sample mean of a single term's eigenvalue over a histogram recorded in a covering basis.
double term_mean(const PauliString &term, const Histogram &histogram);

enum class AllocationMethod { kUniform, kVmsa, kVpsr };
enum class VpsrEta { kCorrected, kPrinted };

AllocationMethod parse_allocation(std::string_view name);
std::string allocation_name(AllocationMethod m);
VpsrEta parse_vpsr_eta(std::string_view name);

struct AllocationPlan {
  std::vector<std::int64_t> shots;
  std::int64_t n0 = 0;
  /// VPSR budget factor (1 for the other methods).
  double eta = 1.0;
  /// Predicted estimator variance sum_i sigma_i^2 / N_i (sigma-driven methods only).
  double delta = 0.0;
  std::int64_t total() const;
};

/// Shot split over cliques. Uniform ignores sigma; VMSA spends exactly `budget`; VPSR scales the
/// sigma-proportional share of (budget - n0 m) by eta, so it never spends more than VMSA.
/// Throws std::invalid_argument if budget < n0 * m for the sigma-driven methods.
AllocationPlan allocate(AllocationMethod method, std::int64_t budget,
                        const std::vector<std::size_t> &clique_sizes,
                        const std::vector<double> &sigma, std::int64_t n0 = 32,
                        VpsrEta eta_form = VpsrEta::kCorrected);

double vpsr_eta(const std::vector<double> &sigma, VpsrEta form);

struct MeasurementSettings {
  AllocationMethod method = AllocationMethod::kUniform;
  std::int64_t n0 = 32;
  VpsrEta eta_form = VpsrEta::kCorrected;
};

struct ObservableEstimate {
  /// Includes the identity offset.
  double value = 0.0;
  /// Estimated variance of `value`: sum_i var_i / N_i.
  double variance = 0.0;
  std::int64_t shots = 0;
  AllocationPlan plan;
  std::vector<CliqueEstimate> cliques;
  std::vector<MeasurementRecord> records;
};

/// Measures sum_i clique_i (+ offset). Sigma-driven methods first spend n0 probe shots per clique
/// to estimate sigma; the probe counts toward `shots` but estimates and records use only the
/// shots drawn after it.
ObservableEstimate measure_observable(const std::vector<MeasurementClique> &cliques,
                                      double offset, StateSampler &sampler,
                                      std::int64_t budget, const MeasurementSettings &settings,
                                      Rng &rng, std::uint64_t state_tag = 0);

/// Records kept from the last energy measurement, keyed by the state they were taken on.
struct ReuseCache {
  bool valid = false;
  std::uint64_t state_tag = 0;
  std::vector<MeasurementRecord> records;
  /// Infinite-shot emulation: covered terms are evaluated exactly on this state.
  std::optional<Statevector> exact_state;
};

/// For each term, the first Hamiltonian clique whose basis covers it (nullopt when none).
std::vector<std::optional<std::size_t>> build_reuse_map(
    const std::vector<PauliString> &terms, const std::vector<MeasurementClique> &h_cliques);

struct CountReport {
  std::size_t hamiltonian_terms = 0;
  std::size_t hamiltonian_cliques = 0;
  std::size_t pool_operators = 0;
  std::size_t full = 0;
  std::size_t grouped = 0;
  std::size_t reused = 0;
  double ratio() const { return full == 0 ? 0.0 : static_cast<double>(reused) / full; }
  double grouped_ratio() const { return full == 0 ? 0.0 : static_cast<double>(grouped) / full; }
};

/// full = distinct Pauli strings of [H, A] summed over pool generators; grouped = QWC groups of
/// each [H, A], summed; reused = QWC groups needed for the strings no Hamiltonian clique basis
/// covers, summed the same way.
CountReport count_measurements(const PauliSum &hamiltonian, const OperatorPool &pool,
                               GroupingStrategy strategy = GroupingStrategy::kGreedyMagnitude);

}  // namespace shotadapt
