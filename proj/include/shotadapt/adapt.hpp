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
#include <vector>

#include "shotadapt/hamiltonian.hpp"
#include "shotadapt/measurement.hpp"
#include "shotadapt/optimizer.hpp"
#include "shotadapt/pools.hpp"
#include "shotadapt/statevector.hpp"

namespace shotadapt {

/// Chemical accuracy in Hartree (1 kcal/mol).
inline constexpr double kChemicalAccuracy = 1.594e-3;

enum class EngineMode { kExact, kShots };

struct AdaptConfig {
  EngineMode mode = EngineMode::kExact;
  double epsilon = 1e-3;
  std::size_t max_iterations = 30;
  MeasurementSettings measurement;
  /// Budget per observable = shots_per_clique * number of cliques.
  std::int64_t shots_per_clique = 1024;
  bool reuse = true;
  NoiseModel noise;
  GroupingStrategy grouping = GroupingStrategy::kGreedyMagnitude;
  /// CEO pools: screen OVP operators and promote to the MVP when both OVP gradients are large.
  bool dvg = true;
  double exact_fd_step = 1e-4;
  double exact_gtol = 1e-8;
  int exact_max_vqe_iterations = 500;
  double shots_fd_step = 0.39269908169872414;  // pi/8
  int shots_max_vqe_iterations = 100;
  /// Shot-mode VQE also stops once every gradient component is within this many standard errors
  /// (0 disables).
  double shots_noise_z = 0.0;
  /// Shot-mode VQE stops once the predicted energy decrease is below this (Hartree).
  double shots_energy_tol = 1e-4;
  /// Shot-mode line search accepts steps not worse than this many standard deviations.
  double shots_line_search_z = 2.0;
  std::uint64_t seed = 0;
};

/// Commutator observables for a pool, shared by every screening step of a run.
class GradientObservables {
 public:
  GradientObservables(const PauliSum &hamiltonian, const OperatorPool &pool,
                      const std::vector<MeasurementClique> &h_cliques, GroupingStrategy grouping);

  struct Entry {
    std::size_t op;
    std::size_t param;
    /// (union term index, real coefficient).
    std::vector<std::pair<std::size_t, double>> terms;
  };

  const std::vector<PauliString> &terms() const { return terms_; }
  const std::vector<Entry> &entries() const { return entries_; }
  /// Hamiltonian clique covering each union term.
  const std::vector<std::optional<std::size_t>> &reuse_map() const { return reuse_map_; }
  /// Cliques of the summed gradient observable over every union term.
  const std::vector<MeasurementClique> &full_cliques() const { return full_cliques_; }
  /// Cliques over the union terms no Hamiltonian clique covers.
  const std::vector<MeasurementClique> &uncovered_cliques() const { return uncovered_cliques_; }
  /// Per-operator commutator [H, A_k,i] as a Pauli sum.
  PauliSum commutator_of(const Entry &e) const;

 private:
  std::size_t n_qubits_;
  std::vector<PauliString> terms_;
  std::vector<Entry> entries_;
  std::vector<std::optional<std::size_t>> reuse_map_;
  std::vector<MeasurementClique> full_cliques_;
  std::vector<MeasurementClique> uncovered_cliques_;
};

struct GradientReport {
  /// gradients[k][i] = d E / d theta_i of pool operator k at zero.
  std::vector<std::vector<double>> gradients;
  /// max_i |g_k,i| per operator.
  std::vector<double> scores;
  /// Whether operator k takes part in selection and in the norm.
  std::vector<bool> candidate;
  double norm = 0.0;
  std::int64_t shots = 0;
  std::int64_t shots_saved = 0;
  bool used_cache = false;
};

/// Gradient screen. Exact mode ignores the sampler; shot mode measures the gradient cliques,
/// taking covered terms from `cache` when it is valid for `state_tag`.
GradientReport compute_gradients(const GradientObservables &obs, const OperatorPool &pool,
                                 const Statevector &exact_state, StateSampler *sampler,
                                 const ReuseCache *cache, std::uint64_t state_tag,
                                 const AdaptConfig &config, Rng &rng);

/// Picks the pool operator to append: largest score among candidates, lowest id on ties. For CEO
/// pools with DVG, a winning OVP is promoted to its quadruple's MVP when both of that pair's OVP
/// gradients exceed 10 * epsilon.
std::size_t select_operator(const OperatorPool &pool, const GradientReport &report,
                            const AdaptConfig &config);

/// One row per ADAPT iteration. Row 0 is the reference state; row n >= 1 holds the screen on
/// the n-1 operator state, the operator it selected and the energy after re-optimisation.
/// A terminating screen gets its own row with no selection and the previous energy.
struct IterationRecord {
  std::size_t iteration = 0;
  std::size_t ansatz_size = 0;
  double energy = 0.0;
  double energy_exact = 0.0;
  double gradient_norm = 0.0;
  std::optional<std::size_t> selected;
  std::string selected_label;
  std::int64_t vqe_shots = 0;
  std::int64_t grad_shots = 0;
  std::int64_t shots_saved = 0;
  std::int64_t cumulative_shots = 0;
  int vqe_iterations = 0;
  int vqe_evaluations = 0;
  std::string vqe_stop;
  std::vector<double> theta;
};

struct AdaptResult {
  std::vector<IterationRecord> trace;
  bool converged = false;
  std::string stop_reason;
  Ansatz ansatz;
  std::vector<double> theta;
};

AdaptResult run_adapt(const Hamiltonian &hamiltonian, const OperatorPool &pool,
                      const AdaptConfig &config);

}  // namespace shotadapt
