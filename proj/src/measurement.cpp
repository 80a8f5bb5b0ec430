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

#include "shotadapt/measurement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace shotadapt {

GroupingStrategy parse_grouping(std::string_view name) {
  if (name == "greedy") return GroupingStrategy::kGreedyMagnitude;
  if (name == "largest_first") return GroupingStrategy::kLargestFirst;
  throw std::invalid_argument("unknown grouping '" + std::string(name) +
                              "' (expected greedy or largest_first)");
}

std::string grouping_name(GroupingStrategy g) {
  return g == GroupingStrategy::kGreedyMagnitude ? "greedy" : "largest_first";
}

namespace {

// A probe with no spread still allows a minority outcome at rate ~1/N0; the floor keeps such
// cliques from collapsing to their probe shots.
constexpr double kProbeSigmaFloor = 0.25;

struct Weighted {
  PauliString p;
  double coef;
};

std::vector<Weighted> non_identity_terms(const PauliSum &observable) {
  std::vector<Weighted> terms;
  for (const auto &[p, c] : observable) {
    if (!p.is_identity()) terms.push_back({p, c.real()});
  }
  return terms;
}

PauliString resolve_basis(const PauliString &merged) {
  PauliString b = merged;
  for (std::size_t q = 0; q < b.size(); ++q) {
    if (b[q] == Pauli::I) b.set(q, Pauli::Z);
  }
  return b;
}

std::vector<MeasurementClique> greedy_cliques(std::vector<Weighted> terms) {
  std::stable_sort(terms.begin(), terms.end(), [](const Weighted &a, const Weighted &b) {
    return std::abs(a.coef) > std::abs(b.coef);
  });
  std::vector<MeasurementClique> cliques;
  std::vector<PauliString> merged;
  for (Weighted &t : terms) {
    std::size_t k = 0;
    for (; k < cliques.size(); ++k) {
      if (qubit_wise_commutes(merged[k], t.p)) break;
    }
    if (k == cliques.size()) {
      cliques.emplace_back();
      merged.emplace_back(t.p.size());
    }
    for (std::size_t q = 0; q < t.p.size(); ++q) {
      if (t.p[q] != Pauli::I) merged[k].set(q, t.p[q]);
    }
    cliques[k].members.push_back(t.p);
    cliques[k].coefficients.push_back(t.coef);
  }
  for (std::size_t k = 0; k < cliques.size(); ++k) cliques[k].basis = resolve_basis(merged[k]);
  return cliques;
}

std::vector<MeasurementClique> largest_first_cliques(const std::vector<Weighted> &terms) {
  const std::size_t t = terms.size();
  std::vector<std::vector<std::size_t>> adj(t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = i + 1; j < t; ++j) {
      if (!qubit_wise_commutes(terms[i].p, terms[j].p)) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }
  std::vector<std::size_t> order(t);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return adj[a].size() > adj[b].size(); });
  constexpr std::size_t kUncoloured = static_cast<std::size_t>(-1);
  std::vector<std::size_t> colour(t, kUncoloured);
  std::size_t n_colours = 0;
  std::vector<char> used;
  for (std::size_t v : order) {
    used.assign(n_colours + 1, 0);
    for (std::size_t u : adj[v]) {
      if (colour[u] != kUncoloured) used[colour[u]] = 1;
    }
    std::size_t c = 0;
    while (used[c]) ++c;
    colour[v] = c;
    n_colours = std::max(n_colours, c + 1);
  }
  std::vector<MeasurementClique> cliques(n_colours);
  std::vector<PauliString> merged(n_colours, PauliString(terms.empty() ? 0 : terms[0].p.size()));
  for (std::size_t v = 0; v < t; ++v) {
    MeasurementClique &c = cliques[colour[v]];
    c.members.push_back(terms[v].p);
    c.coefficients.push_back(terms[v].coef);
    for (std::size_t q = 0; q < terms[v].p.size(); ++q) {
      if (terms[v].p[q] != Pauli::I) merged[colour[v]].set(q, terms[v].p[q]);
    }
  }
  for (std::size_t k = 0; k < n_colours; ++k) cliques[k].basis = resolve_basis(merged[k]);
  return cliques;
}

}  // namespace

std::vector<MeasurementClique> group_qwc(const PauliSum &observable, GroupingStrategy strategy) {
  std::vector<Weighted> terms = non_identity_terms(observable);
  std::vector<MeasurementClique> cliques = strategy == GroupingStrategy::kGreedyMagnitude
                                               ? greedy_cliques(std::move(terms))
                                               : largest_first_cliques(terms);
  for (std::size_t k = 0; k < cliques.size(); ++k) cliques[k].id = k;
  return cliques;
}

double identity_offset(const PauliSum &observable) {
  return observable.coefficient(PauliString(observable.n_qubits())).real();
}

bool basis_covers(const PauliString &basis, const PauliString &term) {
  if (basis.size() != term.size()) return false;
  for (std::size_t q = 0; q < term.size(); ++q) {
    if (term[q] != Pauli::I && term[q] != basis[q]) return false;
  }
  return true;
}

int term_eigenvalue(const PauliString &term, std::uint64_t outcome) {
  return (std::popcount(outcome & term.support_mask()) & 1) ? -1 : 1;
}

CliqueEstimate estimate_clique(const MeasurementClique &clique, const Histogram &histogram) {
  CliqueEstimate est;
  const std::size_t m = clique.members.size();
  std::vector<std::uint64_t> masks(m);
  for (std::size_t j = 0; j < m; ++j) masks[j] = clique.members[j].support_mask();
  est.term_means.assign(m, 0.0);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto &[outcome, count] : histogram) {
    double e = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const int eig = (std::popcount(outcome & masks[j]) & 1) ? -1 : 1;
      e += clique.coefficients[j] * eig;
      est.term_means[j] += static_cast<double>(count) * eig;
    }
    sum += static_cast<double>(count) * e;
    sum_sq += static_cast<double>(count) * e * e;
    est.shots += count;
  }
  if (est.shots == 0) return est;
  const double n = static_cast<double>(est.shots);
  est.mean = sum / n;
  for (double &t : est.term_means) t /= n;
  if (est.shots > 1) est.variance = std::max(0.0, (sum_sq - n * est.mean * est.mean) / (n - 1.0));
  return est;
}

double term_mean(const PauliString &term, const Histogram &histogram) {
  const std::uint64_t mask = term.support_mask();
  double acc = 0.0;
  std::int64_t shots = 0;
  for (const auto &[outcome, count] : histogram) {
    acc += static_cast<double>(count) * ((std::popcount(outcome & mask) & 1) ? -1.0 : 1.0);
    shots += count;
  }
  return shots == 0 ? 0.0 : acc / static_cast<double>(shots);
}

AllocationMethod parse_allocation(std::string_view name) {
  if (name == "uniform") return AllocationMethod::kUniform;
  if (name == "vmsa") return AllocationMethod::kVmsa;
  if (name == "vpsr") return AllocationMethod::kVpsr;
  throw std::invalid_argument("unknown allocation '" + std::string(name) +
                              "' (expected uniform, vmsa or vpsr)");
}

std::string allocation_name(AllocationMethod m) {
  switch (m) {
    case AllocationMethod::kUniform:
      return "uniform";
    case AllocationMethod::kVmsa:
      return "vmsa";
    case AllocationMethod::kVpsr:
      return "vpsr";
  }
  return "?";
}

VpsrEta parse_vpsr_eta(std::string_view name) {
  if (name == "corrected") return VpsrEta::kCorrected;
  if (name == "printed") return VpsrEta::kPrinted;
  throw std::invalid_argument("unknown vpsr_eta '" + std::string(name) +
                              "' (expected corrected or printed)");
}

std::int64_t AllocationPlan::total() const {
  return std::accumulate(shots.begin(), shots.end(), std::int64_t{0});
}

double vpsr_eta(const std::vector<double> &sigma, VpsrEta form) {
  const double m = static_cast<double>(sigma.size());
  double s1 = 0.0;
  double s2 = 0.0;
  for (double s : sigma) {
    s1 += s;
    s2 += s * s;
  }
  if (sigma.empty() || s2 <= 0.0) return 1.0;
  // The printed form sums sigma_i^2 over the same index set as the denominator: 1/m.
  if (form == VpsrEta::kPrinted) return s2 / (m * s2);
  return (s1 * s1) / (m * s2);
}

namespace {

// Hands `remainder` extra shots to cliques in the given priority order, one each.
void distribute(std::vector<std::int64_t> &shots, std::int64_t remainder,
                const std::vector<std::size_t> &priority) {
  for (std::size_t k = 0; remainder > 0; k = (k + 1) % priority.size(), --remainder) {
    ++shots[priority[k]];
  }
}

AllocationPlan uniform_split(std::int64_t budget, const std::vector<std::size_t> &sizes) {
  const std::size_t m = sizes.size();
  AllocationPlan plan;
  plan.shots.assign(m, budget / static_cast<std::int64_t>(m));
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sizes[a] > sizes[b]; });
  distribute(plan.shots, budget % static_cast<std::int64_t>(m), order);
  return plan;
}

// N_i = n0 + scale * sigma_i / sum(sigma) * (budget - n0 m), floored, then topped up in descending
// sigma order until the total reaches n0 m + floor(scale * (budget - n0 m)).
AllocationPlan sigma_split(std::int64_t budget, const std::vector<std::size_t> &sizes,
                           const std::vector<double> &sigma, std::int64_t n0, double scale) {
  const std::size_t m = sigma.size();
  const double total_sigma = std::accumulate(sigma.begin(), sigma.end(), 0.0);
  if (total_sigma <= 0.0) return uniform_split(budget, sizes);
  const double spare = static_cast<double>(budget - n0 * static_cast<std::int64_t>(m));
  const auto target = static_cast<std::int64_t>(std::floor(scale * spare + 1e-9));
  AllocationPlan plan;
  plan.shots.assign(m, n0);
  std::int64_t used = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto extra = static_cast<std::int64_t>(std::floor(scale * sigma[i] / total_sigma * spare));
    plan.shots[i] += extra;
    used += extra;
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });
  distribute(plan.shots, std::max<std::int64_t>(0, target - used), order);
  return plan;
}

}  // namespace

AllocationPlan allocate(AllocationMethod method, std::int64_t budget,
                        const std::vector<std::size_t> &clique_sizes,
                        const std::vector<double> &sigma, std::int64_t n0, VpsrEta eta_form) {
  const std::size_t m = clique_sizes.size();
  if (m == 0) return {};
  if (budget < static_cast<std::int64_t>(m)) {
    throw std::invalid_argument("budget " + std::to_string(budget) + " below one shot per clique");
  }
  if (method == AllocationMethod::kUniform) return uniform_split(budget, clique_sizes);

  if (sigma.size() != m) throw std::invalid_argument("sigma and clique counts differ");
  for (double s : sigma) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("sigma must be finite and >= 0");
  }
  if (n0 < 1 || budget < n0 * static_cast<std::int64_t>(m)) {
    throw std::invalid_argument("budget " + std::to_string(budget) + " below N0 * m = " +
                                std::to_string(n0 * static_cast<std::int64_t>(m)));
  }
  AllocationPlan plan;
  if (method == AllocationMethod::kVmsa) {
    plan = sigma_split(budget, clique_sizes, sigma, n0, 1.0);
  } else {
    plan = sigma_split(budget, clique_sizes, sigma, n0, vpsr_eta(sigma, eta_form));
    plan.eta = vpsr_eta(sigma, eta_form);
  }
  plan.n0 = n0;
  double predicted = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    predicted += sigma[i] * sigma[i] / static_cast<double>(plan.shots[i]);
  }
  plan.delta = predicted;
  return plan;
}

ObservableEstimate measure_observable(const std::vector<MeasurementClique> &cliques,
                                      double offset, StateSampler &sampler,
                                      std::int64_t budget, const MeasurementSettings &settings,
                                      Rng &rng, std::uint64_t state_tag) {
  ObservableEstimate out;
  out.value = offset;
  const std::size_t m = cliques.size();
  if (m == 0) return out;
  std::vector<std::size_t> sizes(m);
  for (std::size_t i = 0; i < m; ++i) sizes[i] = cliques[i].members.size();

  out.records.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.records[i].clique_id = cliques[i].id;
    out.records[i].basis = cliques[i].basis;
    out.records[i].state_tag = state_tag;
  }

  std::vector<double> sigma;
  if (settings.method != AllocationMethod::kUniform) {
    if (budget < settings.n0 * static_cast<std::int64_t>(m)) {
      throw std::invalid_argument("budget below the probe cost N0 * m");
    }
    sigma.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const Histogram probe = sampler.sample(cliques[i].basis, settings.n0, rng);
      double range = 0.0;
      for (double c : cliques[i].coefficients) range += std::abs(c);
      sigma[i] = std::max(std::sqrt(estimate_clique(cliques[i], probe).variance),
                          kProbeSigmaFloor * range / std::sqrt(static_cast<double>(settings.n0)));
      out.records[i].histogram = probe;
    }
  }
  out.plan = allocate(settings.method, budget, sizes, sigma, settings.n0, settings.eta_form);

  for (std::size_t i = 0; i < m; ++i) {
    const std::int64_t extra =
        out.plan.shots[i] - (settings.method == AllocationMethod::kUniform ? 0 : settings.n0);
    if (extra > 0) out.records[i].histogram = sampler.sample(cliques[i].basis, extra, rng);
    CliqueEstimate est = estimate_clique(cliques[i], out.records[i].histogram);
    out.records[i].shots = est.shots;
    out.value += est.mean;
    if (est.shots > 0) out.variance += est.variance / static_cast<double>(est.shots);
    out.shots += out.plan.shots[i];
    out.cliques.push_back(std::move(est));
  }
  return out;
}

std::vector<std::optional<std::size_t>> build_reuse_map(
    const std::vector<PauliString> &terms, const std::vector<MeasurementClique> &h_cliques) {
  std::vector<std::optional<std::size_t>> map(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    for (const MeasurementClique &c : h_cliques) {
      if (basis_covers(c.basis, terms[t])) {
        map[t] = c.id;
        break;
      }
    }
  }
  return map;
}

CountReport count_measurements(const PauliSum &hamiltonian, const OperatorPool &pool,
                               GroupingStrategy strategy) {
  CountReport report;
  const std::vector<MeasurementClique> h_cliques = group_qwc(hamiltonian);
  report.hamiltonian_terms = hamiltonian.size();
  report.hamiltonian_cliques = h_cliques.size();
  report.pool_operators = pool.size();
  for (const PoolOperator &op : pool.operators) {
    for (const PauliSum &a : op.generators) {
      const PauliSum c = commutator(hamiltonian, a);
      report.full += c.size();
      report.grouped += group_qwc(c, strategy).size();
      PauliSum uncovered(c.n_qubits());
      for (const auto &[p, coef] : c) {
        bool covered = false;
        for (const MeasurementClique &h : h_cliques) {
          if (basis_covers(h.basis, p)) {
            covered = true;
            break;
          }
        }
        if (!covered) uncovered.add(p, coef);
      }
      if (!uncovered.empty()) report.reused += group_qwc(uncovered, strategy).size();
    }
  }
  return report;
}

}  // namespace shotadapt
