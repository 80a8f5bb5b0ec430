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

#include "shotadapt/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace shotadapt {

std::string outcome_bitstring(std::uint64_t outcome, std::size_t n_qubits) {
  std::string s(n_qubits, '0');
  for (std::size_t q = 0; q < n_qubits; ++q) {
    if ((outcome >> (n_qubits - 1 - q)) & 1) s[q] = '1';
  }
  return s;
}

std::uint64_t bitstring_outcome(std::string_view bits) {
  std::uint64_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring must contain only 0 and 1");
    v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return v;
}

Statevector::Statevector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0 || n_qubits > 30) {
    throw std::invalid_argument("statevector register size out of range");
  }
  amps_.assign(std::size_t{1} << n_qubits, Complex{});
  amps_[0] = 1.0;
}

Statevector Statevector::basis_state(std::string_view bitstring) {
  Statevector s(bitstring.size());
  s.amps_[0] = 0.0;
  s.amps_[bitstring_outcome(bitstring)] = 1.0;
  return s;
}

double Statevector::norm() const {
  double acc = 0;
  for (const Complex &a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

namespace {

// P|b> = phase(b) |b ^ x>, phase(b) = i^{#Y} (-1)^{popcount(b & z)}.
struct PauliAction {
  std::uint64_t x;
  std::uint64_t z;
  Complex y_phase;

  explicit PauliAction(const PauliString &p) : x(p.x_mask()), z(p.z_mask()) {
    static const Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    y_phase = kPowers[std::popcount(x & z) % 4];
  }
  Complex phase(std::uint64_t b) const {
    return (std::popcount(b & z) & 1) ? -y_phase : y_phase;
  }
};

void check_size(const Statevector &psi, std::size_t n) {
  if (psi.n_qubits() != n) {
    throw std::invalid_argument("operator acts on " + std::to_string(n) +
                                " qubits but state has " + std::to_string(psi.n_qubits()));
  }
}

}  // namespace

void Statevector::apply_pauli(const PauliString &p) {
  check_size(*this, p.size());
  const PauliAction act(p);
  std::vector<Complex> out(amps_.size());
  for (std::uint64_t b = 0; b < amps_.size(); ++b) out[b ^ act.x] = act.phase(b) * amps_[b];
  amps_.swap(out);
}

void Statevector::apply_pauli_rotation(const PauliString &p, double phi) {
  check_size(*this, p.size());
  const PauliAction act(p);
  const double c = std::cos(phi);
  const Complex is(0.0, std::sin(phi));
  if (act.x == 0) {
    for (std::uint64_t b = 0; b < amps_.size(); ++b) amps_[b] *= c + is * act.phase(b);
    return;
  }
  for (std::uint64_t b = 0; b < amps_.size(); ++b) {
    const std::uint64_t b2 = b ^ act.x;
    if (b2 < b) continue;
    const Complex v0 = amps_[b];
    const Complex v1 = amps_[b2];
    amps_[b] = c * v0 + is * act.phase(b2) * v1;
    amps_[b2] = c * v1 + is * act.phase(b) * v0;
  }
}

void Statevector::apply_sum(const PauliSum &op) {
  check_size(*this, op.n_qubits());
  std::vector<Complex> out(amps_.size());
  for (const auto &[p, coef] : op) {
    const PauliAction act(p);
    for (std::uint64_t b = 0; b < amps_.size(); ++b) {
      out[b ^ act.x] += coef * act.phase(b) * amps_[b];
    }
  }
  amps_.swap(out);
}

void Statevector::apply_h(std::size_t q) {
  const std::uint64_t bit = std::uint64_t{1} << (n_qubits_ - 1 - q);
  const double r = 1.0 / std::sqrt(2.0);
  for (std::uint64_t b = 0; b < amps_.size(); ++b) {
    if (b & bit) continue;
    const Complex a0 = amps_[b];
    const Complex a1 = amps_[b | bit];
    amps_[b] = r * (a0 + a1);
    amps_[b | bit] = r * (a0 - a1);
  }
}

void Statevector::apply_sdg(std::size_t q) {
  const std::uint64_t bit = std::uint64_t{1} << (n_qubits_ - 1 - q);
  for (std::uint64_t b = 0; b < amps_.size(); ++b) {
    if (b & bit) amps_[b] *= Complex(0.0, -1.0);
  }
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t b = 0; b < amps_.size(); ++b) p[b] = std::norm(amps_[b]);
  return p;
}

Statevector hartree_fock_state(std::string_view hf_bitstring) {
  return Statevector::basis_state(hf_bitstring);
}

bool terms_mutually_commute(const PauliSum &generator) {
  for (auto a = generator.begin(); a != generator.end(); ++a) {
    for (auto b = std::next(a); b != generator.end(); ++b) {
      if (!commutes(a->first, b->first)) return false;
    }
  }
  return true;
}

void evolve(Statevector &psi, const PauliSum &generator, double theta) {
  check_size(psi, generator.n_qubits());
  if (!generator.is_anti_hermitian(1e-12)) {
    throw std::invalid_argument("evolve requires an anti-Hermitian generator");
  }
  if (terms_mutually_commute(generator)) {
    // exp(theta * i a P) = cos(theta a) + i sin(theta a) P.
    for (const auto &[p, c] : generator) {
      if (p.is_identity()) continue;  // global phase
      psi.apply_pauli_rotation(p, theta * c.imag());
    }
    return;
  }
  double bound = 0;
  for (const auto &[p, c] : generator) bound += std::abs(theta * c);
  const int steps = std::max(1, static_cast<int>(std::ceil(bound / 0.5)));
  const PauliSum step_gen = generator * Complex(theta / steps, 0.0);
  for (int s = 0; s < steps; ++s) {
    Statevector acc = psi;
    Statevector term = psi;
    for (int k = 1; k < 64; ++k) {
      term.apply_sum(step_gen);
      for (auto &a : term.amplitudes()) a /= static_cast<double>(k);
      for (std::size_t b = 0; b < acc.dim(); ++b) acc.amplitudes()[b] += term[b];
      if (term.norm() < 1e-17) break;
    }
    psi = std::move(acc);
  }
}

Complex expectation(const Statevector &psi, const PauliSum &op) {
  check_size(psi, op.n_qubits());
  Complex total{};
  const auto &amps = psi.amplitudes();
  for (const auto &[p, coef] : op) {
    const PauliAction act(p);
    Complex acc{};
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
      acc += std::conj(amps[b ^ act.x]) * act.phase(b) * amps[b];
    }
    total += coef * acc;
  }
  return total;
}

double expectation_exact(const Statevector &psi, const PauliSum &op) {
  const Complex e = expectation(psi, op);
  if (std::abs(e.imag()) > 1e-8) {
    throw std::domain_error("expectation has imaginary residue " + std::to_string(e.imag()));
  }
  return e.real();
}

double expectation_exact(const Statevector &psi, const PauliString &p) {
  return expectation_exact(psi, PauliSum(p, 1.0));
}

void rotate_to_basis(Statevector &psi, const PauliString &basis) {
  check_size(psi, basis.size());
  for (std::size_t q = 0; q < basis.size(); ++q) {
    if (basis[q] == Pauli::X) {
      psi.apply_h(q);
    } else if (basis[q] == Pauli::Y) {
      psi.apply_sdg(q);
      psi.apply_h(q);
    }
  }
}

void Ansatz::append(const PoolOperator &op) {
  if (!reference_.empty()) {
    for (const PauliSum &g : op.generators) {
      if (g.n_qubits() != reference_.size()) {
        throw std::invalid_argument("pool operator register does not match the reference");
      }
    }
  }
  offsets_.push_back(n_parameters_);
  n_parameters_ += op.n_parameters();
  layers_.push_back(op);
}

PauliSum Ansatz::layer_generator(std::size_t k, const std::vector<double> &theta) const {
  const PoolOperator &op = layers_.at(k);
  PauliSum g(n_qubits());
  for (std::size_t i = 0; i < op.n_parameters(); ++i) {
    g += op.generators[i] * Complex(theta.at(offsets_[k] + i), 0.0);
  }
  return g.pruned(0.0);
}

Statevector Ansatz::prepare(const std::vector<double> &theta) const {
  return prepare(theta, {});
}

Statevector Ansatz::prepare(const std::vector<double> &theta,
                            const std::vector<ErrorEvent> &events) const {
  if (theta.size() != n_parameters_) {
    throw std::invalid_argument("ansatz expects " + std::to_string(n_parameters_) +
                                " parameters, got " + std::to_string(theta.size()));
  }
  std::string reference = reference_;
  auto ev = events.begin();
  // kReferenceLayer sorts last, so scan for resets separately.
  for (const ErrorEvent &e : events) {
    if (e.layer == kReferenceLayer) reference[e.qubit] = '0';
  }
  Statevector psi = Statevector::basis_state(reference);
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const PoolOperator &op = layers_[k];
    if (op.n_parameters() == 1) {
      evolve(psi, op.generators[0], theta[offsets_[k]]);
    } else {
      evolve(psi, layer_generator(k, theta), 1.0);
    }
    while (ev != events.end() && ev->layer < k) ++ev;
    for (; ev != events.end() && ev->layer == k; ++ev) {
      PauliString p(n_qubits());
      p.set(ev->qubit, ev->pauli);
      psi.apply_pauli(p);
    }
  }
  return psi;
}

StateSampler::StateSampler(Statevector state) : ideal_(std::move(state)) {}

StateSampler::StateSampler(const Ansatz &ansatz, std::vector<double> theta, NoiseModel noise)
    : ideal_(ansatz.prepare(theta)),
      ansatz_(ansatz),
      has_ansatz_(true),
      theta_(std::move(theta)),
      noise_(noise) {}

const StateSampler::Cumulative &StateSampler::distribution(
    const std::vector<Ansatz::ErrorEvent> &events, const PauliString &basis) {
  auto key = std::make_pair(events, basis);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  Statevector psi = events.empty() ? ideal_ : ansatz_.prepare(theta_, events);
  rotate_to_basis(psi, basis);
  Cumulative cum(psi.dim());
  double acc = 0;
  for (std::size_t b = 0; b < psi.dim(); ++b) {
    acc += std::norm(psi[b]);
    cum[b] = acc;
  }
  return cache_.emplace(std::move(key), std::move(cum)).first->second;
}

namespace {

std::uint64_t draw_outcome(const std::vector<double> &cum, Rng &rng) {
  std::uniform_real_distribution<double> u(0.0, cum.back());
  const double r = u(rng);
  auto it = std::upper_bound(cum.begin(), cum.end(), r);
  if (it == cum.end()) --it;
  return static_cast<std::uint64_t>(it - cum.begin());
}

// Calls f(slot) for each success among `slots` Bernoulli(p) trials, skipping geometrically.
template <typename F>
void for_each_event(std::size_t slots, double p, Rng &rng, F &&f) {
  if (p <= 0.0 || slots == 0) return;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double log_q = std::log1p(-std::min(p, 1.0 - 1e-16));
  std::size_t pos = 0;
  while (true) {
    const double gap = std::floor(std::log(1.0 - u(rng)) / log_q);
    if (gap >= static_cast<double>(slots - pos)) return;
    pos += static_cast<std::size_t>(gap);
    f(pos);
    if (++pos >= slots) return;
  }
}

}  // namespace

Histogram StateSampler::sample(const PauliString &basis, std::int64_t shots, Rng &rng) {
  if (basis.size() != n_qubits()) {
    throw std::invalid_argument("measurement basis has the wrong qubit count");
  }
  if (shots < 0) throw std::invalid_argument("shot count must be non-negative");
  Histogram h;
  if (shots == 0) return h;
  const std::vector<Ansatz::ErrorEvent> no_events;
  const std::size_t n = n_qubits();
  const bool noisy = has_ansatz_ && noise_.any();

  if (!noisy) {
    // Multinomial draw through conditional binomials.
    const Cumulative &cum = distribution(no_events, basis);
    std::int64_t remaining = shots;
    double remaining_p = cum.back();
    double prev = 0.0;
    for (std::size_t b = 0; b < cum.size() && remaining > 0; ++b) {
      const double p = cum[b] - prev;
      prev = cum[b];
      if (p <= 0.0) continue;
      const double frac = std::clamp(p / remaining_p, 0.0, 1.0);
      std::int64_t k = remaining;
      if (frac < 1.0) k = std::binomial_distribution<std::int64_t>(remaining, frac)(rng);
      if (k > 0) h[b] += k;
      remaining -= k;
      remaining_p -= p;
      if (remaining_p <= 0.0) remaining_p = 0.0;
    }
    if (remaining > 0) h[cum.size() - 1] += remaining;
    return h;
  }

  const std::size_t layers = ansatz_.n_layers();
  std::uniform_int_distribution<int> pick(1, 3);
  std::vector<Ansatz::ErrorEvent> events;
  for (std::int64_t s = 0; s < shots; ++s) {
    events.clear();
    for_each_event(n, noise_.reset, rng, [&](std::size_t q) {
      events.push_back({Ansatz::kReferenceLayer, q, Pauli::I});
    });
    for_each_event(n * layers, noise_.gate, rng, [&](std::size_t slot) {
      events.push_back({slot / n, slot % n, static_cast<Pauli>(pick(rng))});
    });
    for_each_event(n * layers, noise_.phase, rng, [&](std::size_t slot) {
      events.push_back({slot / n, slot % n, Pauli::Z});
    });
    std::sort(events.begin(), events.end());
    std::uint64_t outcome = draw_outcome(distribution(events, basis), rng);
    for_each_event(n, noise_.measurement, rng, [&](std::size_t q) {
      outcome ^= std::uint64_t{1} << (n - 1 - q);
    });
    ++h[outcome];
  }
  return h;
}

Histogram sample_in_basis(const Statevector &psi, const PauliString &basis, std::int64_t shots,
                          std::uint64_t seed) {
  Rng rng(seed);
  StateSampler sampler(psi);
  return sampler.sample(basis, shots, rng);
}

}  // namespace shotadapt
