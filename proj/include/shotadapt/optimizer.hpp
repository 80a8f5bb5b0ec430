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

#include <functional>
#include <string>
#include <vector>

namespace shotadapt {

/// Objective value with an optional variance estimate (zero for exact objectives).
struct Evaluation {
  double value = 0.0;
  double variance = 0.0;
};

using Objective = std::function<Evaluation(const std::vector<double> &)>;

struct BfgsOptions {
  /// Central-difference step.
  double fd_step = 1e-4;
  /// Stop when the gradient infinity norm falls below this.
  double gtol = 1e-8;
  /// Also stop when the gradient infinity norm is within noise_z standard errors of zero
  /// (only meaningful when the objective reports variances).
  double noise_z = 0.0;
  /// Stop when the quasi-Newton predicted decrease g^T H^-1 g / 2 falls below this (0 disables).
  /// Checked only once a curvature pair has been absorbed.
  double energy_tol = 0.0;
  /// Armijo test relaxed by this many standard deviations of the two compared values.
  double line_search_noise_z = 0.0;
  int max_iterations = 500;
  int max_backtracks = 12;
  double armijo = 1e-4;
};

enum class StopReason { kGradient, kNoiseFloor, kPredictedDecrease, kLineSearch, kMaxIterations };

std::string stop_reason_name(StopReason r);

struct BfgsResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  StopReason reason = StopReason::kMaxIterations;
};

/// Quasi-Newton minimisation with central-difference gradients and Armijo backtracking.
BfgsResult minimize_bfgs(const Objective &f, std::vector<double> x0, const BfgsOptions &options);

/// Central-difference gradient; also returns the gradient standard errors from the variances.
std::vector<double> central_gradient(const Objective &f, const std::vector<double> &x, double h,
                                     int &evaluations, std::vector<double> *std_errors = nullptr);

}  // namespace shotadapt
