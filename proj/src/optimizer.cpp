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

#include "shotadapt/optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace shotadapt {

std::string stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::kGradient:
      return "gradient";
    case StopReason::kNoiseFloor:
      return "noise_floor";
    case StopReason::kPredictedDecrease:
      return "predicted_decrease";
    case StopReason::kLineSearch:
      return "line_search";
    case StopReason::kMaxIterations:
      return "max_iterations";
  }
  return "?";
}

std::vector<double> central_gradient(const Objective &f, const std::vector<double> &x, double h,
                                     int &evaluations, std::vector<double> *std_errors) {
  std::vector<double> g(x.size());
  if (std_errors) std_errors->assign(x.size(), 0.0);
  std::vector<double> xp = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h;
    const Evaluation up = f(xp);
    xp[i] = x[i] - h;
    const Evaluation down = f(xp);
    xp[i] = x[i];
    evaluations += 2;
    g[i] = (up.value - down.value) / (2.0 * h);
    if (std_errors) (*std_errors)[i] = std::sqrt(up.variance + down.variance) / (2.0 * h);
  }
  return g;
}

namespace {

double dot(const std::vector<double> &a, const std::vector<double> &b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(const std::vector<double> &v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

BfgsResult minimize_bfgs(const Objective &f, std::vector<double> x0, const BfgsOptions &options) {
  const std::size_t n = x0.size();
  BfgsResult res;
  res.x = std::move(x0);
  Evaluation fx = f(res.x);
  res.evaluations = 1;
  res.value = fx.value;
  if (n == 0) {
    res.reason = StopReason::kGradient;
    return res;
  }

  // Row-major inverse-Hessian approximation.
  std::vector<double> hinv(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = 1.0;
  bool scaled = false;

  std::vector<double> se;
  std::vector<double> g = central_gradient(f, res.x, options.fd_step, res.evaluations, &se);
  for (res.iterations = 0; res.iterations < options.max_iterations; ++res.iterations) {
    const double gnorm = inf_norm(g);
    if (gnorm < options.gtol) {
      res.reason = StopReason::kGradient;
      return res;
    }
    if (options.noise_z > 0.0) {
      bool within_noise = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(g[i]) > options.noise_z * se[i]) within_noise = false;
      }
      if (within_noise) {
        res.reason = StopReason::kNoiseFloor;
        return res;
      }
    }

    std::vector<double> d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i] -= hinv[i * n + j] * g[j];
    }
    double slope = dot(g, d);
    if (scaled && slope < 0.0 && -0.5 * slope < options.energy_tol) {
      res.reason = StopReason::kPredictedDecrease;
      return res;
    }
    if (slope >= 0.0) {
      // Lost descent direction: restart from steepest descent.
      std::fill(hinv.begin(), hinv.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = 1.0;
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
      slope = dot(g, d);
    }

    double alpha = 1.0;
    std::vector<double> x_new(n);
    Evaluation f_new;
    bool accepted = false;
    for (int b = 0; b <= options.max_backtracks; ++b, alpha *= 0.5) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = res.x[i] + alpha * d[i];
      f_new = f(x_new);
      ++res.evaluations;
      // Noisy objectives: sufficient decrease is only required up to the estimated noise level.
      const double relax = options.line_search_noise_z * std::sqrt(fx.variance + f_new.variance);
      if (f_new.value <= fx.value + options.armijo * alpha * slope + relax) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      res.reason = StopReason::kLineSearch;
      return res;
    }

    std::vector<double> g_new = central_gradient(f, x_new, options.fd_step, res.evaluations, &se);
    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = x_new[i] - res.x[i];
      y[i] = g_new[i] - g[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-14) {
      if (!scaled) {
        const double gamma = sy / dot(y, y);
        for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = gamma;
        scaled = true;
      }
      // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T.
      const double rho = 1.0 / sy;
      std::vector<double> hy(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) hy[i] += hinv[i * n + j] * y[j];
      }
      const double yhy = dot(y, hy);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          hinv[i * n + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) +
                             (rho * rho * yhy + rho) * s[i] * s[j];
        }
      }
    }
    res.x = std::move(x_new);
    fx = f_new;
    res.value = fx.value;
    g = std::move(g_new);
  }
  res.reason = StopReason::kMaxIterations;
  return res;
}

}  // namespace shotadapt
