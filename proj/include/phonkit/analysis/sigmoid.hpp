/* Copyright 2026 The phonkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "phonkit/core/error.hpp"

namespace phonkit::analysis {

struct SigmoidParams {
  double L = 1.0;
  double k = 1.0;
  double x0 = 0.0;
};

// f(x) = L / (1 + exp(-k (x - x0)))
inline double sigmoid(const SigmoidParams& p, double x) {
  return p.L / (1.0 + std::exp(-p.k * (x - p.x0)));
}

// Gradient of f with respect to (L, k, x0).
inline Eigen::Vector3d sigmoid_gradient(const SigmoidParams& p, double x) {
  double s = 1.0 / (1.0 + std::exp(-p.k * (x - p.x0)));
  double ds = s * (1.0 - s);
  return {s, p.L * (x - p.x0) * ds, -p.L * p.k * ds};
}

struct SigmoidFit {
  SigmoidParams params;
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
  bool covariance_valid = false;
  std::optional<double> r2;
  double sse = 0.0;
  std::size_t n_points = 0;
  bool converged = false;
  int iterations = 0;

  double operator()(double x) const { return sigmoid(params, x); }
  double standard_error(int i) const {
    return covariance_valid ? std::sqrt(std::max(0.0, covariance(i, i))) : NAN;
  }
};

struct FitOptions {
  std::optional<SigmoidParams> init;
  int max_iterations = 200;
  double tolerance = 1e-10;
  double lambda0 = 1e-3;
  double max_L = 1.5;
};

// 1 - SS_res / SS_tot; nullopt when the observations have no variance.
inline std::optional<double> r_squared(const SigmoidParams& p, std::span<const double> xs,
                                       std::span<const double> ys) {
  if (xs.empty()) return std::nullopt;
  double mean = 0.0;
  for (double y : ys) mean += y;
  mean /= static_cast<double>(ys.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - sigmoid(p, xs[i]);
    ss_res += r * r;
    ss_tot += (ys[i] - mean) * (ys[i] - mean);
  }
  if (ss_tot == 0.0) return std::nullopt;
  return 1.0 - ss_res / ss_tot;
}

namespace detail {

struct LmRun {
  SigmoidParams params;
  double sse;
  bool converged;
  int iterations;
};

inline double weighted_sse(const SigmoidParams& p, std::span<const double> xs,
                           std::span<const double> ys, std::span<const double> ws) {
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - sigmoid(p, xs[i]);
    s += (ws.empty() ? 1.0 : ws[i]) * r * r;
  }
  return s;
}

inline SigmoidParams project(SigmoidParams p, double max_L) {
  p.L = std::clamp(p.L, 1e-9, max_L);
  p.k = std::max(p.k, 0.0);
  return p;
}

// Levenberg-Marquardt with Marquardt scaling: solves
// (J^T W J + lambda diag(J^T W J)) delta = J^T W r, accepting a step only if
// it lowers the objective. Parameters are projected onto the bounds after
// every step.
inline LmRun levenberg_marquardt(SigmoidParams p, std::span<const double> xs,
                                 std::span<const double> ys, std::span<const double> ws,
                                 const FitOptions& opt) {
  p = project(p, opt.max_L);
  double sse = weighted_sse(p, xs, ys, ws);
  double lambda = opt.lambda0;
  int it = 0;
  bool converged = false;
  while (it < opt.max_iterations) {
    ++it;
    Eigen::Matrix3d JtJ = Eigen::Matrix3d::Zero();
    Eigen::Vector3d Jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      Eigen::Vector3d g = sigmoid_gradient(p, xs[i]);
      double w = ws.empty() ? 1.0 : ws[i];
      JtJ.noalias() += w * g * g.transpose();
      Jtr += w * (ys[i] - sigmoid(p, xs[i])) * g;
    }
    if (sse < 1e-28) {
      converged = true;
      break;
    }
    bool accepted = false;
    while (lambda <= 1e15) {
      Eigen::Matrix3d A = JtJ;
      for (int d = 0; d < 3; ++d) A(d, d) += lambda * std::max(JtJ(d, d), 1e-12);
      Eigen::Vector3d delta = A.ldlt().solve(Jtr);
      if (!delta.allFinite()) {
        lambda *= 10.0;
        continue;
      }
      SigmoidParams trial =
          project({p.L + delta(0), p.k + delta(1), p.x0 + delta(2)}, opt.max_L);
      double trial_sse = weighted_sse(trial, xs, ys, ws);
      if (std::isfinite(trial_sse) && trial_sse < sse) {
        double rel = (sse - trial_sse) / std::max(sse, 1e-300);
        p = trial;
        sse = trial_sse;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        if (rel < opt.tolerance) converged = true;
        break;
      }
      lambda *= 10.0;
    }
    // No downhill step at any damping: a stationary point within precision.
    if (!accepted) converged = true;
    if (converged) break;
  }
  return {p, sse, converged, it};
}

}  // namespace detail

// Least-squares logistic fit. Without an explicit start the default
// (L = max y, k = 1, x0 = median x) is tried first, followed by a small grid
// of (k, x0) restarts; the lowest objective wins. `weights` may be empty.
inline SigmoidFit fit_sigmoid(std::span<const double> xs, std::span<const double> ys,
                              std::span<const double> weights = {},
                              const FitOptions& opt = {}) {
  if (xs.size() != ys.size() || (!weights.empty() && weights.size() != xs.size())) {
    throw ShapeError("fit_sigmoid: inputs differ in length");
  }
  const std::size_t n = xs.size();
  if (n < 4) {
    throw InsufficientPoints("need at least 4 points for a 3-parameter fit, got " +
                             std::to_string(n));
  }
  std::set<double> distinct(xs.begin(), xs.end());
  if (distinct.size() == 1) throw DegenerateJacobian("all x values are equal");
  if (distinct.size() < 4) {
    throw InsufficientPoints("need at least 4 distinct x values, got " +
                             std::to_string(distinct.size()));
  }

  std::vector<SigmoidParams> starts;
  std::vector<double> sorted_x(xs.begin(), xs.end());
  std::sort(sorted_x.begin(), sorted_x.end());
  double median = n % 2 ? sorted_x[n / 2] : 0.5 * (sorted_x[n / 2 - 1] + sorted_x[n / 2]);
  double max_y = *std::max_element(ys.begin(), ys.end());
  if (max_y <= 0.0) max_y = 0.5;
  if (opt.init) {
    starts.push_back(*opt.init);
  } else {
    starts.push_back({max_y, 1.0, median});
    const double lo = sorted_x.front(), hi = sorted_x.back();
    for (double k : {0.5, 2.0, 5.0, 10.0}) {
      for (double q : {0.125, 0.375, 0.625, 0.875}) {
        starts.push_back({max_y, k, lo + q * (hi - lo)});
      }
    }
  }

  std::optional<detail::LmRun> best;
  for (const auto& s : starts) {
    auto run = detail::levenberg_marquardt(s, xs, ys, weights, opt);
    if (!best || run.sse < best->sse) best = run;
    if (best->sse < 1e-28) break;
  }

  SigmoidFit fit;
  fit.params = best->params;
  fit.sse = best->sse;
  fit.converged = best->converged;
  fit.iterations = best->iterations;
  fit.n_points = n;
  fit.r2 = r_squared(fit.params, xs, ys);

  Eigen::Matrix3d JtJ = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::Vector3d g = sigmoid_gradient(fit.params, xs[i]);
    JtJ.noalias() += (weights.empty() ? 1.0 : weights[i]) * g * g.transpose();
  }
  Eigen::FullPivLU<Eigen::Matrix3d> lu(JtJ);
  lu.setThreshold(1e-12);
  if (lu.rank() == 3) {
    double sigma2 = fit.sse / static_cast<double>(n - 3);
    fit.covariance = sigma2 * lu.inverse();
    fit.covariance = 0.5 * (fit.covariance + fit.covariance.transpose()).eval();
    fit.covariance_valid = fit.covariance.allFinite();
  }
  return fit;
}

inline SigmoidFit fit_sigmoid(const std::vector<double>& xs, const std::vector<double>& ys,
                              const std::vector<double>& weights = {},
                              const FitOptions& opt = {}) {
  return fit_sigmoid(std::span<const double>(xs), std::span<const double>(ys),
                     std::span<const double>(weights), opt);
}

struct BandPoint {
  double x;
  double f;
  double lower;
  double upper;
};

inline constexpr double kZ95 = 1.96;

// Delta-method band: f(x) +- 1.96 sqrt(g^T C g), g the parameter gradient.
inline std::vector<BandPoint> confidence_band(const SigmoidFit& fit,
                                              std::span<const double> grid) {
  if (!fit.covariance_valid) {
    throw SingularCovariance("J^T J is singular at the fitted parameters");
  }
  std::vector<BandPoint> out;
  out.reserve(grid.size());
  for (double x : grid) {
    Eigen::Vector3d g = sigmoid_gradient(fit.params, x);
    double var = std::max(0.0, g.dot(fit.covariance * g));
    double f = sigmoid(fit.params, x);
    double half = kZ95 * std::sqrt(var);
    out.push_back({x, f, f - half, f + half});
  }
  return out;
}

inline std::vector<BandPoint> confidence_band(const SigmoidFit& fit,
                                              const std::vector<double>& grid) {
  return confidence_band(fit, std::span<const double>(grid));
}

// `count` evenly spaced points on [lo, hi].
inline std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return g;
}

}  // namespace phonkit::analysis
