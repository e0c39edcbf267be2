// Copyright 2026 The negotiation_sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Reference computations written independently of the library code they
// check: closed forms where one exists, textbook formulas otherwise.

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "negotiation/intent/lda.hpp"

namespace oracle {

/// |H(f)| of an order-n digital Butterworth low-pass designed with the
/// bilinear transform and pre-warping.
inline double butterworth_magnitude(double f, double fc, double fs, int order)
{
  const double r = std::tan(std::numbers::pi * f / fs) / std::tan(std::numbers::pi * fc / fs);
  return 1.0 / std::sqrt(1.0 + std::pow(r, 2 * order));
}

/// Speed after k steps of the discrete admittance law from rest under a
/// constant force f: v_k = f/b * (1 - (m / (m + dt b))^k).
inline double admittance_speed(double f, double m, double b, double dt, int k)
{
  return f / b * (1.0 - std::pow(m / (m + dt * b), k));
}

/// Fraction of a step reference reached after k Euler steps of a first-order lag.
inline double lag_fraction(double dt, double tau, int k) { return 1.0 - std::pow(1.0 - dt / tau, k); }

/// Wilson score interval from the textbook formula.
inline std::pair<double, double> wilson(double k, double n, double z)
{
  const double p = k / n;
  const double denom = 1.0 + z * z / n;
  const double centre = p + z * z / (2.0 * n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
  return {(centre - half) / denom, (centre + half) / denom};
}

/// Maximum a posteriori class under Gaussians with a shared covariance,
/// computed from the raw samples: per-class means by explicit summation,
/// pooled within-class scatter over N - K, a ridge of ridge_scale * trace / p,
/// then argmax of log prior - squared Mahalanobis distance / 2.
class GaussianMap {
 public:
  GaussianMap(const std::vector<Eigen::VectorXd>& xs, const std::vector<std::size_t>& ys, double ridge_scale)
  {
    const auto p = xs.front().size();
    std::map<std::size_t, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      by_class[ys[i]].push_back(i);
    }
    Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(p, p);
    for (const auto& [c, idx] : by_class) {
      Eigen::VectorXd mu = Eigen::VectorXd::Zero(p);
      for (auto i : idx) {
        mu += xs[i];
      }
      mu /= static_cast<double>(idx.size());
      for (auto i : idx) {
        const Eigen::VectorXd d = xs[i] - mu;
        scatter += d * d.transpose();
      }
      classes_.push_back(c);
      means_.push_back(mu);
      log_priors_.push_back(std::log(static_cast<double>(idx.size()) / static_cast<double>(xs.size())));
    }
    Eigen::MatrixXd cov = scatter / static_cast<double>(xs.size() - by_class.size());
    cov += Eigen::MatrixXd::Identity(p, p) * (ridge_scale * cov.trace() / static_cast<double>(p));
    llt_ = cov.llt();
  }

  std::size_t classify(const Eigen::VectorXd& x) const
  {
    std::size_t best = 0;
    double best_score = -INFINITY;
    for (std::size_t k = 0; k < classes_.size(); ++k) {
      const Eigen::VectorXd d = x - means_[k];
      const double score = log_priors_[k] - 0.5 * d.dot(llt_.solve(d));
      if (score > best_score) {
        best_score = score;
        best = k;
      }
    }
    return classes_[best];
  }

  /// Gap between the best and second-best score; near-ties are excluded from
  /// exact comparisons.
  double margin(const Eigen::VectorXd& x) const
  {
    std::vector<double> s;
    for (std::size_t k = 0; k < classes_.size(); ++k) {
      const Eigen::VectorXd d = x - means_[k];
      s.push_back(log_priors_[k] - 0.5 * d.dot(llt_.solve(d)));
    }
    std::sort(s.begin(), s.end(), std::greater<>());
    return s.size() > 1 ? s[0] - s[1] : INFINITY;
  }

 private:
  std::vector<std::size_t> classes_;
  std::vector<Eigen::VectorXd> means_;
  std::vector<double> log_priors_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

/// Gaussian blobs around well separated centres, one per class, in p dimensions.
struct Blobs {
  std::vector<Eigen::VectorXd> xs;
  std::vector<std::size_t> ys;
};

inline Blobs make_blobs(std::size_t per_class, std::size_t n_classes, std::size_t p, double spread, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  std::vector<Eigen::VectorXd> centres;
  for (std::size_t c = 0; c < n_classes; ++c) {
    Eigen::VectorXd mu(p);
    for (std::size_t j = 0; j < p; ++j) {
      mu(static_cast<Eigen::Index>(j)) = 3.0 * n01(rng);
    }
    centres.push_back(mu);
  }
  // A shared random linear mixing gives correlated features.
  Eigen::MatrixXd mix(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      mix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (i == j ? 1.0 : 0.3) * n01(rng);
    }
  }
  Blobs b;
  for (std::size_t c = 0; c < n_classes; ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      Eigen::VectorXd z(p);
      for (std::size_t j = 0; j < p; ++j) {
        z(static_cast<Eigen::Index>(j)) = spread * n01(rng);
      }
      b.xs.push_back(centres[c] + mix * z);
      b.ys.push_back(c);
    }
  }
  return b;
}

}  // namespace oracle
