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

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "negotiation/core/goals.hpp"
#include "negotiation/intent/features.hpp"

namespace negotiation::intent {

/// Classifier output for one sample. An idle estimate has no label and empty
/// posteriors.
struct IntentEstimate {
  std::optional<GoalIndex> label;
  std::vector<double> posteriors;  // indexed by goal
  double t{0.0};

  bool idle() const { return !label.has_value(); }
  static IntentEstimate idle_at(double t) { return {std::nullopt, {}, t}; }
};

struct LabeledFeatures {
  FeatureVector x;
  GoalIndex label{0};
};

/// Linear discriminant analysis with a shared (pooled, ridge-regularized)
/// covariance. Immutable once fitted.
class LdaModel {
 public:
  LdaModel() = default;
  /// Assembles a model from stored parameters; precomputes the discriminant
  /// coefficients. `covariance` may be empty when only the inverse is known.
  LdaModel(std::vector<GoalIndex> classes, Eigen::MatrixXd means, Eigen::MatrixXd covariance,
           Eigen::MatrixXd cov_inverse, Eigen::VectorXd priors, double lambda,
           int feature_schema_version = kFeatureSchemaVersion);

  std::size_t dimension() const { return static_cast<std::size_t>(means_.cols()); }
  std::size_t class_count() const { return classes_.size(); }
  /// Number of goal slots in the posterior vector (largest class label + 1).
  std::size_t goal_slots() const;

  const std::vector<GoalIndex>& classes() const { return classes_; }
  const Eigen::MatrixXd& means() const { return means_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }
  const Eigen::MatrixXd& cov_inverse() const { return cov_inverse_; }
  const Eigen::VectorXd& priors() const { return priors_; }
  double lambda() const { return lambda_; }
  int feature_schema_version() const { return schema_version_; }

  /// delta_c(x) = x' S^-1 mu_c - 0.5 mu_c' S^-1 mu_c + log pi_c, one per class.
  Eigen::VectorXd discriminants(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  std::vector<GoalIndex> classes_;
  Eigen::MatrixXd means_;  // K x p
  Eigen::MatrixXd covariance_;  // p x p, regularized
  Eigen::MatrixXd cov_inverse_;  // p x p
  Eigen::VectorXd priors_;  // K
  double lambda_{0.0};
  int schema_version_{kFeatureSchemaVersion};

  Eigen::MatrixXd coef_;  // K x p, rows are S^-1 mu_c
  Eigen::VectorXd bias_;  // K
};

/// Fits class means, the pooled within-class covariance plus lambda*I, and
/// empirical priors. With no lambda given, lambda = ridge_scale * trace(S) / p.
/// Rows are summed in a canonical order, so the model does not depend on the
/// order of the input samples.
/// Throws InsufficientData with fewer than two classes or fewer than p + 1
/// samples in any class, SingularCovariance when the regularized covariance
/// is not positive definite.
inline constexpr double kDefaultRidgeScale = 1e-6;

LdaModel lda_fit(const Eigen::MatrixXd& samples, std::span<const GoalIndex> labels,
                 std::optional<double> lambda = std::nullopt, double ridge_scale = kDefaultRidgeScale);

LdaModel lda_fit(std::span<const LabeledFeatures> samples, std::optional<double> lambda = std::nullopt,
                 double ridge_scale = kDefaultRidgeScale);

IntentEstimate lda_predict(const LdaModel& model, const Eigen::Ref<const Eigen::VectorXd>& x,
                           double t = 0.0);

IntentEstimate lda_predict(const LdaModel& model, const FeatureVector& x, double t = 0.0);

}  // namespace negotiation::intent
