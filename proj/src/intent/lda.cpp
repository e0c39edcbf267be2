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

#include "negotiation/intent/lda.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "negotiation/core/errors.hpp"

namespace negotiation::intent {

LdaModel::LdaModel(std::vector<GoalIndex> classes, Eigen::MatrixXd means, Eigen::MatrixXd covariance,
                   Eigen::MatrixXd cov_inverse, Eigen::VectorXd priors, double lambda,
                   int feature_schema_version)
  : classes_(std::move(classes)),
    means_(std::move(means)),
    covariance_(std::move(covariance)),
    cov_inverse_(std::move(cov_inverse)),
    priors_(std::move(priors)),
    lambda_(lambda),
    schema_version_(feature_schema_version)
{
  const auto k = static_cast<Eigen::Index>(classes_.size());
  if (means_.rows() != k || priors_.size() != k || cov_inverse_.rows() != means_.cols() ||
      cov_inverse_.cols() != means_.cols()) {
    throw ConfigError("LDA model parameters have inconsistent shapes");
  }
  coef_ = means_ * cov_inverse_;  // S^-1 is symmetric
  bias_.resize(k);
  for (Eigen::Index c = 0; c < k; ++c) {
    bias_(c) = -0.5 * coef_.row(c).dot(means_.row(c)) + std::log(priors_(c));
  }
}

std::size_t LdaModel::goal_slots() const
{
  if (classes_.empty()) {
    return 0;
  }
  return *std::max_element(classes_.begin(), classes_.end()) + 1;
}

Eigen::VectorXd LdaModel::discriminants(const Eigen::Ref<const Eigen::VectorXd>& x) const
{
  return coef_ * x + bias_;
}

LdaModel lda_fit(const Eigen::MatrixXd& samples, std::span<const GoalIndex> labels,
                 std::optional<double> lambda, double ridge_scale)
{
  const auto n = samples.rows();
  const auto p = samples.cols();
  if (static_cast<std::size_t>(n) != labels.size()) {
    throw InsufficientData("sample and label counts differ");
  }

  // Canonical row order: by label, then lexicographically by value.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (labels[a] != labels[b]) {
      return labels[a] < labels[b];
    }
    for (Eigen::Index j = 0; j < p; ++j) {
      if (samples(a, j) != samples(b, j)) {
        return samples(a, j) < samples(b, j);
      }
    }
    return false;
  });

  std::map<GoalIndex, std::vector<Eigen::Index>> by_class;
  for (Eigen::Index row : order) {
    by_class[labels[row]].push_back(row);
  }
  if (by_class.size() < 2) {
    throw InsufficientData("LDA needs at least two classes");
  }
  for (const auto& [label, rows] : by_class) {
    if (static_cast<Eigen::Index>(rows.size()) < p + 1) {
      throw InsufficientData("class " + goal_name(label) + " has " + std::to_string(rows.size()) +
                             " samples, needs at least " + std::to_string(p + 1));
    }
  }

  const auto k = static_cast<Eigen::Index>(by_class.size());
  std::vector<GoalIndex> classes;
  Eigen::MatrixXd means = Eigen::MatrixXd::Zero(k, p);
  Eigen::VectorXd priors(k);
  Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(p, p);

  Eigen::Index c = 0;
  for (const auto& [label, rows] : by_class) {
    classes.push_back(label);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(p);
    for (Eigen::Index row : rows) {
      mean += samples.row(row).transpose();
    }
    mean /= static_cast<double>(rows.size());
    means.row(c) = mean.transpose();
    priors(c) = static_cast<double>(rows.size()) / static_cast<double>(n);
    for (Eigen::Index row : rows) {
      const Eigen::VectorXd d = samples.row(row).transpose() - mean;
      scatter.noalias() += d * d.transpose();
    }
    ++c;
  }

  Eigen::MatrixXd cov = scatter / static_cast<double>(n - k);
  const double reg = lambda.value_or(ridge_scale * cov.trace() / static_cast<double>(p));
  if (reg < 0.0) {
    throw ConfigError("regularization must be non-negative");
  }
  cov.diagonal().array() += reg;

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
  const double max_ev = eig.eigenvalues().maxCoeff();
  const double min_ev = eig.eigenvalues().minCoeff();
  if (!(max_ev > 0.0) || !(min_ev > 1e-12 * max_ev)) {
    throw SingularCovariance("pooled covariance is not positive definite (min eigenvalue " +
                             std::to_string(min_ev) + ")");
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(p, p));
  inv = 0.5 * (inv + inv.transpose());

  return LdaModel(std::move(classes), std::move(means), std::move(cov), std::move(inv),
                  std::move(priors), reg);
}

LdaModel lda_fit(std::span<const LabeledFeatures> samples, std::optional<double> lambda, double ridge_scale)
{
  Eigen::MatrixXd x(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(kFeatureCount));
  std::vector<GoalIndex> labels;
  labels.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = samples[i].x[j];
    }
    labels.push_back(samples[i].label);
  }
  return lda_fit(x, labels, lambda, ridge_scale);
}

IntentEstimate lda_predict(const LdaModel& model, const Eigen::Ref<const Eigen::VectorXd>& x, double t)
{
  const Eigen::VectorXd delta = model.discriminants(x);
  Eigen::Index best = 0;
  const double top = delta.maxCoeff(&best);
  const Eigen::VectorXd w = (delta.array() - top).exp();
  const double z = w.sum();

  IntentEstimate est;
  est.t = t;
  est.label = model.classes()[static_cast<std::size_t>(best)];
  est.posteriors.assign(model.goal_slots(), 0.0);
  for (std::size_t c = 0; c < model.class_count(); ++c) {
    est.posteriors[model.classes()[c]] = w(static_cast<Eigen::Index>(c)) / z;
  }
  return est;
}

IntentEstimate lda_predict(const LdaModel& model, const FeatureVector& x, double t)
{
  const Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
  return lda_predict(model, v, t);
}

}  // namespace negotiation::intent
