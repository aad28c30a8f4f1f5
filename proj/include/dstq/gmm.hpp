// Copyright 2026 The dstq Authors
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

#include <cstddef>
#include <span>
#include <vector>

namespace dstq {

struct GaussianComponent {
  double weight = 1.0;
  double mean = 0.0;
  double variance = 1.0;

  bool operator==(const GaussianComponent&) const = default;
};

/// One-dimensional Gaussian mixture. Weights sum to one; variances are
/// positive.
class GmmModel {
 public:
  explicit GmmModel(std::vector<GaussianComponent> components);

  const std::vector<GaussianComponent>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }

  bool operator==(const GmmModel&) const = default;

 private:
  std::vector<GaussianComponent> components_;
};

/// Density of the mixture at x.
double gmm_pdf(const GmmModel& model, double x);

double gmm_log_likelihood(const GmmModel& model, std::span<const double> samples);

struct EmConfig {
  double tolerance = 1e-6;         // stop when |delta log-likelihood| falls below
  std::size_t max_iterations = 200;
  double variance_floor_ratio = 1e-6;  // floor = ratio * data variance
  double min_variance_floor = 1e-12;
};

struct GmmFit {
  GmmModel model;
  /// Log-likelihood of the initial parameters followed by one entry per
  /// completed EM iteration.
  std::vector<double> log_likelihood;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Expectation-maximization fit of an N-component mixture.
///
/// Initialization is deterministic: means at the sample quantiles
/// (k + 1) / (N + 1), every variance at the sample variance, uniform
/// weights. Variances are clamped to the floor after every M-step.
GmmFit fit_gmm_em(std::span<const double> samples, std::size_t components, const EmConfig& config = {});

}  // namespace dstq
