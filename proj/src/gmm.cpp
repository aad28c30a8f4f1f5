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

#include "dstq/gmm.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dstq/error.hpp"

namespace dstq {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454835606594728112;

double log_normal(double x, double mean, double variance) {
  const double d = x - mean;
  return -0.5 * (kLogTwoPi + std::log(variance) + d * d / variance);
}

double log_sum_exp(const double* v, std::size_t n) {
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) hi = std::max(hi, v[k]);
  if (!std::isfinite(hi)) return hi;
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += std::exp(v[k] - hi);
  return hi + std::log(s);
}

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double t = pos - static_cast<double>(lo);
  return sorted[lo] + t * (sorted[hi] - sorted[lo]);
}

// log(w_k) + log N(x_l | mu_k, var_k) for every sample and component.
Eigen::MatrixXd joint_log_density(const GmmModel& model, std::span<const double> samples) {
  const auto L = static_cast<Eigen::Index>(samples.size());
  const auto N = static_cast<Eigen::Index>(model.size());
  Eigen::MatrixXd out(L, N);
  for (Eigen::Index k = 0; k < N; ++k) {
    const auto& c = model.components()[static_cast<std::size_t>(k)];
    const double log_w = c.weight > 0.0 ? std::log(c.weight) : -std::numeric_limits<double>::infinity();
    for (Eigen::Index l = 0; l < L; ++l) {
      out(l, k) = log_w + log_normal(samples[static_cast<std::size_t>(l)], c.mean, c.variance);
    }
  }
  return out;
}

}  // namespace

GmmModel::GmmModel(std::vector<GaussianComponent> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("a mixture needs at least one component");
  double total = 0.0;
  for (const auto& c : components_) {
    if (!(c.weight >= 0.0) || !(c.variance > 0.0) || !std::isfinite(c.mean) || !std::isfinite(c.variance)) {
      throw std::invalid_argument("invalid mixture component");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("mixture weights sum to " + std::to_string(total));
  }
}

double gmm_pdf(const GmmModel& model, double x) {
  double density = 0.0;
  for (const auto& c : model.components()) {
    const double d = x - c.mean;
    density += c.weight / std::sqrt(2.0 * std::numbers::pi * c.variance) * std::exp(-d * d / (2.0 * c.variance));
  }
  return density;
}

double gmm_log_likelihood(const GmmModel& model, std::span<const double> samples) {
  Eigen::MatrixXd joint = joint_log_density(model, samples);
  Eigen::MatrixXd rows = joint.transpose();  // column-major: one sample per column
  double ll = 0.0;
  for (Eigen::Index l = 0; l < rows.cols(); ++l) {
    ll += log_sum_exp(rows.col(l).data(), static_cast<std::size_t>(rows.rows()));
  }
  return ll;
}

GmmFit fit_gmm_em(std::span<const double> samples, std::size_t components, const EmConfig& config) {
  if (samples.empty()) throw std::invalid_argument("EM needs at least one sample");
  if (components == 0) throw std::invalid_argument("EM needs at least one component");
  if (samples.size() < components) {
    throw std::invalid_argument("EM needs at least as many samples (" + std::to_string(samples.size()) +
                                ") as components (" + std::to_string(components) + ")");
  }
  const auto L = static_cast<double>(samples.size());
  const auto N = static_cast<Eigen::Index>(components);

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= L;
  double data_variance = 0.0;
  for (double x : samples) data_variance += (x - mean) * (x - mean);
  data_variance /= L;
  const double floor = std::max(config.variance_floor_ratio * data_variance, config.min_variance_floor);

  std::vector<GaussianComponent> init;
  for (std::size_t k = 0; k < components; ++k) {
    const double q = static_cast<double>(k + 1) / static_cast<double>(components + 1);
    init.push_back({1.0 / static_cast<double>(components), quantile(sorted, q), std::max(data_variance, floor)});
  }
  // Uniform weights may not sum to exactly 1 in floating point.
  init.back().weight = 1.0 - static_cast<double>(components - 1) / static_cast<double>(components);

  GmmFit fit{GmmModel(std::move(init)), {}, 0, false};
  double previous = gmm_log_likelihood(fit.model, samples);
  fit.log_likelihood.push_back(previous);

  Eigen::MatrixXd gamma;
  for (std::size_t it = 0; it < config.max_iterations; ++it) {
    // E-step: responsibilities gamma(l, k).
    gamma = joint_log_density(fit.model, samples);
    for (Eigen::Index l = 0; l < gamma.rows(); ++l) {
      Eigen::VectorXd row = gamma.row(l).transpose();
      const double norm = log_sum_exp(row.data(), static_cast<std::size_t>(row.size()));
      gamma.row(l) = (row.array() - norm).exp().matrix().transpose();
    }

    // M-step.
    std::vector<GaussianComponent> next = fit.model.components();
    double weight_total = 0.0;
    for (Eigen::Index k = 0; k < N; ++k) {
      auto& c = next[static_cast<std::size_t>(k)];
      const double nk = gamma.col(k).sum();
      if (nk <= std::numeric_limits<double>::min()) {
        c.weight = 0.0;  // component lost all support; keep its shape
        continue;
      }
      double mu = 0.0;
      for (std::size_t l = 0; l < samples.size(); ++l) mu += gamma(static_cast<Eigen::Index>(l), k) * samples[l];
      mu /= nk;
      double var = 0.0;
      for (std::size_t l = 0; l < samples.size(); ++l) {
        const double d = samples[l] - mu;
        var += gamma(static_cast<Eigen::Index>(l), k) * d * d;
      }
      var /= nk;
      c.weight = nk / L;
      c.mean = mu;
      c.variance = std::max(var, floor);
      weight_total += c.weight;
    }
    for (auto& c : next) c.weight /= weight_total;

    fit.model = GmmModel(std::move(next));
    const double current = gmm_log_likelihood(fit.model, samples);
    fit.log_likelihood.push_back(current);
    ++fit.iterations;
    if (std::abs(current - previous) < config.tolerance) {
      fit.converged = true;
      break;
    }
    previous = current;
  }
  return fit;
}

}  // namespace dstq
