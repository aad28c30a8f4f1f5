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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dstq/dataset.hpp"
#include "dstq/gmm.hpp"

#ifndef DSTQ_DATASET_DIR
#error "DSTQ_DATASET_DIR must point at the datasets directory"
#endif

namespace {

using dstq::GaussianComponent;
using dstq::GmmModel;

TEST(GmmModel, Validation) {
  EXPECT_THROW(GmmModel({}), std::invalid_argument);
  EXPECT_THROW(GmmModel({{0.5, 0.0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(GmmModel({{1.0, 0.0, 0.0}}), std::invalid_argument);
  EXPECT_THROW(GmmModel({{1.2, 0.0, 1.0}, {-0.2, 0.0, 1.0}}), std::invalid_argument);
  EXPECT_NO_THROW(GmmModel({{0.25, 0.0, 1.0}, {0.75, 3.0, 2.0}}));
}

TEST(GmmPdf, StandardNormalPeak) {
  EXPECT_NEAR(dstq::gmm_pdf(GmmModel({{1.0, 0.0, 1.0}}), 0.0), 1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(dstq::gmm_pdf(GmmModel({{1.0, 0.0, 1.0}}), 0.0), 0.39894, 1e-5);
}

TEST(GmmPdf, SymmetricMixture) {
  const GmmModel g({{0.5, -2.0, 1.0}, {0.5, 2.0, 1.0}});
  for (double d : {0.1, 0.7, 2.0, 5.5}) EXPECT_NEAR(dstq::gmm_pdf(g, d), dstq::gmm_pdf(g, -d), 1e-16);
}

TEST(GmmPdf, IntegratesToOne) {
  // Composite Simpson over [-60, 60].
  const GmmModel g({{0.2, -3.0, 0.25}, {0.5, 1.0, 4.0}, {0.3, 7.5, 1.5}});
  const int intervals = 24000;
  const double a = -60.0;
  const double h = 120.0 / intervals;
  double s = dstq::gmm_pdf(g, a) + dstq::gmm_pdf(g, a + intervals * h);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * dstq::gmm_pdf(g, a + i * h);
  EXPECT_NEAR(s * h / 3.0, 1.0, 1e-3);
}

TEST(GmmLogLikelihood, MatchesDirectSum) {
  const GmmModel g({{0.3, 0.0, 1.0}, {0.7, 4.0, 2.0}});
  const std::vector<double> xs = {-1.0, 0.5, 3.0, 8.0};
  double direct = 0.0;
  for (double x : xs) direct += std::log(dstq::gmm_pdf(g, x));
  EXPECT_NEAR(dstq::gmm_log_likelihood(g, xs), direct, 1e-12);
}

TEST(FitEm, SingleComponentClosedForm) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal(3.0, 2.0);
  std::vector<double> xs(500);
  for (double& x : xs) x = normal(rng);
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size());
  const auto fit = dstq::fit_gmm_em(xs, 1);
  ASSERT_EQ(fit.model.size(), 1U);
  EXPECT_EQ(fit.model.components()[0].weight, 1.0);
  EXPECT_NEAR(fit.model.components()[0].mean, mean, 1e-9);
  EXPECT_NEAR(fit.model.components()[0].variance, var, 1e-9);
  EXPECT_TRUE(fit.converged);
}

TEST(FitEm, RecoversTwoComponents) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> a(0.0, 1.0);
  std::normal_distribution<double> b(10.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> xs(10000);
  for (double& x : xs) x = coin(rng) ? a(rng) : b(rng);
  const auto fit = dstq::fit_gmm_em(xs, 2);
  auto comps = fit.model.components();
  std::sort(comps.begin(), comps.end(), [](const auto& l, const auto& r) { return l.mean < r.mean; });
  EXPECT_NEAR(comps[0].mean, 0.0, 0.2);
  EXPECT_NEAR(comps[1].mean, 10.0, 0.2);
  EXPECT_NEAR(comps[0].weight, 0.5, 0.05);
  EXPECT_NEAR(comps[0].variance, 1.0, 0.2);
  EXPECT_NEAR(comps[1].variance, 1.0, 0.2);
}

TEST(FitEm, ConstantSamplesHitFloor) {
  const std::vector<double> xs(20, 4.2);
  const auto fit = dstq::fit_gmm_em(xs, 3);
  for (const auto& c : fit.model.components()) {
    EXPECT_NEAR(c.mean, 4.2, 1e-12);
    EXPECT_EQ(c.variance, 1e-12);
  }
}

TEST(FitEm, VarianceFloorIsRelative) {
  std::vector<double> xs = {0.0, 0.0, 0.0, 0.0, 100.0, 100.0, 100.0, 100.0};
  const auto fit = dstq::fit_gmm_em(xs, 2);
  const double data_var = 2500.0;
  for (const auto& c : fit.model.components()) EXPECT_GE(c.variance, 1e-6 * data_var * (1 - 1e-12));
}

TEST(FitEm, Errors) {
  EXPECT_THROW(dstq::fit_gmm_em(std::vector<double>{}, 1), std::invalid_argument);
  EXPECT_THROW(dstq::fit_gmm_em(std::vector<double>{1.0, 2.0}, 3), std::invalid_argument);
  EXPECT_THROW(dstq::fit_gmm_em(std::vector<double>{1.0, 2.0}, 0), std::invalid_argument);
}

TEST(FitEm, StopsAtIterationCap) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> xs(300);
  for (double& x : xs) x = normal(rng);
  dstq::EmConfig cfg;
  cfg.max_iterations = 3;
  cfg.tolerance = 0.0;
  const auto fit = dstq::fit_gmm_em(xs, 3, cfg);
  EXPECT_EQ(fit.iterations, 3U);
  EXPECT_FALSE(fit.converged);
  EXPECT_EQ(fit.log_likelihood.size(), 4U);
}

TEST(FitEm, LogLikelihoodMonotoneOnIrisColumns) {
  const auto data = dstq::read_dataset_csv(std::string(DSTQ_DATASET_DIR) + "/iris.csv");
  for (std::size_t j = 0; j < data.attribute_count(); ++j) {
    for (std::size_t c = 0; c < data.classes.size(); ++c) {
      std::vector<double> xs;
      for (std::size_t r = 0; r < data.rows(); ++r) {
        if (data.labels[r] == c) xs.push_back(data.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)));
      }
      for (std::size_t n : {1U, 2U, 3U, 4U}) {
        const auto fit = dstq::fit_gmm_em(xs, n);
        for (std::size_t i = 1; i < fit.log_likelihood.size(); ++i) {
          ASSERT_GE(fit.log_likelihood[i], fit.log_likelihood[i - 1] - 1e-9)
              << "attribute " << j << " class " << c << " N=" << n << " iteration " << i;
        }
      }
    }
  }
}

}  // namespace
