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

// Attribute-fusion evidential classifier.
//
// Training fits one Gaussian mixture per (attribute, class). At inference
// every attribute value becomes a possibility vector over the classes
// (densities divided by their maximum), then a consonant product mass
// prepared by one RY per class. The conjunctive circuit fuses the attribute
// registers; the pignistic argmax of its output register is the decision.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dstq/dataset.hpp"
#include "dstq/gmm.hpp"
#include "dstq/mass.hpp"

namespace dstq {

struct ExactBackend {};

struct ShotsBackend {
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
};

using Backend = std::variant<ExactBackend, ShotsBackend>;

class ClassifierModel {
 public:
  /// grid[j][i] is the mixture for attribute j and class i.
  ClassifierModel(Frame frame, std::vector<std::string> attributes, std::size_t components,
                  std::vector<std::vector<GmmModel>> grid);

  const Frame& frame() const { return frame_; }
  const std::vector<std::string>& attributes() const { return attributes_; }
  std::size_t components() const { return components_; }
  const std::vector<GmmModel>& attribute_models(std::size_t j) const { return grid_.at(j); }
  const std::vector<std::vector<GmmModel>>& grid() const { return grid_; }

 private:
  Frame frame_;
  std::vector<std::string> attributes_;
  std::size_t components_;
  std::vector<std::vector<GmmModel>> grid_;
};

/// Fits the GMM grid on `rows` of `data` (all rows when empty).
ClassifierModel train_classifier(const Dataset& data, std::span<const std::size_t> rows, std::size_t components,
                                 const EmConfig& em = {});

/// pi1^i = f^i(x) / max_k f^k(x). When every density is zero the evidence
/// is vacuous (all supports 1).
PossMF possmf_for_attribute(const Frame& frame, std::span<const GmmModel> per_class, double x);

/// Per-attribute evidence for one sample.
std::vector<PossMF> attribute_evidence(const ClassifierModel& model, std::span<const double> x);

struct Classification {
  std::size_t decision = 0;
  Pignistic betp;
  MassFunction fused;
};

/// Circuit path: simple-structure preparation, conjunctive fusion circuit,
/// exact marginal or sampled shots, pignistic decision.
Classification classify(const ClassifierModel& model, std::span<const double> x, const Backend& backend = ExactBackend{});

/// Classical reference: cdbft per attribute, pairwise exhaustive conjunctive
/// combination, pignistic decision.
Classification classify_classical(const ClassifierModel& model, std::span<const double> x);

// ---------------------------------------------------------------------------
// Evaluation harness
// ---------------------------------------------------------------------------

enum class Pipeline { kClassical, kExact, kShots };

struct EvalConfig {
  std::vector<double> fractions;
  std::size_t repeats = 100;
  std::size_t components = 3;
  Pipeline pipeline = Pipeline::kExact;
  std::uint64_t shots = 1024;
  std::uint64_t master_seed = 0;
  std::size_t threads = 0;  // 0: hardware concurrency
  EmConfig em;
};

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Per-class shuffle, then the first round(fraction * size) rows of each
/// class train (at least `min_train`, at most all). A fraction of 1 trains
/// and tests on every row.
Split stratified_split(const Dataset& data, double fraction, std::uint64_t seed, std::size_t min_train = 1);

/// Seed of split `repeat` at `fraction`; identical across pipelines so runs
/// can be paired.
std::uint64_t split_seed(std::uint64_t master_seed, double fraction, std::size_t repeat);

struct RepeatResult {
  double fraction = 0.0;
  std::size_t repeat = 0;
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  std::size_t test_size = 0;
  std::size_t conflicts = 0;  // test points rejected for total conflict (counted wrong)
};

struct FractionSummary {
  double fraction = 0.0;
  std::size_t repeats = 0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // sample standard deviation
};

struct EvalReport {
  std::vector<RepeatResult> runs;  // ordered by fraction, then repeat
  std::vector<FractionSummary> summary;
};

EvalReport evaluate(const Dataset& data, const EvalConfig& config);

/// Runs the classifier on `split` and returns the number of correct test
/// predictions and total conflicts.
struct SplitOutcome {
  std::size_t correct = 0;
  std::size_t conflicts = 0;
  std::vector<std::size_t> decisions;  // per test row; SIZE_MAX on conflict
};

SplitOutcome run_split(const Dataset& data, const Split& split, const ClassifierModel& model, Pipeline pipeline,
                       std::uint64_t shots, std::uint64_t seed);

/// `fraction,repeat,seed,accuracy` rows, a blank line, then
/// `fraction,repeats,mean_accuracy,std_accuracy` summary rows.
void write_report_csv(std::ostream& out, const EvalReport& report);

/// Parses "a:b:step" into a, a + step, ... <= b.
std::vector<double> parse_fraction_range(const std::string& text);

std::string format_fraction(double fraction);

}  // namespace dstq
