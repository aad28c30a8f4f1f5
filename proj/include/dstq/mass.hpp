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

// Classical Dempster-Shafer semantics. Every combination here enumerates
// all source index tuples, which makes these functions the reference that
// the circuit path is checked against. They are not the fast path.

#include <Eigen/Core>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dstq/frame.hpp"
#include "dstq/rule.hpp"

namespace dstq {

/// Tolerance used when validating that a vector sums to one.
inline constexpr double kMassTolerance = 1e-9;

/// Pignistic probabilities closer than this count as tied; the lowest index wins.
inline constexpr double kDecisionTieTolerance = 1e-12;

/// Largest n * p (frame size times source count) accepted by enumeration.
inline constexpr std::size_t kMaxEnumerationBits = 24;

/// Belief assignment over the power set of a frame. Entry i is the mass of
/// the focal set with index i. Immutable; validated on construction.
class MassFunction {
 public:
  MassFunction(Frame frame, Eigen::VectorXd values);

  /// All mass on the whole frame.
  static MassFunction vacuous(Frame frame);
  /// All mass on one focal set.
  static MassFunction point(Frame frame, FocalIndex index);

  const Frame& frame() const { return frame_; }
  const Eigen::VectorXd& values() const { return values_; }
  double operator[](FocalIndex index) const { return values_[static_cast<Eigen::Index>(index)]; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }

 private:
  Frame frame_;
  Eigen::VectorXd values_;
};

/// Per-element support degree pi1; the non-support degree is 1 - pi1.
class PossMF {
 public:
  PossMF(Frame frame, Eigen::VectorXd support);

  const Frame& frame() const { return frame_; }
  const Eigen::VectorXd& support() const { return support_; }
  double support(std::size_t k) const { return support_[static_cast<Eigen::Index>(k)]; }
  double non_support(std::size_t k) const { return 1.0 - support(k); }

 private:
  Frame frame_;
  Eigen::VectorXd support_;
};

/// Probability over the singletons of a frame.
class Pignistic {
 public:
  Pignistic(Frame frame, Eigen::VectorXd probs);

  const Frame& frame() const { return frame_; }
  const Eigen::VectorXd& probs() const { return probs_; }

  /// Argmax; ties go to the lowest element index.
  std::size_t decision() const;

 private:
  Frame frame_;
  Eigen::VectorXd probs_;
};

/// Masses bound to rule variable names.
using NamedMasses = std::map<std::string, MassFunction>;

MassFunction negate(const MassFunction& m);

MassFunction combine_conjunctive(std::span<const MassFunction> masses);
MassFunction combine_disjunctive(std::span<const MassFunction> masses);
MassFunction combine_exclusive(const MassFunction& first, const MassFunction& second);
MassFunction combine_rule(const RuleExpr& rule, const NamedMasses& masses);

/// Combination where the result bit of every element is `table` looked up
/// at the tuple of source bits (source r contributes bit r of the lookup).
MassFunction combine_bitwise(std::span<const MassFunction> masses, const std::vector<bool>& table);

/// Consonant product construction: m(F) = prod_k pi_{i^k}^k.
MassFunction cdbft(const PossMF& poss);

/// Pignistic transform; throws TotalConflict when m(empty) is 1.
Pignistic betp(const MassFunction& m);

/// Requires identical frames; throws FrameMismatch otherwise.
const Frame& common_frame(std::span<const MassFunction> masses);

}  // namespace dstq
