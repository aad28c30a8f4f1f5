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

#include "dstq/mass.hpp"

#include <cmath>
#include <string>

#include "dstq/error.hpp"

namespace dstq {

namespace {

void check_distribution(const Eigen::VectorXd& v, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || v[i] < 0.0) {
      throw InvalidMass(std::string(what) + " entry " + std::to_string(i) + " is " +
                        std::to_string(v[i]) + "; entries must be finite and non-negative");
    }
  }
  double total = v.sum();
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw InvalidMass(std::string(what) + " sums to " + std::to_string(total) + ", not 1");
  }
}

void check_enumeration(std::size_t n, std::size_t p) {
  if (n * p > kMaxEnumerationBits) {
    throw CapacityExceeded("exhaustive combination of " + std::to_string(p) + " masses over " +
                           std::to_string(n) + " elements needs 2^" + std::to_string(n * p) +
                           " tuples; the cap is 2^" + std::to_string(kMaxEnumerationBits));
  }
}

}  // namespace

MassFunction::MassFunction(Frame frame, Eigen::VectorXd values)
    : frame_(std::move(frame)), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != frame_.power_set_size()) {
    throw InvalidMass("mass vector has " + std::to_string(values_.size()) + " entries; frame needs " +
                      std::to_string(frame_.power_set_size()));
  }
  check_distribution(values_, "mass");
}

MassFunction MassFunction::vacuous(Frame frame) {
  FocalIndex all = frame.universe();
  return point(std::move(frame), all);
}

MassFunction MassFunction::point(Frame frame, FocalIndex index) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(frame.power_set_size()));
  if (index > frame.universe()) throw FrameMismatch("focal index outside the power set");
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return MassFunction(std::move(frame), std::move(v));
}

PossMF::PossMF(Frame frame, Eigen::VectorXd support)
    : frame_(std::move(frame)), support_(std::move(support)) {
  if (static_cast<std::size_t>(support_.size()) != frame_.size()) {
    throw InvalidMass("possibility vector length does not match the frame");
  }
  for (Eigen::Index k = 0; k < support_.size(); ++k) {
    if (!(support_[k] >= 0.0 && support_[k] <= 1.0)) {
      throw InvalidMass("support degree " + std::to_string(support_[k]) + " is outside [0, 1]");
    }
  }
}

Pignistic::Pignistic(Frame frame, Eigen::VectorXd probs)
    : frame_(std::move(frame)), probs_(std::move(probs)) {
  if (static_cast<std::size_t>(probs_.size()) != frame_.size()) {
    throw InvalidMass("pignistic vector length does not match the frame");
  }
  check_distribution(probs_, "pignistic probability");
}

std::size_t Pignistic::decision() const {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < probs_.size(); ++i) {
    if (probs_[i] > probs_[best] + kDecisionTieTolerance) best = i;
  }
  return static_cast<std::size_t>(best);
}

const Frame& common_frame(std::span<const MassFunction> masses) {
  if (masses.empty()) throw FrameMismatch("no mass functions given");
  for (const auto& m : masses.subspan(1)) {
    if (m.frame() != masses.front().frame()) {
      throw FrameMismatch("mass functions are defined on different frames");
    }
  }
  return masses.front().frame();
}

MassFunction negate(const MassFunction& m) {
  const FocalIndex all = m.frame().universe();
  Eigen::VectorXd out(m.values().size());
  for (FocalIndex i = 0; i <= all; ++i) {
    out[static_cast<Eigen::Index>(i)] = m[all & ~i];
  }
  return MassFunction(m.frame(), std::move(out));
}

MassFunction combine_bitwise(std::span<const MassFunction> masses, const std::vector<bool>& table) {
  const Frame& frame = common_frame(masses);
  const std::size_t n = frame.size();
  const std::size_t p = masses.size();
  if (table.size() != (std::size_t{1} << p)) {
    throw std::invalid_argument("truth table size does not match the number of masses");
  }
  check_enumeration(n, p);

  const std::size_t width = frame.power_set_size();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(width));
  std::vector<FocalIndex> tuple(p, 0);
  std::vector<double> prefix(p + 1, 1.0);  // prefix[r] = prod of masses before r

  // Odometer over (2^n)^p index tuples.
  std::size_t r = 0;
  while (true) {
    for (; r < p; ++r) prefix[r + 1] = prefix[r] * masses[r][tuple[r]];
    double weight = prefix[p];
    if (weight != 0.0) {
      FocalIndex result = 0;
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t lookup = 0;
        for (std::size_t s = 0; s < p; ++s) lookup |= ((tuple[s] >> k) & 1U) << s;
        if (table[lookup]) result |= FocalIndex{1} << k;
      }
      out[static_cast<Eigen::Index>(result)] += weight;
    }
    std::size_t pos = p;
    while (pos > 0) {
      --pos;
      if (++tuple[pos] < width) break;
      tuple[pos] = 0;
      if (pos == 0) return MassFunction(frame, std::move(out));
    }
    r = pos;
  }
}

namespace {

std::vector<bool> reduce_table(std::size_t p, bool conjunctive) {
  std::vector<bool> table(std::size_t{1} << p);
  const std::size_t all = table.size() - 1;
  for (std::size_t a = 0; a <= all; ++a) table[a] = conjunctive ? a == all : a != 0;
  return table;
}

}  // namespace

MassFunction combine_conjunctive(std::span<const MassFunction> masses) {
  if (masses.size() < 2) throw std::invalid_argument("conjunctive combination needs at least two masses");
  return combine_bitwise(masses, reduce_table(masses.size(), true));
}

MassFunction combine_disjunctive(std::span<const MassFunction> masses) {
  if (masses.size() < 2) throw std::invalid_argument("disjunctive combination needs at least two masses");
  return combine_bitwise(masses, reduce_table(masses.size(), false));
}

MassFunction combine_exclusive(const MassFunction& first, const MassFunction& second) {
  const MassFunction pair[] = {first, second};
  return combine_bitwise(pair, {false, true, true, false});
}

MassFunction combine_rule(const RuleExpr& rule, const NamedMasses& masses) {
  std::vector<std::string> names = variables(rule);
  std::vector<MassFunction> sources;
  sources.reserve(names.size());
  for (const auto& name : names) {
    auto it = masses.find(name);
    if (it == masses.end()) throw UnboundVariable(name);
    sources.push_back(it->second);
  }
  // Unused bindings still have to agree on the frame.
  std::vector<MassFunction> all;
  for (const auto& [name, m] : masses) all.push_back(m);
  common_frame(all);
  return combine_bitwise(sources, truth_table(rule, names));
}

MassFunction cdbft(const PossMF& poss) {
  const Frame& frame = poss.frame();
  const std::size_t n = frame.size();
  Eigen::VectorXd out(static_cast<Eigen::Index>(frame.power_set_size()));
  for (FocalIndex i = 0; i <= frame.universe(); ++i) {
    double product = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      product *= ((i >> k) & 1U) ? poss.support(k) : poss.non_support(k);
    }
    out[static_cast<Eigen::Index>(i)] = product;
  }
  return MassFunction(frame, std::move(out));
}

Pignistic betp(const MassFunction& m) {
  const Frame& frame = m.frame();
  // Sum of non-empty masses equals 1 - m(empty) but avoids cancellation.
  const double scale = m.values().tail(m.values().size() - 1).sum();
  if (!(scale > 0.0)) throw TotalConflict(m[0]);
  Eigen::VectorXd probs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(frame.size()));
  for (FocalIndex f = 1; f <= frame.universe(); ++f) {
    if (m[f] == 0.0) continue;
    const double share = m[f] / (scale * cardinality(f));
    for (std::size_t k = 0; k < frame.size(); ++k) {
      if ((f >> k) & 1U) probs[static_cast<Eigen::Index>(k)] += share;
    }
  }
  return Pignistic(frame, std::move(probs));
}

}  // namespace dstq
