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

#include "dstq/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dstq/error.hpp"

namespace dstq {

Eigen::VectorXd ShotCounts::frequencies() const {
  Eigen::VectorXd f(static_cast<Eigen::Index>(counts.size()));
  for (std::size_t i = 0; i < counts.size(); ++i) {
    f[static_cast<Eigen::Index>(i)] = static_cast<double>(counts[i]) / static_cast<double>(shots);
  }
  return f;
}

ShotCounts sample(const Eigen::VectorXd& probs, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  if (probs.size() == 0) throw InvalidMass("empty probability vector");
  if (std::abs(probs.sum() - 1.0) > kMassTolerance || (probs.array() < 0.0).any()) {
    throw InvalidMass("sampling needs a probability vector summing to 1");
  }
  std::vector<double> cdf(static_cast<std::size_t>(probs.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[static_cast<std::size_t>(i)] = acc;
  }
  // The last outcome with non-zero probability absorbs rounding in the sum.
  std::size_t last = cdf.size() - 1;
  while (last > 0 && probs[static_cast<Eigen::Index>(last)] == 0.0) --last;
  for (std::size_t i = last; i < cdf.size(); ++i) cdf[i] = 2.0;

  ShotCounts out;
  out.counts.assign(cdf.size(), 0);
  out.shots = shots;
  std::mt19937_64 rng(seed);
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * kScale;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    ++out.counts[static_cast<std::size_t>(it - cdf.begin())];
  }
  return out;
}

MassFunction extract_mass(const Frame& frame, const ShotCounts& counts) {
  if (counts.counts.size() != frame.power_set_size()) {
    throw FrameMismatch("shot outcomes do not cover the frame's power set");
  }
  return MassFunction(frame, counts.frequencies());
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) {
  return mix64(parent ^ mix64(stream + 1));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  // Largest multiple of bound representable; reject draws at or above it.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace dstq
