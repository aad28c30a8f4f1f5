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

// Seeded measurement sampling.
//
// Generator: std::mt19937_64 (its output sequence is fixed by the standard).
// Each shot draws one 64-bit word w, forms u = (w >> 11) * 2^-53 in [0, 1),
// and records the first outcome whose cumulative probability exceeds u.
// No std::*_distribution is involved, so counts are identical on every
// standard library.

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <vector>

#include "dstq/mass.hpp"

namespace dstq {

struct ShotCounts {
  std::vector<std::uint64_t> counts;  // indexed by outcome
  std::uint64_t shots = 0;

  /// counts / shots.
  Eigen::VectorXd frequencies() const;
};

ShotCounts sample(const Eigen::VectorXd& probs, std::uint64_t shots, std::uint64_t seed);

/// Interprets shot frequencies over a frame's power set as a mass function.
MassFunction extract_mass(const Frame& frame, const ShotCounts& counts);

/// One splitmix64 step: the generator's output for state x.
std::uint64_t mix64(std::uint64_t x);

/// Sub-seed for stream `stream` of `parent`: mix64(parent ^ mix64(stream + 1)).
/// Nested derivations name a path, e.g. derive_seed(derive_seed(s, a), b).
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream);

/// Uniform integer in [0, bound) by rejection on 64-bit words.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace dstq
