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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dstq {

/// Index of a focal set in the power set. Bit k holds whether the (k+1)-th
/// frame element belongs to the set, so the first element is the least
/// significant bit.
using FocalIndex = std::uint64_t;

/// Frame of discernment: an ordered list of distinct, non-empty labels.
/// The order is fixed at construction and defines bit positions.
class Frame {
 public:
  /// Largest frame the library accepts; power-set vectors are dense.
  static constexpr std::size_t kMaxElements = 30;

  explicit Frame(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  std::size_t power_set_size() const { return std::size_t{1} << labels_.size(); }
  FocalIndex universe() const { return power_set_size() - 1; }

  const std::string& label(std::size_t k) const { return labels_.at(k); }
  std::span<const std::string> labels() const { return labels_; }
  std::optional<std::size_t> position(std::string_view label) const;

  bool operator==(const Frame&) const = default;

 private:
  std::vector<std::string> labels_;
};

/// Index of the subset named by `members`; throws FrameMismatch naming the
/// first unknown label.
FocalIndex index_of_set(const Frame& frame, std::span<const std::string> members);

/// Members of the subset `index`, in frame order.
std::vector<std::string> set_of_index(const Frame& frame, FocalIndex index);

/// Comma-joined member labels in frame order; the empty set maps to "".
std::string subset_key(const Frame& frame, FocalIndex index);

/// Inverse of subset_key. Member order in `key` is irrelevant.
FocalIndex parse_subset_key(const Frame& frame, std::string_view key);

/// Number of elements in the subset.
inline int cardinality(FocalIndex index) { return __builtin_popcountll(index); }

}  // namespace dstq
