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

#include "dstq/frame.hpp"

#include <algorithm>
#include <unordered_set>

#include "dstq/error.hpp"

namespace dstq {

Frame::Frame(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) {
    throw FrameMismatch("a frame needs at least one element");
  }
  if (labels_.size() > kMaxElements) {
    throw CapacityExceeded("frame has " + std::to_string(labels_.size()) +
                           " elements; at most " + std::to_string(kMaxElements) +
                           " are supported");
  }
  std::unordered_set<std::string> seen;
  for (const auto& label : labels_) {
    if (label.empty()) {
      throw FrameMismatch("frame labels must be non-empty");
    }
    if (label.find(',') != std::string::npos) {
      throw FrameMismatch("frame label '" + label + "' contains a comma");
    }
    if (!seen.insert(label).second) {
      throw FrameMismatch("duplicate frame label '" + label + "'");
    }
  }
}

std::optional<std::size_t> Frame::position(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

FocalIndex index_of_set(const Frame& frame, std::span<const std::string> members) {
  FocalIndex index = 0;
  for (const auto& member : members) {
    auto k = frame.position(member);
    if (!k) {
      throw FrameMismatch("label '" + member + "' is not in the frame");
    }
    index |= FocalIndex{1} << *k;
  }
  return index;
}

std::vector<std::string> set_of_index(const Frame& frame, FocalIndex index) {
  if (index > frame.universe()) {
    throw FrameMismatch("focal index " + std::to_string(index) +
                        " is outside the power set");
  }
  std::vector<std::string> members;
  for (std::size_t k = 0; k < frame.size(); ++k) {
    if ((index >> k) & 1U) members.push_back(frame.label(k));
  }
  return members;
}

std::string subset_key(const Frame& frame, FocalIndex index) {
  std::string key;
  for (const auto& member : set_of_index(frame, index)) {
    if (!key.empty()) key += ',';
    key += member;
  }
  return key;
}

FocalIndex parse_subset_key(const Frame& frame, std::string_view key) {
  std::vector<std::string> members;
  std::size_t start = 0;
  while (start <= key.size() && !key.empty()) {
    std::size_t end = key.find(',', start);
    if (end == std::string_view::npos) end = key.size();
    std::string_view part = key.substr(start, end - start);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    if (part.empty()) {
      throw FormatError("empty label in subset key '" + std::string(key) + "'");
    }
    members.emplace_back(part);
    start = end + 1;
  }
  return index_of_set(frame, members);
}

}  // namespace dstq
