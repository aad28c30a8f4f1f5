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

#include <Eigen/Core>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace dstq {

/// Numeric attributes plus a class label per row.
struct Dataset {
  std::vector<std::string> attributes;
  std::vector<std::string> classes;  // in order of first appearance
  Eigen::MatrixXd features;           // rows = samples, cols = attributes
  std::vector<std::size_t> labels;    // index into classes

  std::size_t rows() const { return labels.size(); }
  std::size_t attribute_count() const { return attributes.size(); }
};

/// CSV with a header row; attribute columns then a final class column.
/// Blank lines are skipped. Errors name the 1-based line number.
Dataset parse_dataset_csv(std::istream& in, const std::string& source = "<input>");
Dataset read_dataset_csv(const std::filesystem::path& path);

/// Splits one CSV line on commas and trims surrounding whitespace.
std::vector<std::string> split_csv_line(const std::string& line);

/// Parses a whole-string double; throws FormatError otherwise.
double parse_number(const std::string& text, const std::string& where);

}  // namespace dstq
