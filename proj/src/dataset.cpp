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

#include "dstq/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "dstq/error.hpp"

namespace dstq {

namespace {

std::string trim(const std::string& s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(const std::string& text, const std::string& where) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw FormatError(where + ": '" + text + "' is not a number");
  }
  return value;
}

Dataset parse_dataset_csv(std::istream& in, const std::string& source) {
  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (!have_header) {
      if (cells.size() < 2) throw FormatError(where + ": header needs at least one attribute and a class column");
      data.attributes.assign(cells.begin(), cells.end() - 1);
      have_header = true;
      continue;
    }
    if (cells.size() != data.attributes.size() + 1) {
      throw FormatError(where + ": expected " + std::to_string(data.attributes.size() + 1) + " columns, found " +
                        std::to_string(cells.size()));
    }
    std::vector<double> row;
    for (std::size_t j = 0; j < data.attributes.size(); ++j) row.push_back(parse_number(cells[j], where));
    const std::string& label = cells.back();
    if (label.empty()) throw FormatError(where + ": empty class label");
    auto it = std::find(data.classes.begin(), data.classes.end(), label);
    if (it == data.classes.end()) {
      data.classes.push_back(label);
      it = data.classes.end() - 1;
    }
    data.labels.push_back(static_cast<std::size_t>(it - data.classes.begin()));
    rows.push_back(std::move(row));
  }
  if (!have_header) throw FormatError(source + ": missing header row");
  if (rows.empty()) throw FormatError(source + ": no data rows");
  data.features.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(data.attributes.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      data.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return data;
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open dataset '" + path.string() + "'");
  return parse_dataset_csv(in, path.string());
}

}  // namespace dstq
