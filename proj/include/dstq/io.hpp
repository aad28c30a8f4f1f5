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

// JSON file formats for mass functions and trained classifier models.
//
// Mass file:  {"elements": ["A", "B"], "masses": {"": 0.1, "A": 0.2, "A,B": 0.7}}
// Subset keys list members in frame order on output; any order is accepted
// on input. Omitted subsets have mass 0.
//
// Model file: {"frame": [...], "attributes": [...], "components": N,
//              "grid": [[[{"weight", "mean", "variance"}, ...], ...], ...]}
// grid[j][i] is the mixture of attribute j and class i.

#include <filesystem>
#include <string>

#include "dstq/classifier.hpp"
#include "dstq/mass.hpp"

namespace dstq {

MassFunction parse_mass_json(const std::string& text, const std::string& source = "<input>");
std::string format_mass_json(const MassFunction& m);
MassFunction read_mass_file(const std::filesystem::path& path);

ClassifierModel parse_model_json(const std::string& text, const std::string& source = "<input>");
std::string format_model_json(const ClassifierModel& model);
ClassifierModel read_model_file(const std::filesystem::path& path);

/// Whole file as a string; throws FormatError when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

/// Writes `text` to `path`; throws Error on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace dstq
