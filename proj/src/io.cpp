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

#include "dstq/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "dstq/error.hpp"
#include "json.hpp"

namespace dstq {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Parses strictly: duplicate keys in any object are rejected instead of
// silently keeping the last value.
json parse_strict(const std::string& text, const std::string& source) {
  std::vector<std::set<std::string>> seen;
  std::string duplicate;
  auto callback = [&](int /*depth*/, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        seen.emplace_back();
        break;
      case json::parse_event_t::object_end:
        seen.pop_back();
        break;
      case json::parse_event_t::key:
        if (!seen.back().insert(parsed.get<std::string>()).second && duplicate.empty()) {
          duplicate = parsed.get<std::string>();
        }
        break;
      default:
        break;
    }
    return true;
  };
  json doc;
  try {
    doc = json::parse(text, callback);
  } catch (const json::parse_error& e) {
    throw FormatError(source + ": invalid JSON: " + e.what());
  }
  if (!duplicate.empty()) throw FormatError(source + ": duplicate key '" + duplicate + "'");
  return doc;
}

const json& member(const json& obj, const char* key, const std::string& source) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw FormatError(source + ": missing \"" + std::string(key) + "\"");
  }
  return obj.at(key);
}

std::vector<std::string> string_array(const json& value, const char* what, const std::string& source) {
  if (!value.is_array()) throw FormatError(source + ": \"" + std::string(what) + "\" must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) throw FormatError(source + ": \"" + std::string(what) + "\" must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

double number(const json& value, const std::string& what, const std::string& source) {
  if (!value.is_number()) throw FormatError(source + ": " + what + " must be a number");
  return value.get<double>();
}

Frame make_frame(std::vector<std::string> labels, const std::string& source) {
  try {
    return Frame(std::move(labels));
  } catch (const Error& e) {
    throw FormatError(source + ": " + e.what());
  }
}

}  // namespace

MassFunction parse_mass_json(const std::string& text, const std::string& source) {
  const json doc = parse_strict(text, source);
  Frame frame = make_frame(string_array(member(doc, "elements", source), "elements", source), source);
  const json& masses = member(doc, "masses", source);
  if (!masses.is_object()) throw FormatError(source + ": \"masses\" must be an object");
  Eigen::VectorXd values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(frame.power_set_size()));
  std::set<FocalIndex> assigned;
  for (const auto& [key, value] : masses.items()) {
    FocalIndex f = 0;
    try {
      f = parse_subset_key(frame, key);
    } catch (const Error& e) {
      throw FormatError(source + ": subset \"" + key + "\": " + e.what());
    }
    if (!assigned.insert(f).second) {
      throw FormatError(source + ": subset \"" + key + "\" is listed more than once");
    }
    values[static_cast<Eigen::Index>(f)] = number(value, "mass of \"" + key + "\"", source);
  }
  try {
    return MassFunction(std::move(frame), std::move(values));
  } catch (const InvalidMass& e) {
    throw InvalidMass(source + ": " + e.what());
  }
}

std::string format_mass_json(const MassFunction& m) {
  ordered_json doc;
  doc["elements"] = m.frame().labels();
  ordered_json masses = ordered_json::object();
  for (FocalIndex f = 0; f < m.size(); ++f) {
    if (m[f] != 0.0) masses[subset_key(m.frame(), f)] = m[f];
  }
  doc["masses"] = std::move(masses);
  return doc.dump(2) + "\n";
}

MassFunction read_mass_file(const std::filesystem::path& path) {
  return parse_mass_json(read_text_file(path), path.string());
}

ClassifierModel parse_model_json(const std::string& text, const std::string& source) {
  const json doc = parse_strict(text, source);
  Frame frame = make_frame(string_array(member(doc, "frame", source), "frame", source), source);
  std::vector<std::string> attributes = string_array(member(doc, "attributes", source), "attributes", source);
  const json& n = member(doc, "components", source);
  if (!n.is_number_unsigned() || n.get<std::size_t>() == 0) {
    throw FormatError(source + ": \"components\" must be a positive integer");
  }
  const json& grid_json = member(doc, "grid", source);
  if (!grid_json.is_array() || grid_json.size() != attributes.size()) {
    throw FormatError(source + ": \"grid\" must hold one entry per attribute");
  }
  std::vector<std::vector<GmmModel>> grid;
  for (std::size_t j = 0; j < grid_json.size(); ++j) {
    const json& column = grid_json[j];
    if (!column.is_array() || column.size() != frame.size()) {
      throw FormatError(source + ": grid[" + std::to_string(j) + "] must hold one mixture per class");
    }
    std::vector<GmmModel> models;
    for (std::size_t i = 0; i < column.size(); ++i) {
      const std::string where = "grid[" + std::to_string(j) + "][" + std::to_string(i) + "]";
      if (!column[i].is_array()) throw FormatError(source + ": " + where + " must be an array of components");
      std::vector<GaussianComponent> comps;
      for (const auto& c : column[i]) {
        comps.push_back({number(member(c, "weight", source), where + ".weight", source),
                         number(member(c, "mean", source), where + ".mean", source),
                         number(member(c, "variance", source), where + ".variance", source)});
      }
      try {
        models.emplace_back(std::move(comps));
      } catch (const std::invalid_argument& e) {
        throw FormatError(source + ": " + where + ": " + e.what());
      }
    }
    grid.push_back(std::move(models));
  }
  try {
    return ClassifierModel(std::move(frame), std::move(attributes), n.get<std::size_t>(), std::move(grid));
  } catch (const std::invalid_argument& e) {
    throw FormatError(source + ": " + e.what());
  }
}

std::string format_model_json(const ClassifierModel& model) {
  ordered_json doc;
  doc["frame"] = model.frame().labels();
  doc["attributes"] = model.attributes();
  doc["components"] = model.components();
  ordered_json grid = ordered_json::array();
  for (const auto& column : model.grid()) {
    ordered_json col = ordered_json::array();
    for (const auto& gmm : column) {
      ordered_json comps = ordered_json::array();
      for (const auto& c : gmm.components()) {
        comps.push_back({{"weight", c.weight}, {"mean", c.mean}, {"variance", c.variance}});
      }
      col.push_back(std::move(comps));
    }
    grid.push_back(std::move(col));
  }
  doc["grid"] = std::move(grid);
  return doc.dump(2) + "\n";
}

ClassifierModel read_model_file(const std::filesystem::path& path) {
  return parse_model_json(read_text_file(path), path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out.flush()) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace dstq
