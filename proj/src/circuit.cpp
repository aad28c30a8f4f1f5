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

#include "dstq/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dstq {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string format_angle(double angle) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", angle);
  // Avoid "-0.000000" so dumps stay stable across sign-of-zero noise.
  if (std::string(buf) == "-0.000000") return "0.000000";
  return buf;
}

void format_controls(std::ostringstream& os, const std::vector<Control>& controls) {
  os << " controls=";
  for (std::size_t i = 0; i < controls.size(); ++i) {
    if (i) os << ',';
    os << controls[i].qubit << (controls[i].positive ? '+' : '-');
  }
}

}  // namespace

Circuit::Circuit(std::size_t width) : width_(width), output_{0, width} {}

std::vector<Qubit> gate_qubits(const Gate& gate) {
  return std::visit(Overloaded{
                        [](const XGate& g) { return std::vector<Qubit>{g.target}; },
                        [](const RYGate& g) { return std::vector<Qubit>{g.target}; },
                        [](const auto& g) {
                          std::vector<Qubit> qs;
                          for (const auto& c : g.controls) qs.push_back(c.qubit);
                          qs.push_back(g.target);
                          return qs;
                        },
                    },
                    gate);
}

void Circuit::add(Gate gate) {
  std::vector<Qubit> qs = gate_qubits(gate);
  for (Qubit q : qs) {
    if (q >= width_) {
      throw std::invalid_argument("gate qubit " + std::to_string(q) + " outside circuit width " +
                                  std::to_string(width_));
    }
  }
  std::sort(qs.begin(), qs.end());
  if (std::adjacent_find(qs.begin(), qs.end()) != qs.end()) {
    throw std::invalid_argument("gate uses a qubit twice");
  }
  gates_.push_back(std::move(gate));
}

void Circuit::set_output_register(QubitRange range) {
  if (range.first + range.size > width_) {
    throw std::invalid_argument("output register outside circuit width");
  }
  output_ = range;
}

void Circuit::append(const Circuit& fragment, Qubit offset) {
  for (Gate g : fragment.gates()) {
    std::visit(Overloaded{
                   [&](XGate& x) { x.target += offset; },
                   [&](RYGate& r) { r.target += offset; },
                   [&](auto& c) {
                     for (auto& ctl : c.controls) ctl.qubit += offset;
                     c.target += offset;
                   },
               },
               g);
    add(std::move(g));
  }
}

std::string dump(const Circuit& circuit) {
  std::ostringstream os;
  for (const Gate& gate : circuit.gates()) {
    std::visit(Overloaded{
                   [&](const XGate& g) { os << "X target=" << g.target; },
                   [&](const RYGate& g) { os << "RY target=" << g.target << " angle=" << format_angle(g.angle); },
                   [&](const CRYGate& g) {
                     os << "CRY";
                     format_controls(os, g.controls);
                     os << " target=" << g.target << " angle=" << format_angle(g.angle);
                   },
                   [&](const MCXGate& g) {
                     os << "MCX";
                     format_controls(os, g.controls);
                     os << " target=" << g.target;
                   },
               },
               gate);
    os << '\n';
  }
  return os.str();
}

ResourceReport resources(const Circuit& circuit) {
  ResourceReport r;
  r.width = circuit.width();
  for (const Gate& gate : circuit.gates()) {
    std::visit(Overloaded{
                   [&](const XGate&) { ++r.x; },
                   [&](const RYGate&) { ++r.ry; },
                   [&](const CRYGate&) { ++r.cry; },
                   [&](const MCXGate&) { ++r.mcx; },
               },
               gate);
  }
  return r;
}

std::string to_string(const ResourceReport& r) {
  std::ostringstream os;
  os << "width=" << r.width << " X=" << r.x << " RY=" << r.ry << " CRY=" << r.cry << " MCX=" << r.mcx
     << " total=" << r.total();
  return os.str();
}

}  // namespace dstq
