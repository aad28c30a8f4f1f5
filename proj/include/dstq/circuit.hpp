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
#include <string>
#include <variant>
#include <vector>

namespace dstq {

using Qubit = std::size_t;

/// Control qubit of a conditioned gate. A negative control triggers on |0>.
struct Control {
  Qubit qubit = 0;
  bool positive = true;

  bool operator==(const Control&) const = default;
};

struct XGate {
  Qubit target = 0;
  bool operator==(const XGate&) const = default;
};

/// Single-qubit rotation with matrix [[cos(a/2), sin(a/2)], [-sin(a/2), cos(a/2)]].
struct RYGate {
  Qubit target = 0;
  double angle = 0.0;
  bool operator==(const RYGate&) const = default;
};

/// RY applied only when every control matches its polarity.
struct CRYGate {
  std::vector<Control> controls;
  Qubit target = 0;
  double angle = 0.0;
  bool operator==(const CRYGate&) const = default;
};

/// Multi-controlled NOT. With one positive control this is CNOT.
struct MCXGate {
  std::vector<Control> controls;
  Qubit target = 0;
  bool operator==(const MCXGate&) const = default;
};

using Gate = std::variant<XGate, RYGate, CRYGate, MCXGate>;

/// Contiguous run of qubits; bit k of a register value is qubit first + k.
struct QubitRange {
  Qubit first = 0;
  std::size_t size = 0;

  bool operator==(const QubitRange&) const = default;
};

/// Ordered gate list over a fixed number of qubits, all starting in |0>.
class Circuit {
 public:
  explicit Circuit(std::size_t width = 0);

  std::size_t width() const { return width_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const QubitRange& output_register() const { return output_; }

  /// Validates qubit indices; throws std::invalid_argument.
  void add(Gate gate);
  void set_output_register(QubitRange range);

  /// Appends every gate of `fragment` with qubits shifted by `offset`.
  void append(const Circuit& fragment, Qubit offset = 0);

 private:
  std::size_t width_;
  std::vector<Gate> gates_;
  QubitRange output_;
};

/// Qubits touched by a gate (controls first, target last).
std::vector<Qubit> gate_qubits(const Gate& gate);

/// One line per gate, e.g. `MCX controls=0+,2- target=4`.
std::string dump(const Circuit& circuit);

struct ResourceReport {
  std::size_t width = 0;
  std::size_t x = 0;
  std::size_t ry = 0;
  std::size_t cry = 0;
  std::size_t mcx = 0;

  std::size_t total() const { return x + ry + cry + mcx; }
  bool operator==(const ResourceReport&) const = default;
};

ResourceReport resources(const Circuit& circuit);

std::string to_string(const ResourceReport& report);

}  // namespace dstq
