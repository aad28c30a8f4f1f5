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

// Dense statevector simulation of dstq circuits.
//
// Basis index bit q holds qubit q, so a register occupying qubits
// [first, first + n) reads as the integer (index >> first) & (2^n - 1).
// Two entry points are provided:
//
//   simulate()          one dense vector over the whole circuit width;
//   simulate_product()  splits the qubits into groups that no gate connects
//                       and simulates each group on its own. Since every
//                       qubit starts in |0>, the full state is the tensor
//                       product of the group states, so marginals agree with
//                       the dense path exactly.

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dstq/circuit.hpp"
#include "dstq/error.hpp"

namespace dstq {

template <typename Real = double>
using Amplitudes = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real = double>
using Probabilities = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

struct SimulatorOptions {
  /// Largest dense vector, in qubits. 26 qubits of complex<double> is 1 GiB.
  std::size_t max_qubits = 26;
};

namespace detail {

struct GateMasks {
  std::uint64_t target = 0;
  std::uint64_t control_mask = 0;
  std::uint64_t control_value = 0;
};

template <typename Map>
GateMasks masks_for(Qubit target, const std::vector<Control>& controls, const Map& local) {
  GateMasks m;
  m.target = std::uint64_t{1} << local(target);
  for (const auto& c : controls) {
    std::uint64_t bit = std::uint64_t{1} << local(c.qubit);
    m.control_mask |= bit;
    if (c.positive) m.control_value |= bit;
  }
  return m;
}

// Visits every index pair (i, i | target) with the target bit clear and the
// controls satisfied.
template <typename F>
void for_each_pair(std::uint64_t dim, const GateMasks& m, F&& f) {
  for (std::uint64_t hi = 0; hi < dim; hi += 2 * m.target) {
    for (std::uint64_t lo = 0; lo < m.target; ++lo) {
      std::uint64_t i = hi | lo;
      if ((i & m.control_mask) == m.control_value) f(i, i | m.target);
    }
  }
}

}  // namespace detail

/// Complex amplitude vector over `width` qubits.
template <typename Real = double>
class StateVector {
 public:
  /// The all-zero basis state.
  explicit StateVector(std::size_t width, const SimulatorOptions& options = {})
      : width_(width) {
    if (width > options.max_qubits) {
      throw CapacityExceeded("state of " + std::to_string(width) + " qubits exceeds the cap of " +
                             std::to_string(options.max_qubits));
    }
    amplitudes_ = Amplitudes<Real>::Zero(Eigen::Index{1} << width);
    amplitudes_[0] = Real(1);
  }

  std::size_t width() const { return width_; }
  const Amplitudes<Real>& amplitudes() const { return amplitudes_; }

  Real norm_squared() const { return amplitudes_.squaredNorm(); }

  /// Applies `gate` whose qubits are translated through `local`.
  template <typename Map>
  void apply(const Gate& gate, const Map& local) {
    const std::uint64_t dim = static_cast<std::uint64_t>(amplitudes_.size());
    auto* a = amplitudes_.data();
    if (const auto* x = std::get_if<XGate>(&gate)) {
      detail::GateMasks m = detail::masks_for(x->target, {}, local);
      detail::for_each_pair(dim, m, [&](std::uint64_t i, std::uint64_t j) { std::swap(a[i], a[j]); });
    } else if (const auto* r = std::get_if<RYGate>(&gate)) {
      rotate(detail::masks_for(r->target, {}, local), r->angle);
    } else if (const auto* cr = std::get_if<CRYGate>(&gate)) {
      rotate(detail::masks_for(cr->target, cr->controls, local), cr->angle);
    } else {
      const auto& mcx = std::get<MCXGate>(gate);
      detail::GateMasks m = detail::masks_for(mcx.target, mcx.controls, local);
      detail::for_each_pair(dim, m, [&](std::uint64_t i, std::uint64_t j) { std::swap(a[i], a[j]); });
    }
  }

  void apply(const Gate& gate) {
    apply(gate, [](Qubit q) { return q; });
  }

 private:
  void rotate(const detail::GateMasks& m, double angle) {
    const Real c = static_cast<Real>(std::cos(angle / 2));
    const Real s = static_cast<Real>(std::sin(angle / 2));
    auto* a = amplitudes_.data();
    detail::for_each_pair(static_cast<std::uint64_t>(amplitudes_.size()), m,
                          [&](std::uint64_t i, std::uint64_t j) {
                            const std::complex<Real> zero = a[i];
                            const std::complex<Real> one = a[j];
                            a[i] = c * zero + s * one;
                            a[j] = -s * zero + c * one;
                          });
  }

  std::size_t width_;
  Amplitudes<Real> amplitudes_;
};

/// Applies the gates of `circuit` in order to |0...0>.
template <typename Real = double>
StateVector<Real> simulate(const Circuit& circuit, const SimulatorOptions& options = {}) {
  StateVector<Real> state(circuit.width(), options);
  for (const Gate& g : circuit.gates()) state.apply(g);
  return state;
}

/// Distribution of the value held by `qubits` (qubits[k] is bit k).
template <typename Real>
Probabilities<Real> marginal(const StateVector<Real>& state, std::span<const Qubit> qubits) {
  for (Qubit q : qubits) {
    if (q >= state.width()) throw std::invalid_argument("marginal qubit outside the state");
  }
  Probabilities<Real> probs = Probabilities<Real>::Zero(Eigen::Index{1} << qubits.size());
  const auto& a = state.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Real p = std::norm(a[i]);
    if (p == Real(0)) continue;
    std::uint64_t j = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
      j |= ((static_cast<std::uint64_t>(i) >> qubits[k]) & 1U) << k;
    }
    probs[static_cast<Eigen::Index>(j)] += p;
  }
  return probs;
}

template <typename Real>
Probabilities<Real> marginal(const StateVector<Real>& state, QubitRange reg) {
  std::vector<Qubit> qubits(reg.size);
  std::iota(qubits.begin(), qubits.end(), reg.first);
  return marginal(state, std::span<const Qubit>(qubits));
}

/// Tensor product of independently simulated qubit groups.
template <typename Real = double>
class ProductState {
 public:
  struct Part {
    std::vector<Qubit> qubits;  // global qubit ids, ascending; local bit k is qubits[k]
    StateVector<Real> state;
  };

  ProductState(std::size_t width, std::vector<Part> parts) : width_(width), parts_(std::move(parts)) {}

  std::size_t width() const { return width_; }
  const std::vector<Part>& parts() const { return parts_; }

  Real norm_squared() const {
    Real n = 1;
    for (const auto& p : parts_) n *= p.state.norm_squared();
    return n;
  }

  /// Expands to the dense state; only sensible for small widths.
  Amplitudes<Real> to_dense(const SimulatorOptions& options = {}) const {
    if (width_ > options.max_qubits) throw CapacityExceeded("dense expansion exceeds the qubit cap");
    Amplitudes<Real> out = Amplitudes<Real>::Ones(Eigen::Index{1} << width_);
    for (const auto& part : parts_) {
      const auto& a = part.state.amplitudes();
      for (Eigen::Index i = 0; i < out.size(); ++i) {
        std::uint64_t local = 0;
        for (std::size_t k = 0; k < part.qubits.size(); ++k) {
          local |= ((static_cast<std::uint64_t>(i) >> part.qubits[k]) & 1U) << k;
        }
        out[i] *= a[static_cast<Eigen::Index>(local)];
      }
    }
    return out;
  }

 private:
  std::size_t width_;
  std::vector<Part> parts_;
};

namespace detail {

inline std::size_t find_root(std::vector<std::size_t>& parent, std::size_t q) {
  while (parent[q] != q) {
    parent[q] = parent[parent[q]];
    q = parent[q];
  }
  return q;
}

}  // namespace detail

/// Simulates each connected group of qubits separately.
template <typename Real = double>
ProductState<Real> simulate_product(const Circuit& circuit, const SimulatorOptions& options = {}) {
  const std::size_t width = circuit.width();
  std::vector<std::size_t> parent(width);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (const Gate& g : circuit.gates()) {
    std::vector<Qubit> qs = gate_qubits(g);
    for (std::size_t k = 1; k < qs.size(); ++k) {
      parent[detail::find_root(parent, qs[k])] = detail::find_root(parent, qs[0]);
    }
  }

  std::vector<std::size_t> part_of_root(width, width);
  std::vector<std::vector<Qubit>> groups;
  std::vector<std::size_t> part_of(width);
  std::vector<std::size_t> local_bit(width);
  for (Qubit q = 0; q < width; ++q) {
    std::size_t root = detail::find_root(parent, q);
    if (part_of_root[root] == width) {
      part_of_root[root] = groups.size();
      groups.emplace_back();
    }
    part_of[q] = part_of_root[root];
    local_bit[q] = groups[part_of[q]].size();
    groups[part_of[q]].push_back(q);
  }

  std::vector<typename ProductState<Real>::Part> parts;
  parts.reserve(groups.size());
  for (auto& g : groups) {
    const std::size_t w = g.size();
    parts.push_back({std::move(g), StateVector<Real>(w, options)});
  }

  auto local = [&](Qubit q) { return local_bit[q]; };
  for (const Gate& g : circuit.gates()) {
    parts[part_of[gate_qubits(g).front()]].state.apply(g, local);
  }
  return ProductState<Real>(width, std::move(parts));
}

template <typename Real>
Probabilities<Real> marginal(const ProductState<Real>& state, std::span<const Qubit> qubits) {
  for (Qubit q : qubits) {
    if (q >= state.width()) throw std::invalid_argument("marginal qubit outside the state");
  }
  const std::size_t n = qubits.size();
  Probabilities<Real> probs = Probabilities<Real>::Ones(Eigen::Index{1} << n);
  for (const auto& part : state.parts()) {
    // Register bits held by this part, and the matching local qubits.
    std::vector<std::size_t> reg_bits;
    std::vector<Qubit> local_qubits;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t b = 0; b < part.qubits.size(); ++b) {
        if (part.qubits[b] == qubits[k]) {
          reg_bits.push_back(k);
          local_qubits.push_back(b);
        }
      }
    }
    if (reg_bits.empty()) {
      probs *= part.state.norm_squared();
      continue;
    }
    Probabilities<Real> local = marginal(part.state, std::span<const Qubit>(local_qubits));
    for (Eigen::Index j = 0; j < probs.size(); ++j) {
      std::uint64_t sub = 0;
      for (std::size_t b = 0; b < reg_bits.size(); ++b) {
        sub |= ((static_cast<std::uint64_t>(j) >> reg_bits[b]) & 1U) << b;
      }
      probs[j] *= local[static_cast<Eigen::Index>(sub)];
    }
  }
  return probs;
}

template <typename Real>
Probabilities<Real> marginal(const ProductState<Real>& state, QubitRange reg) {
  std::vector<Qubit> qubits(reg.size);
  std::iota(qubits.begin(), qubits.end(), reg.first);
  return marginal(state, std::span<const Qubit>(qubits));
}

/// Exact output-register distribution of `circuit`, via the grouped path.
template <typename Real = double>
Probabilities<Real> output_distribution(const Circuit& circuit, const SimulatorOptions& options = {}) {
  return marginal(simulate_product<Real>(circuit, options), circuit.output_register());
}

}  // namespace dstq
