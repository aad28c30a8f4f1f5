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
#include <span>

#include "dstq/circuit.hpp"
#include "dstq/mass.hpp"
#include "dstq/rule.hpp"

namespace dstq {

/// RY angle whose rotation of |0> yields P(|1>) = support.
///
/// The RY matrix sends |0> to cos(a/2)|0> - sin(a/2)|1>, so the angle is
/// 2 * atan(sqrt(support / (1 - support))), and pi when support is 1.
double support_angle(double support);

/// One RY per element; measuring the register reproduces cdbft(poss).
Circuit prepare_simple(const PossMF& poss);

/// Binary-tree amplitude encoding of an arbitrary mass function.
///
/// Layer k rotates qubit k once for each of the 2^k patterns of qubits
/// 0..k-1, with angle 2 * atan(sqrt(m1 / m0)) where m0 and m1 are the
/// masses below that node with bit k clear and set (0/0 gives 0).
/// Squared amplitudes equal the mass; amplitude signs are not controlled.
Circuit prepare_tree(const MassFunction& m);

/// n X gates: applied after a preparation, the register holds the negation.
Circuit compile_negation(std::size_t n);

/// Gates for the plan's stages over registers of n qubits each. Register r
/// occupies qubits [r * n, (r + 1) * n); inputs start in |0> and must be
/// prepared separately (see with_inputs).
Circuit compile_plan(const LoweredPlan& plan, std::size_t n);

/// Prepends `preparations[r]` on input register r of a compiled plan body.
/// Every preparation must be n qubits wide.
Circuit with_inputs(const Circuit& body, std::span<const Circuit> preparations);

/// Full fusion circuit of the classifier: one simple-structure register per
/// attribute, then a conjunctive stage into a fresh output register.
Circuit attribute_fusion_circuit(std::span<const PossMF> evidence);

/// Tree-prepared inputs followed by the lowered rule. Measuring the output
/// register reproduces combine_rule(rule, masses).
Circuit rule_circuit(const RuleExpr& rule, const NamedMasses& masses);

}  // namespace dstq
