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

#include "dstq/compile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dstq/error.hpp"

namespace dstq {

namespace {

double node_angle(double zero_mass, double one_mass) {
  if (zero_mass <= 0.0 && one_mass <= 0.0) return 0.0;
  return 2.0 * std::atan2(std::sqrt(std::max(one_mass, 0.0)), std::sqrt(std::max(zero_mass, 0.0)));
}

}  // namespace

double support_angle(double support) { return node_angle(1.0 - support, support); }

Circuit prepare_simple(const PossMF& poss) {
  const std::size_t n = poss.frame().size();
  Circuit c(n);
  for (std::size_t k = 0; k < n; ++k) c.add(RYGate{k, support_angle(poss.support(k))});
  return c;
}

Circuit prepare_tree(const MassFunction& m) {
  const std::size_t n = m.frame().size();
  Circuit c(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t low_mask = (std::uint64_t{1} << k) - 1;
    for (std::uint64_t pattern = 0; pattern <= low_mask; ++pattern) {
      // Mass of sets agreeing with `pattern` on bits below k, split by bit k.
      double zero = 0.0;
      double one = 0.0;
      for (FocalIndex i = 0; i <= m.frame().universe(); ++i) {
        if ((i & low_mask) != pattern) continue;
        ((i >> k) & 1U ? one : zero) += m[i];
      }
      const double angle = node_angle(zero, one);
      if (k == 0) {
        c.add(RYGate{0, angle});
        continue;
      }
      CRYGate g;
      g.target = k;
      g.angle = angle;
      for (std::size_t b = 0; b < k; ++b) g.controls.push_back({b, ((pattern >> b) & 1U) != 0});
      c.add(std::move(g));
    }
  }
  return c;
}

Circuit compile_negation(std::size_t n) {
  if (n == 0) throw std::invalid_argument("negation needs at least one element");
  Circuit c(n);
  for (std::size_t k = 0; k < n; ++k) c.add(XGate{k});
  return c;
}

Circuit compile_plan(const LoweredPlan& plan, std::size_t n) {
  if (n == 0) throw std::invalid_argument("plan compilation needs at least one element");
  check_plan(plan);
  Circuit c(n * plan.register_count);
  auto qubit = [n](RegisterId reg, std::size_t k) { return reg * n + k; };
  for (const auto& stage : plan.stages) {
    if (const auto* a = std::get_if<AndStage>(&stage)) {
      // Opposite polarities on one register never fire: the target stays |0>.
      const bool contradictory = std::any_of(a->inputs.begin(), a->inputs.end(), [&](const PlanControl& x) {
        return std::any_of(a->inputs.begin(), a->inputs.end(),
                           [&](const PlanControl& y) { return x.reg == y.reg && x.positive != y.positive; });
      });
      if (contradictory) continue;
      for (std::size_t k = 0; k < n; ++k) {
        MCXGate g;
        g.target = qubit(a->output, k);
        for (const auto& in : a->inputs) g.controls.push_back({qubit(in.reg, k), in.positive});
        c.add(std::move(g));
      }
    } else {
      const RegisterId reg = std::get<NotStage>(stage).reg;
      for (std::size_t k = 0; k < n; ++k) c.add(XGate{qubit(reg, k)});
    }
  }
  c.set_output_register({qubit(plan.output, 0), n});
  return c;
}

Circuit with_inputs(const Circuit& body, std::span<const Circuit> preparations) {
  Circuit c(body.width());
  Qubit offset = 0;
  for (const auto& prep : preparations) {
    if (offset + prep.width() > body.width()) {
      throw std::invalid_argument("preparations do not fit the circuit");
    }
    c.append(prep, offset);
    offset += prep.width();
  }
  c.append(body);
  c.set_output_register(body.output_register());
  return c;
}

Circuit attribute_fusion_circuit(std::span<const PossMF> evidence) {
  if (evidence.empty()) throw std::invalid_argument("no attribute evidence");
  const std::size_t n = evidence.front().frame().size();
  std::vector<std::string> names;
  std::vector<Circuit> preps;
  for (std::size_t j = 0; j < evidence.size(); ++j) {
    if (evidence[j].frame() != evidence.front().frame()) {
      throw FrameMismatch("attribute evidence on different frames");
    }
    names.push_back("m" + std::to_string(j + 1));
    preps.push_back(prepare_simple(evidence[j]));
  }
  // A single attribute has nothing to fuse; its register is the output.
  RuleExpr rule = names.size() == 1 ? rule::var(names[0]) : [&] {
    std::vector<RuleExpr> vars;
    for (const auto& name : names) vars.push_back(rule::var(name));
    return rule::all_of(std::move(vars));
  }();
  return with_inputs(compile_plan(lower(rule, names), n), preps);
}

Circuit rule_circuit(const RuleExpr& rule, const NamedMasses& masses) {
  const LoweredPlan plan = lower(rule);
  const Frame* frame = nullptr;
  std::vector<Circuit> preps;
  for (const auto& name : plan.inputs) {
    auto it = masses.find(name);
    if (it == masses.end()) throw UnboundVariable(name);
    if (frame == nullptr) {
      frame = &it->second.frame();
    } else if (it->second.frame() != *frame) {
      throw FrameMismatch("mass '" + name + "' is defined on a different frame");
    }
    preps.push_back(prepare_tree(it->second));
  }
  return with_inputs(compile_plan(plan, frame->size()), preps);
}

}  // namespace dstq
