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

// Set-theoretic combination rules as Boolean expressions over source masses.
//
// Grammar (whitespace is insignificant):
//
//   expr   := term (("|" | "^") term)*      left-associative
//   term   := factor ("&" factor)*
//   factor := "~" factor | "(" expr ")" | identifier
//
// "&" is intersection, "|" union, "^" symmetric difference and "~"
// complement. Every operator is applied independently to each element bit
// of the focal sets.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dstq {

struct RuleExpr {
  enum class Kind { kVar, kNot, kAnd, kOr, kXor };

  Kind kind = Kind::kVar;
  std::string name;                // kVar only
  std::vector<RuleExpr> children;  // kNot: 1, kAnd/kOr: >= 2, kXor: 2

  bool operator==(const RuleExpr&) const = default;
};

namespace rule {

RuleExpr var(std::string name);
RuleExpr negate(RuleExpr child);
RuleExpr all_of(std::vector<RuleExpr> children);
RuleExpr any_of(std::vector<RuleExpr> children);
RuleExpr exclusive(RuleExpr left, RuleExpr right);

}  // namespace rule

/// Parses rule text; throws ParseError carrying the offending offset.
RuleExpr parse_rule(std::string_view text);

/// Canonical text form. Reparses to an equal tree.
std::string to_string(const RuleExpr& expr);

/// Variable names in order of first appearance (left to right).
std::vector<std::string> variables(const RuleExpr& expr);

/// Throws std::invalid_argument if the tree breaks an arity or naming rule.
void validate(const RuleExpr& expr);

bool eval_bool(const RuleExpr& expr, const std::map<std::string, bool>& bits);

/// Truth table of `expr` over `inputs`: entry `a` is the value when input r
/// takes bit r of `a`. Throws UnboundVariable when `expr` names a variable
/// outside `inputs`.
std::vector<bool> truth_table(const RuleExpr& expr, const std::vector<std::string>& inputs);

// ---------------------------------------------------------------------------
// Lowered plans
// ---------------------------------------------------------------------------

/// Register index inside a plan. Registers [0, inputs.size()) hold the input
/// masses; every AND stage allocates the next free register.
using RegisterId = std::size_t;

struct PlanControl {
  RegisterId reg = 0;
  bool positive = true;  // false: triggers when the register bit is 0

  bool operator==(const PlanControl&) const = default;
};

struct AndStage {
  std::vector<PlanControl> inputs;
  RegisterId output = 0;

  bool operator==(const AndStage&) const = default;
};

struct NotStage {
  RegisterId reg = 0;

  bool operator==(const NotStage&) const = default;
};

using PlanStage = std::variant<AndStage, NotStage>;

/// Sequence of single-operator stages realizing a rule element-wise.
struct LoweredPlan {
  std::vector<std::string> inputs;
  std::vector<PlanStage> stages;
  std::size_t register_count = 0;
  RegisterId output = 0;

  std::size_t and_stage_count() const;
  std::size_t not_stage_count() const;
};

/// Lowers `expr` to AND/NOT stages. Inputs default to variables(expr); a
/// caller may pass a longer input list (extra registers stay untouched).
LoweredPlan lower(const RuleExpr& expr);
LoweredPlan lower(const RuleExpr& expr, std::vector<std::string> inputs);

/// Runs the plan on one bit per input register and returns the output bit.
/// Input r takes bit r of `assignment`.
bool evaluate_plan(const LoweredPlan& plan, std::size_t assignment);

/// Checks the stage ordering invariant; throws std::logic_error.
void check_plan(const LoweredPlan& plan);

std::string describe(const LoweredPlan& plan);

}  // namespace dstq
