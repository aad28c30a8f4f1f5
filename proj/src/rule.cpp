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

#include "dstq/rule.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "dstq/error.hpp"

namespace dstq {

namespace rule {

RuleExpr var(std::string name) {
  RuleExpr e;
  e.kind = RuleExpr::Kind::kVar;
  e.name = std::move(name);
  return e;
}

RuleExpr negate(RuleExpr child) {
  RuleExpr e;
  e.kind = RuleExpr::Kind::kNot;
  e.children.push_back(std::move(child));
  return e;
}

RuleExpr all_of(std::vector<RuleExpr> children) {
  RuleExpr e;
  e.kind = RuleExpr::Kind::kAnd;
  e.children = std::move(children);
  return e;
}

RuleExpr any_of(std::vector<RuleExpr> children) {
  RuleExpr e;
  e.kind = RuleExpr::Kind::kOr;
  e.children = std::move(children);
  return e;
}

RuleExpr exclusive(RuleExpr left, RuleExpr right) {
  RuleExpr e;
  e.kind = RuleExpr::Kind::kXor;
  e.children.push_back(std::move(left));
  e.children.push_back(std::move(right));
  return e;
}

}  // namespace rule

namespace {

using Kind = RuleExpr::Kind;

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RuleExpr parse() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty rule", pos_);
    RuleExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  // Chains built by one loop are flattened; parenthesized operands are not,
  // which keeps printing and reparsing exact.
  RuleExpr expr() {
    RuleExpr acc = term();
    bool chain_or = false;
    for (char op = peek(); op == '|' || op == '^'; op = peek()) {
      ++pos_;
      RuleExpr rhs = term();
      if (op == '|') {
        if (chain_or) {
          acc.children.push_back(std::move(rhs));
        } else {
          acc = rule::any_of({std::move(acc), std::move(rhs)});
          chain_or = true;
        }
      } else {
        acc = rule::exclusive(std::move(acc), std::move(rhs));
        chain_or = false;
      }
    }
    return acc;
  }

  RuleExpr term() {
    RuleExpr first = factor();
    if (peek() != '&') return first;
    std::vector<RuleExpr> children;
    children.push_back(std::move(first));
    while (peek() == '&') {
      ++pos_;
      children.push_back(factor());
    }
    return rule::all_of(std::move(children));
  }

  RuleExpr factor() {
    char c = peek();
    if (c == '~') {
      ++pos_;
      return rule::negate(factor());
    }
    if (c == '(') {
      std::size_t open = pos_++;
      RuleExpr inner = expr();
      if (peek() != ')') throw ParseError("unbalanced '(' opened at " + std::to_string(open), pos_);
      ++pos_;
      return inner;
    }
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      return rule::var(std::string(text_.substr(start, pos_ - start)));
    }
    if (c == '\0') throw ParseError("unexpected end of rule", pos_);
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print(const RuleExpr& e, std::string& out);

void print_operand(const RuleExpr& child, bool allow_and, std::string& out) {
  bool bare = child.kind == Kind::kVar || child.kind == Kind::kNot ||
              (allow_and && child.kind == Kind::kAnd);
  if (!bare) out += '(';
  print(child, out);
  if (!bare) out += ')';
}

void print(const RuleExpr& e, std::string& out) {
  switch (e.kind) {
    case Kind::kVar:
      out += e.name;
      return;
    case Kind::kNot:
      out += '~';
      print_operand(e.children[0], false, out);
      return;
    case Kind::kAnd:
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += " & ";
        print_operand(e.children[i], false, out);
      }
      return;
    case Kind::kOr:
    case Kind::kXor: {
      const char* sep = e.kind == Kind::kOr ? " | " : " ^ ";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += sep;
        print_operand(e.children[i], true, out);
      }
      return;
    }
  }
}

void collect_variables(const RuleExpr& e, std::vector<std::string>& out) {
  if (e.kind == Kind::kVar) {
    if (std::find(out.begin(), out.end(), e.name) == out.end()) out.push_back(e.name);
    return;
  }
  for (const auto& c : e.children) collect_variables(c, out);
}

template <typename Lookup>
bool eval_with(const RuleExpr& e, const Lookup& lookup) {
  switch (e.kind) {
    case Kind::kVar:
      return lookup(e.name);
    case Kind::kNot:
      return !eval_with(e.children[0], lookup);
    case Kind::kAnd:
      return std::all_of(e.children.begin(), e.children.end(),
                         [&](const RuleExpr& c) { return eval_with(c, lookup); });
    case Kind::kOr:
      return std::any_of(e.children.begin(), e.children.end(),
                         [&](const RuleExpr& c) { return eval_with(c, lookup); });
    case Kind::kXor: {
      bool a = eval_with(e.children[0], lookup);
      bool b = eval_with(e.children[1], lookup);
      return (a && !b) || (!a && b);
    }
  }
  return false;
}

// Lowering state. `control` yields an AND input for a subexpression,
// `materialize` yields a fresh register holding it (or its complement).
class Lowerer {
 public:
  explicit Lowerer(std::vector<std::string> inputs) {
    plan_.inputs = std::move(inputs);
    plan_.register_count = plan_.inputs.size();
    for (std::size_t r = 0; r < plan_.inputs.size(); ++r) {
      if (!slots_.emplace(plan_.inputs[r], r).second) {
        throw std::invalid_argument("duplicate plan input '" + plan_.inputs[r] + "'");
      }
    }
  }

  LoweredPlan run(const RuleExpr& e) {
    plan_.output = materialize(e, false);
    return std::move(plan_);
  }

 private:
  RegisterId input(const std::string& name) const {
    auto it = slots_.find(name);
    if (it == slots_.end()) throw UnboundVariable(name);
    return it->second;
  }

  // Strips Not wrappers, returning the innermost node and the parity.
  static std::pair<const RuleExpr*, bool> strip(const RuleExpr& e) {
    const RuleExpr* node = &e;
    bool odd = false;
    while (node->kind == Kind::kNot) {
      node = &node->children[0];
      odd = !odd;
    }
    return {node, odd};
  }

  // `flip` is a negation introduced by De Morgan rewriting and is always
  // absorbed into the control polarity. Explicit negations of a composite
  // subexpression become a NOT stage on its register.
  PlanControl control(const RuleExpr& e, bool flip) {
    auto [base, odd] = strip(e);
    if (base->kind == Kind::kVar) {
      return {input(base->name), odd == flip};
    }
    if (odd && !flip) {
      return {materialize(*base, true), true};
    }
    return {materialize(*base, false), !(flip && !odd)};
  }

  RegisterId fresh() { return plan_.register_count++; }

  // Repeated identical controls collapse to one; a register required with
  // both polarities is kept, making the stage constant false.
  RegisterId emit_and(std::vector<PlanControl> inputs) {
    std::vector<PlanControl> unique;
    for (const auto& c : inputs) {
      if (std::find(unique.begin(), unique.end(), c) == unique.end()) unique.push_back(c);
    }
    AndStage stage{std::move(unique), fresh()};
    RegisterId out = stage.output;
    plan_.stages.emplace_back(std::move(stage));
    return out;
  }

  void emit_not(RegisterId reg) { plan_.stages.emplace_back(NotStage{reg}); }

  RegisterId materialize(const RuleExpr& e, bool negated) {
    switch (e.kind) {
      case Kind::kVar: {
        RegisterId reg = input(e.name);
        if (negated) emit_not(reg);
        return reg;
      }
      case Kind::kNot:
        return materialize(e.children[0], !negated);
      case Kind::kAnd: {
        std::vector<PlanControl> controls;
        for (const auto& c : e.children) controls.push_back(control(c, false));
        RegisterId out = emit_and(std::move(controls));
        if (negated) emit_not(out);
        return out;
      }
      case Kind::kOr: {
        // a | b = ~(~a & ~b)
        std::vector<PlanControl> controls;
        for (const auto& c : e.children) controls.push_back(control(c, true));
        RegisterId out = emit_and(std::move(controls));
        if (!negated) emit_not(out);
        return out;
      }
      case Kind::kXor: {
        // a ^ b = (a & ~b) | (~a & b)
        PlanControl a = control(e.children[0], false);
        PlanControl b = control(e.children[1], false);
        PlanControl not_a{a.reg, !a.positive};
        PlanControl not_b{b.reg, !b.positive};
        RegisterId left = emit_and({a, not_b});
        RegisterId right = emit_and({not_a, b});
        RegisterId out = emit_and({{left, false}, {right, false}});
        if (!negated) emit_not(out);
        return out;
      }
    }
    throw std::logic_error("unreachable rule kind");
  }

  LoweredPlan plan_;
  std::unordered_map<std::string, RegisterId> slots_;
};

}  // namespace

RuleExpr parse_rule(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const RuleExpr& expr) {
  std::string out;
  print(expr, out);
  return out;
}

std::vector<std::string> variables(const RuleExpr& expr) {
  std::vector<std::string> out;
  collect_variables(expr, out);
  return out;
}

void validate(const RuleExpr& e) {
  switch (e.kind) {
    case Kind::kVar:
      if (e.name.empty() || !is_ident_start(e.name[0]) ||
          !std::all_of(e.name.begin(), e.name.end(), is_ident_char)) {
        throw std::invalid_argument("invalid variable name '" + e.name + "'");
      }
      if (!e.children.empty()) throw std::invalid_argument("variable with children");
      return;
    case Kind::kNot:
      if (e.children.size() != 1) throw std::invalid_argument("~ takes one operand");
      break;
    case Kind::kAnd:
    case Kind::kOr:
      if (e.children.size() < 2) throw std::invalid_argument("& and | take at least two operands");
      break;
    case Kind::kXor:
      if (e.children.size() != 2) throw std::invalid_argument("^ takes two operands");
      break;
  }
  for (const auto& c : e.children) validate(c);
}

bool eval_bool(const RuleExpr& expr, const std::map<std::string, bool>& bits) {
  return eval_with(expr, [&](const std::string& name) {
    auto it = bits.find(name);
    if (it == bits.end()) throw UnboundVariable(name);
    return it->second;
  });
}

std::vector<bool> truth_table(const RuleExpr& expr, const std::vector<std::string>& inputs) {
  if (inputs.size() > 24) throw CapacityExceeded("truth table over more than 24 inputs");
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t r = 0; r < inputs.size(); ++r) slot.emplace(inputs[r], r);
  for (const auto& v : variables(expr)) {
    if (!slot.contains(v)) throw UnboundVariable(v);
  }
  std::vector<bool> table(std::size_t{1} << inputs.size());
  for (std::size_t a = 0; a < table.size(); ++a) {
    table[a] = eval_with(expr, [&](const std::string& name) {
      return ((a >> slot.at(name)) & 1U) != 0;
    });
  }
  return table;
}

std::size_t LoweredPlan::and_stage_count() const {
  return static_cast<std::size_t>(std::count_if(stages.begin(), stages.end(), [](const PlanStage& s) {
    return std::holds_alternative<AndStage>(s);
  }));
}

std::size_t LoweredPlan::not_stage_count() const { return stages.size() - and_stage_count(); }

LoweredPlan lower(const RuleExpr& expr) { return lower(expr, variables(expr)); }

LoweredPlan lower(const RuleExpr& expr, std::vector<std::string> inputs) {
  validate(expr);
  LoweredPlan plan = Lowerer(std::move(inputs)).run(expr);
  check_plan(plan);
  return plan;
}

bool evaluate_plan(const LoweredPlan& plan, std::size_t assignment) {
  std::vector<bool> regs(plan.register_count, false);
  for (std::size_t r = 0; r < plan.inputs.size(); ++r) regs[r] = ((assignment >> r) & 1U) != 0;
  for (const auto& stage : plan.stages) {
    if (const auto* a = std::get_if<AndStage>(&stage)) {
      bool fire = std::all_of(a->inputs.begin(), a->inputs.end(),
                              [&](const PlanControl& c) { return regs[c.reg] == c.positive; });
      regs[a->output] = regs[a->output] != fire;
    } else {
      RegisterId r = std::get<NotStage>(stage).reg;
      regs[r] = !regs[r];
    }
  }
  return regs[plan.output];
}

void check_plan(const LoweredPlan& plan) {
  std::size_t live = plan.inputs.size();
  for (const auto& stage : plan.stages) {
    if (const auto* a = std::get_if<AndStage>(&stage)) {
      if (a->inputs.empty()) throw std::logic_error("AND stage without inputs");
      for (auto it = a->inputs.begin(); it != a->inputs.end(); ++it) {
        if (it->reg >= live) throw std::logic_error("AND stage reads a register not yet produced");
        if (std::find(a->inputs.begin(), it, *it) != it) throw std::logic_error("AND stage repeats a control");
      }
      if (a->output != live) throw std::logic_error("AND stage must target the next fresh register");
      ++live;
    } else if (std::get<NotStage>(stage).reg >= live) {
      throw std::logic_error("NOT stage on a register not yet produced");
    }
  }
  if (live != plan.register_count) throw std::logic_error("register count mismatch");
  if (plan.output >= plan.register_count) throw std::logic_error("output register out of range");
}

std::string describe(const LoweredPlan& plan) {
  std::ostringstream os;
  os << "inputs:";
  for (std::size_t r = 0; r < plan.inputs.size(); ++r) os << " r" << r << '=' << plan.inputs[r];
  os << '\n';
  for (const auto& stage : plan.stages) {
    if (const auto* a = std::get_if<AndStage>(&stage)) {
      os << "AND";
      for (const auto& c : a->inputs) os << ' ' << (c.positive ? "" : "~") << 'r' << c.reg;
      os << " -> r" << a->output << '\n';
    } else {
      os << "NOT r" << std::get<NotStage>(stage).reg << '\n';
    }
  }
  os << "output: r" << plan.output << '\n';
  return os.str();
}

}  // namespace dstq
