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

// Command-line front end: combine, circuit, train, predict, eval.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dstq/circuit.hpp"
#include "dstq/classifier.hpp"
#include "dstq/compile.hpp"
#include "dstq/dataset.hpp"
#include "dstq/error.hpp"
#include "dstq/io.hpp"
#include "dstq/mass.hpp"
#include "dstq/rule.hpp"
#include "dstq/sampling.hpp"
#include "dstq/simulator.hpp"
#include "json.hpp"

namespace {

using dstq::FocalIndex;
using ordered_json = nlohmann::ordered_json;

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::optional<std::string>& out, const std::string& text) {
  if (out) {
    dstq::write_text_file(*out, text);
  } else {
    std::cout << text;
  }
}

/// "&", "|" and "^" expand to a chain over m1..mp; anything else is rule text.
dstq::RuleExpr resolve_rule(const std::string& text, std::size_t p) {
  if (text == "&" || text == "|" || text == "^") {
    if (p == 0) throw dstq::Error("rule sugar needs at least one mass");
    std::string chain = "m1";
    for (std::size_t k = 2; k <= p; ++k) chain += " " + text + " m" + std::to_string(k);
    return dstq::parse_rule(chain);
  }
  return dstq::parse_rule(text);
}

struct BackendFlags {
  std::string backend = "exact";
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
};

void add_backend_flags(CLI::App* cmd, BackendFlags& flags, std::vector<std::string> choices) {
  cmd->add_option("--backend", flags.backend, "Evaluation backend")->check(CLI::IsMember(choices))->capture_default_str();
  cmd->add_option("--shots", flags.shots, "Measurement shots for the shots backend")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", flags.seed, "Master seed")->capture_default_str();
}

// ---------------------------------------------------------------------------

struct CombineArgs {
  std::string rule = "&";
  std::vector<std::string> masses;
  BackendFlags backend;
  std::optional<std::string> out;
  std::string format = "text";
};

int run_combine(const CombineArgs& args) {
  dstq::NamedMasses named;
  for (std::size_t k = 0; k < args.masses.size(); ++k) {
    named.emplace("m" + std::to_string(k + 1), dstq::read_mass_file(args.masses[k]));
  }
  const dstq::RuleExpr rule = resolve_rule(args.rule, args.masses.size());
  const dstq::MassFunction actual = dstq::combine_rule(rule, named);
  const dstq::Circuit circuit = dstq::rule_circuit(rule, named);
  Eigen::VectorXd probs = dstq::output_distribution<double>(circuit);
  const dstq::Frame& frame = actual.frame();
  const dstq::MassFunction simulated = args.backend.backend == "shots"
      ? dstq::extract_mass(frame, dstq::sample(probs, args.backend.shots, args.backend.seed))
      : dstq::MassFunction(frame, std::move(probs));

  if (args.out) dstq::write_text_file(*args.out, dstq::format_mass_json(simulated));

  std::ostringstream report;
  if (args.format == "json") {
    ordered_json doc;
    doc["rule"] = dstq::to_string(rule);
    doc["backend"] = args.backend.backend;
    if (args.backend.backend == "shots") {
      doc["shots"] = args.backend.shots;
      doc["seed"] = args.backend.seed;
    }
    doc["elements"] = frame.labels();
    ordered_json rows = ordered_json::array();
    for (FocalIndex f = 0; f < actual.size(); ++f) {
      rows.push_back({{"subset", dstq::subset_key(frame, f)},
                      {"simulated", simulated[f]},
                      {"actual", actual[f]},
                      {"error", simulated[f] - actual[f]}});
    }
    doc["rows"] = std::move(rows);
    report << doc.dump(2) << '\n';
  } else if (args.format == "csv") {
    report << "subset,simulated,actual,error\n";
    for (FocalIndex f = 0; f < actual.size(); ++f) {
      report << '"' << dstq::subset_key(frame, f) << "\"," << exact(simulated[f]) << ',' << exact(actual[f]) << ','
             << exact(simulated[f] - actual[f]) << '\n';
    }
  } else {
    report << "rule: " << dstq::to_string(rule) << '\n';
    report << "backend: " << args.backend.backend;
    if (args.backend.backend == "shots") report << " (shots=" << args.backend.shots << ", seed=" << args.backend.seed << ')';
    report << '\n';
    std::size_t width = 8;
    for (FocalIndex f = 0; f < actual.size(); ++f) width = std::max(width, dstq::subset_key(frame, f).size() + 4);
    auto pad = [](std::string s, std::size_t w) { return s.size() < w ? s + std::string(w - s.size(), ' ') : s; };
    report << pad("subset", width) << pad("Simulated", 12) << pad("Actual", 12) << "Error\n";
    for (FocalIndex f = 0; f < actual.size(); ++f) {
      char err[32];
      std::snprintf(err, sizeof err, "%+.3e", simulated[f] - actual[f]);
      report << pad("{" + dstq::subset_key(frame, f) + "}", width) << pad(fixed(simulated[f]), 12)
             << pad(fixed(actual[f]), 12) << err << '\n';
    }
  }
  std::cout << report.str();
  return 0;
}

// ---------------------------------------------------------------------------

struct CircuitArgs {
  std::string rule;
  std::size_t n = 2;
  std::size_t p = 2;
  std::string format = "text";
  std::optional<std::string> out;
};

int run_circuit(const CircuitArgs& args) {
  const dstq::RuleExpr rule = resolve_rule(args.rule, args.p);
  const dstq::LoweredPlan plan = dstq::lower(rule);
  const dstq::Circuit circuit = dstq::compile_plan(plan, args.n);
  const dstq::ResourceReport res = dstq::resources(circuit);
  std::string text;
  if (args.format == "json") {
    ordered_json doc;
    doc["rule"] = dstq::to_string(rule);
    doc["n"] = args.n;
    doc["inputs"] = plan.inputs;
    doc["and_stages"] = plan.and_stage_count();
    doc["not_stages"] = plan.not_stage_count();
    doc["output_register"] = {{"first", circuit.output_register().first}, {"size", circuit.output_register().size}};
    std::vector<std::string> gates;
    std::istringstream lines(dstq::dump(circuit));
    for (std::string line; std::getline(lines, line);) gates.push_back(line);
    doc["gates"] = gates;
    doc["resources"] = {{"width", res.width}, {"x", res.x}, {"ry", res.ry}, {"cry", res.cry}, {"mcx", res.mcx},
                        {"total", res.total()}};
    text = doc.dump(2) + "\n";
  } else if (args.format == "csv") {
    text = "width,x,ry,cry,mcx,total\n" + std::to_string(res.width) + ',' + std::to_string(res.x) + ',' +
           std::to_string(res.ry) + ',' + std::to_string(res.cry) + ',' + std::to_string(res.mcx) + ',' +
           std::to_string(res.total()) + '\n';
  } else {
    text = "# rule: " + dstq::to_string(rule) + "\n# plan:\n";
    std::istringstream lines(dstq::describe(plan));
    for (std::string line; std::getline(lines, line);) text += "#   " + line + "\n";
    text += dstq::dump(circuit);
    text += "# " + dstq::to_string(res) + "\n";
  }
  emit(args.out, text);
  return 0;
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string data;
  std::size_t components = 3;
  std::optional<std::string> out;
};

int run_train(const TrainArgs& args) {
  const dstq::Dataset data = dstq::read_dataset_csv(args.data);
  const dstq::ClassifierModel model = dstq::train_classifier(data, {}, args.components);
  emit(args.out, dstq::format_model_json(model));
  return 0;
}

struct PredictArgs {
  std::string model;
  std::string data;
  BackendFlags backend;
  std::string format = "csv";
  std::optional<std::string> out;
};

int run_predict(const PredictArgs& args) {
  const dstq::ClassifierModel model = dstq::read_model_file(args.model);
  const dstq::Dataset data = dstq::read_dataset_csv(args.data);
  if (data.attributes != model.attributes()) {
    throw dstq::FormatError(args.data + ": attribute columns do not match the model");
  }
  std::vector<std::size_t> truth;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const std::string& label = data.classes[data.labels[r]];
    const auto k = model.frame().position(label);
    if (!k) throw dstq::FormatError(args.data + ": row " + std::to_string(r + 1) + " has class '" + label + "' unknown to the model");
    truth.push_back(*k);
  }
  const auto& labels = model.frame().labels();

  ordered_json rows = ordered_json::array();
  std::ostringstream csv;
  csv << "row,predicted,actual";
  for (const auto& c : labels) csv << ",betp_" << c;
  csv << '\n';
  std::vector<double> x(data.attribute_count());
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = data.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
    std::optional<dstq::Classification> c;
    try {
      if (args.backend.backend == "classical") {
        c = dstq::classify_classical(model, x);
      } else if (args.backend.backend == "shots") {
        c = dstq::classify(model, x, dstq::ShotsBackend{args.backend.shots, dstq::derive_seed(args.backend.seed, r)});
      } else {
        c = dstq::classify(model, x);
      }
    } catch (const dstq::TotalConflict&) {
      c.reset();
    }
    const std::string predicted = c ? labels[c->decision] : std::string("conflict");
    csv << r << ',' << predicted << ',' << labels[truth[r]];
    ordered_json betp = ordered_json::object();
    for (std::size_t k = 0; k < labels.size(); ++k) {
      const double v = c ? c->betp.probs()[static_cast<Eigen::Index>(k)] : 0.0;
      csv << ',' << exact(v);
      betp[labels[k]] = v;
    }
    csv << '\n';
    rows.push_back({{"row", r}, {"predicted", predicted}, {"actual", labels[truth[r]]}, {"betp", betp}});
  }
  emit(args.out, args.format == "json" ? rows.dump(2) + "\n" : csv.str());
  return 0;
}

struct EvalArgs {
  std::string data;
  std::string fractions = "0.3:0.9:0.1";
  std::size_t repeats = 100;
  std::size_t components = 3;
  std::size_t threads = 0;
  BackendFlags backend;
  std::optional<std::string> out;
};

int run_eval(const EvalArgs& args) {
  const dstq::Dataset data = dstq::read_dataset_csv(args.data);
  dstq::EvalConfig config;
  config.fractions = dstq::parse_fraction_range(args.fractions);
  config.repeats = args.repeats;
  config.components = args.components;
  config.pipeline = args.backend.backend == "classical" ? dstq::Pipeline::kClassical
                    : args.backend.backend == "shots"   ? dstq::Pipeline::kShots
                                                        : dstq::Pipeline::kExact;
  config.shots = args.backend.shots;
  config.master_seed = args.backend.seed;
  config.threads = args.threads;
  const dstq::EvalReport report = dstq::evaluate(data, config);
  std::ostringstream csv;
  dstq::write_report_csv(csv, report);
  emit(args.out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evidence combination with Dempster-Shafer mass functions and quantum circuit simulation"};
  app.require_subcommand(1);
  const std::vector<std::string> formats = {"text", "json", "csv"};

  CombineArgs combine;
  auto* c = app.add_subcommand("combine", "Combine mass files under a rule; compare the circuit with the classical oracle");
  c->add_option("--rule", combine.rule, "Rule text over m1..mp, or &, |, ^ for a chain over all masses")
      ->capture_default_str();
  c->add_option("--mass", combine.masses, "Mass file (repeatable; bound to m1, m2, ...)")
      ->required()
      ->check(CLI::ExistingFile);
  add_backend_flags(c, combine.backend, {"exact", "shots"});
  c->add_option("--out", combine.out, "Write the simulated combined mass (JSON) here");
  c->add_option("--format", combine.format, "Report format")->check(CLI::IsMember(formats))->capture_default_str();

  CircuitArgs circuit;
  auto* ci = app.add_subcommand("circuit", "Print the compiled gate listing and resource counts of a rule");
  ci->add_option("--rule", circuit.rule, "Rule text, or &, |, ^ for a chain over m1..mp")->required();
  ci->add_option("--n", circuit.n, "Frame size (qubits per register)")->check(CLI::Range(1, 30))->capture_default_str();
  ci->add_option("--p", circuit.p, "Number of masses for rule sugar")->check(CLI::PositiveNumber)->capture_default_str();
  ci->add_option("--format", circuit.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  ci->add_option("--out", circuit.out, "Output path (default: standard output)");

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Fit the per-attribute, per-class Gaussian mixtures");
  t->add_option("--data", train.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
  t->add_option("--components", train.components, "Mixture components per class")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  t->add_option("--out", train.out, "Model JSON path (default: standard output)");

  PredictArgs predict;
  auto* pr = app.add_subcommand("predict", "Classify every row of a dataset with a trained model");
  pr->add_option("--model", predict.model, "Model JSON")->required()->check(CLI::ExistingFile);
  pr->add_option("--data", predict.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
  add_backend_flags(pr, predict.backend, {"exact", "shots", "classical"});
  pr->add_option("--format", predict.format, "Output format")
      ->check(CLI::IsMember(std::vector<std::string>{"csv", "json"}))
      ->capture_default_str();
  pr->add_option("--out", predict.out, "Output path (default: standard output)");

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Repeated stratified train/test evaluation over training fractions");
  e->add_option("--data", eval.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
  e->add_option("--fractions", eval.fractions, "Training fractions as a:b:step or a single value")->capture_default_str();
  e->add_option("--repeats", eval.repeats, "Random splits per fraction")->check(CLI::PositiveNumber)->capture_default_str();
  e->add_option("--components", eval.components, "Mixture components per class")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  e->add_option("--threads", eval.threads, "Worker threads (0: all cores)")->capture_default_str();
  add_backend_flags(e, eval.backend, {"exact", "shots", "classical"});
  e->add_option("--out", eval.out, "Results CSV path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  }

  try {
    if (*c) return run_combine(combine);
    if (*ci) return run_circuit(circuit);
    if (*t) return run_train(train);
    if (*pr) return run_predict(predict);
    if (*e) return run_eval(eval);
  } catch (const std::exception& err) {
    std::cerr << "dstq: error: " << err.what() << '\n';
    return 1;
  }
  return 1;
}
