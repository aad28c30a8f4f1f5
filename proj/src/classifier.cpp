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

#include "dstq/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <thread>

#include "dstq/compile.hpp"
#include "dstq/error.hpp"
#include "dstq/sampling.hpp"
#include "dstq/simulator.hpp"

namespace dstq {

ClassifierModel::ClassifierModel(Frame frame, std::vector<std::string> attributes, std::size_t components,
                                 std::vector<std::vector<GmmModel>> grid)
    : frame_(std::move(frame)),
      attributes_(std::move(attributes)),
      components_(components),
      grid_(std::move(grid)) {
  if (attributes_.empty()) throw std::invalid_argument("classifier needs at least one attribute");
  if (grid_.size() != attributes_.size()) throw std::invalid_argument("GMM grid does not cover every attribute");
  for (const auto& column : grid_) {
    if (column.size() != frame_.size()) throw std::invalid_argument("GMM grid does not cover every class");
  }
}

ClassifierModel train_classifier(const Dataset& data, std::span<const std::size_t> rows, std::size_t components,
                                 const EmConfig& em) {
  std::vector<std::size_t> all;
  if (rows.empty()) {
    all.resize(data.rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    rows = all;
  }
  const std::size_t n = data.classes.size();
  std::vector<std::vector<GmmModel>> grid;
  for (std::size_t j = 0; j < data.attribute_count(); ++j) {
    std::vector<std::vector<double>> per_class(n);
    for (std::size_t r : rows) per_class[data.labels[r]].push_back(data.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)));
    std::vector<GmmModel> column;
    for (std::size_t i = 0; i < n; ++i) {
      if (per_class[i].empty()) {
        throw std::invalid_argument("class '" + data.classes[i] + "' has no training samples");
      }
      column.push_back(fit_gmm_em(per_class[i], components, em).model);
    }
    grid.push_back(std::move(column));
  }
  return ClassifierModel(Frame(data.classes), data.attributes, components, std::move(grid));
}

PossMF possmf_for_attribute(const Frame& frame, std::span<const GmmModel> per_class, double x) {
  if (per_class.size() != frame.size()) throw FrameMismatch("one mixture per class is required");
  Eigen::VectorXd density(static_cast<Eigen::Index>(per_class.size()));
  for (std::size_t i = 0; i < per_class.size(); ++i) density[static_cast<Eigen::Index>(i)] = gmm_pdf(per_class[i], x);
  const double peak = density.maxCoeff();
  if (!(peak > 0.0)) return PossMF(frame, Eigen::VectorXd::Ones(density.size()));
  Eigen::VectorXd support = density / peak;
  // The maximizer is exactly 1; others are <= 1 up to rounding.
  support = support.cwiseMin(1.0);
  return PossMF(frame, std::move(support));
}

std::vector<PossMF> attribute_evidence(const ClassifierModel& model, std::span<const double> x) {
  if (x.size() != model.attributes().size()) {
    throw std::invalid_argument("sample has " + std::to_string(x.size()) + " attributes; the model expects " +
                                std::to_string(model.attributes().size()));
  }
  std::vector<PossMF> evidence;
  evidence.reserve(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    evidence.push_back(possmf_for_attribute(model.frame(), model.attribute_models(j), x[j]));
  }
  return evidence;
}

namespace {

Classification decide(MassFunction fused) {
  Pignistic p = betp(fused);
  const std::size_t d = p.decision();
  return Classification{d, std::move(p), std::move(fused)};
}

}  // namespace

Classification classify(const ClassifierModel& model, std::span<const double> x, const Backend& backend) {
  std::vector<PossMF> evidence = attribute_evidence(model, x);
  Circuit circuit = attribute_fusion_circuit(evidence);
  Eigen::VectorXd probs = output_distribution<double>(circuit);
  if (const auto* shots = std::get_if<ShotsBackend>(&backend)) {
    return decide(extract_mass(model.frame(), sample(probs, shots->shots, shots->seed)));
  }
  return decide(MassFunction(model.frame(), std::move(probs)));
}

Classification classify_classical(const ClassifierModel& model, std::span<const double> x) {
  std::vector<PossMF> evidence = attribute_evidence(model, x);
  MassFunction fused = cdbft(evidence.front());
  for (std::size_t j = 1; j < evidence.size(); ++j) {
    const MassFunction pair[] = {fused, cdbft(evidence[j])};
    fused = combine_conjunctive(pair);
  }
  return decide(std::move(fused));
}

// ---------------------------------------------------------------------------

std::uint64_t split_seed(std::uint64_t master_seed, double fraction, std::size_t repeat) {
  const auto fraction_key = static_cast<std::uint64_t>(std::llround(fraction * 1e6));
  return derive_seed(derive_seed(master_seed, fraction_key), repeat);
}

Split stratified_split(const Dataset& data, double fraction, std::uint64_t seed, std::size_t min_train) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw std::invalid_argument("training fraction must be in (0, 1]");
  Split split;
  if (fraction >= 1.0 - 1e-12) {
    for (std::size_t r = 0; r < data.rows(); ++r) split.train.push_back(r);
    split.test = split.train;
    return split;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < data.classes.size(); ++c) {
    std::vector<std::size_t> members;
    for (std::size_t r = 0; r < data.rows(); ++r) {
      if (data.labels[r] == c) members.push_back(r);
    }
    if (members.size() < min_train) {
      throw std::invalid_argument("class '" + data.classes[c] + "' has " + std::to_string(members.size()) +
                                  " rows; at least " + std::to_string(min_train) + " are needed for training");
    }
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[uniform_below(rng, i)]);
    }
    auto take = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(members.size())));
    take = std::clamp(take, std::max<std::size_t>(min_train, 1), members.size());
    split.train.insert(split.train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(take));
    split.test.insert(split.test.end(), members.begin() + static_cast<std::ptrdiff_t>(take), members.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

SplitOutcome run_split(const Dataset& data, const Split& split, const ClassifierModel& model, Pipeline pipeline,
                       std::uint64_t shots, std::uint64_t seed) {
  SplitOutcome out;
  std::vector<double> x(data.attribute_count());
  for (std::size_t r : split.test) {
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = data.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
    auto run = [&]() -> Classification {
      switch (pipeline) {
        case Pipeline::kClassical:
          return classify_classical(model, x);
        case Pipeline::kShots:
          return classify(model, x, ShotsBackend{shots, derive_seed(seed, r)});
        case Pipeline::kExact:
          break;
      }
      return classify(model, x, ExactBackend{});
    };
    try {
      const Classification c = run();
      out.decisions.push_back(c.decision);
      if (c.decision == data.labels[r]) ++out.correct;
    } catch (const TotalConflict&) {
      out.decisions.push_back(std::numeric_limits<std::size_t>::max());
      ++out.conflicts;
    }
  }
  return out;
}

EvalReport evaluate(const Dataset& data, const EvalConfig& config) {
  if (config.fractions.empty()) throw std::invalid_argument("no training fractions given");
  if (config.repeats == 0) throw std::invalid_argument("repeats must be at least 1");
  EvalReport report;
  for (double f : config.fractions) {
    for (std::size_t r = 0; r < config.repeats; ++r) {
      report.runs.push_back({f, r, split_seed(config.master_seed, f, r), 0.0, 0, 0});
    }
  }

  auto job = [&](RepeatResult& run) {
    Split split = stratified_split(data, run.fraction, run.seed, config.components);
    ClassifierModel model = train_classifier(data, split.train, config.components, config.em);
    SplitOutcome outcome = run_split(data, split, model, config.pipeline, config.shots, run.seed);
    run.test_size = split.test.size();
    run.conflicts = outcome.conflicts;
    run.accuracy = split.test.empty() ? 0.0 : static_cast<double>(outcome.correct) / static_cast<double>(split.test.size());
  };

  std::size_t threads = config.threads ? config.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, report.runs.size());
  if (threads <= 1) {
    for (auto& run : report.runs) job(run);
  } else {
    // Runs are claimed round-robin; each writes only its own slot.
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < report.runs.size(); i += threads) job(report.runs[i]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  for (double f : config.fractions) {
    FractionSummary s{f, 0, 0.0, 0.0};
    std::vector<double> acc;
    for (const auto& run : report.runs) {
      if (run.fraction == f) acc.push_back(run.accuracy);
    }
    s.repeats = acc.size();
    for (double a : acc) s.mean_accuracy += a;
    s.mean_accuracy /= static_cast<double>(acc.size());
    if (acc.size() > 1) {
      double ss = 0.0;
      for (double a : acc) ss += (a - s.mean_accuracy) * (a - s.mean_accuracy);
      s.std_accuracy = std::sqrt(ss / static_cast<double>(acc.size() - 1));
    }
    report.summary.push_back(s);
  }
  return report;
}

std::string format_fraction(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", fraction);
  return buf;
}

void write_report_csv(std::ostream& out, const EvalReport& report) {
  char buf[64];
  out << "fraction,repeat,seed,accuracy\n";
  for (const auto& run : report.runs) {
    std::snprintf(buf, sizeof buf, "%.10f", run.accuracy);
    out << format_fraction(run.fraction) << ',' << run.repeat << ',' << run.seed << ',' << buf << '\n';
  }
  out << "\nfraction,repeats,mean_accuracy,std_accuracy\n";
  for (const auto& s : report.summary) {
    out << format_fraction(s.fraction) << ',' << s.repeats << ',';
    std::snprintf(buf, sizeof buf, "%.10f,%.10f", s.mean_accuracy, s.std_accuracy);
    out << buf << '\n';
  }
}

std::vector<double> parse_fraction_range(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string::npos ? std::string::npos : colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) return {parse_number(parts[0], "fraction")};
  if (parts.size() != 3) throw FormatError("fraction range must look like a:b:step, got '" + text + "'");
  const double a = parse_number(parts[0], "fraction range start");
  const double b = parse_number(parts[1], "fraction range end");
  const double step = parse_number(parts[2], "fraction range step");
  if (!(step > 0.0) || b < a) throw FormatError("fraction range '" + text + "' is empty or has a non-positive step");
  const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) {
    // Round to 1e-9 so 0.3 + 4 * 0.1 prints as 0.7.
    out.push_back(std::round((a + static_cast<double>(i) * step) * 1e9) / 1e9);
  }
  return out;
}

}  // namespace dstq
