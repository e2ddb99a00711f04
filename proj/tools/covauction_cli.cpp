// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covauction/baselines.hpp"
#include "covauction/errors.hpp"
#include "covauction/harness.hpp"
#include "covauction/lp.hpp"
#include "covauction/mechanism.hpp"
#include "covauction/revenue.hpp"
#include "covauction/rng.hpp"
#include "covauction/rounding.hpp"
#include "covauction/valuation.hpp"

namespace {

using covauction::Allocation;
using covauction::CoverageSampler;
using covauction::ExperimentConfig;
using covauction::Instance;
using covauction::InstanceFile;
using covauction::MechanismOutcome;
using covauction::MonotonicityReport;
using covauction::NeighborhoodIndex;
using covauction::SyntheticConfig;
using nlohmann::json;

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    throw covauction::InvalidInputError("cannot write output file: " +
                                        out_path);
  }
  out << doc.dump(2) << "\n";
}

json outcome_json(const MechanismOutcome& outcome) {
  json doc;
  doc["lp_objective"] = outcome.lp_objective;
  doc["assignment"] = outcome.allocation.assignment;
  doc["kept"] = json::array();
  for (char k : outcome.kept) doc["kept"].push_back(k != 0);
  doc["payments"] = outcome.payments;
  doc["expected_coverage"] = outcome.expected_coverage;
  doc["realized_coverage"] = outcome.realized_coverage;
  return doc;
}

json report_json(const MonotonicityReport& report) {
  json pairs = json::array();
  for (const MonotonicityReport::Pair& p : report.pairs) {
    pairs.push_back({
        {"bidder", p.bidder},
        {"high_bid", p.high_bid},
        {"low_bid", p.low_bid},
        {"high_estimate", p.high_estimate},
        {"low_estimate", p.low_estimate},
        {"verdict", p.violation ? "violation-at-confidence" : "consistent"},
    });
  }
  return json{{"pairs", std::move(pairs)},
              {"violations", report.violations},
              {"trials", report.trials},
              {"epsilon", report.epsilon}};
}

int run(int argc, char** argv) {
  CLI::App app{"Coverage-valuation data auction toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int trials = 150000;
  double epsilon = 0.01;
  std::string out_path;

  // gen
  CLI::App* gen = app.add_subcommand("gen", "Generate an instance file");
  SyntheticConfig syn;
  std::string embeddings_path, embeddings_format = "text";
  gen->add_option("--seed", seed, "Master seed");
  gen->add_option("-m,--bidders", syn.num_bidders, "Bidder count");
  gen->add_option("-n,--points", syn.num_points, "Point count");
  gen->add_option("-d,--dim", syn.dim, "Coordinate dimension");
  gen->add_option("--classes", syn.num_classes, "Class count");
  gen->add_option("--type-count", syn.types.count, "Bid grid size");
  gen->add_option("--type-spacing", syn.types.spacing, "Bid grid spacing");
  gen->add_option("--type-start", syn.types.start, "Lowest bid");
  gen->add_option("--low", syn.coord_low, "Coordinate lower bound");
  gen->add_option("--high", syn.coord_high, "Coordinate upper bound");
  gen->add_option("--embeddings", embeddings_path,
                  "Use points from this file instead of drawing coordinates");
  gen->add_option("--format", embeddings_format,
                  "Embeddings file format (text)");
  gen->add_option("-o,--out", out_path, "Instance file to write")->required();

  // solve
  CLI::App* solve = app.add_subcommand(
      "solve", "Fractional relaxation and rounding summary");
  std::string instance_path, dump_path;
  solve->add_option("-i,--instance", instance_path, "Instance file")
      ->required();
  solve->add_option("--dump-lp", dump_path, "Also dump the LP in text format");
  solve->add_option("-o,--out", out_path, "Report file (default stdout)");

  // auction
  CLI::App* auction =
      app.add_subcommand("auction", "Full auction with threshold payments");
  auction->add_option("-i,--instance", instance_path, "Instance file")
      ->required();
  auction->add_option("--seed", seed, "Randomness seed");
  auction->add_option("-o,--out", out_path, "Report file (default stdout)");

  // revenue
  CLI::App* revenue = app.add_subcommand(
      "revenue", "Virtual-value auction (requires per-bidder type_pmf)");
  revenue->add_option("-i,--instance", instance_path, "Instance file")
      ->required();
  revenue->add_option("--seed", seed, "Randomness seed");
  revenue->add_option("-o,--out", out_path, "Report file (default stdout)");

  // probe
  CLI::App* probe =
      app.add_subcommand("probe", "Empirical monotonicity report");
  std::string mechanism = "flattened";
  int probe_bidder = -1;
  double bid_high = -1.0, bid_low = -1.0;
  probe->add_option("-i,--instance", instance_path, "Instance file")
      ->required();
  probe->add_option("--mechanism", mechanism,
                    "Mechanism to probe: flattened or greedy");
  probe->add_option("--bidder", probe_bidder,
                    "Bidder to probe (default: sweep all)");
  probe->add_option("--bid-high", bid_high, "Higher bid of the pair");
  probe->add_option("--bid-low", bid_low, "Lower bid of the pair");
  probe->add_option("--trials", trials, "Monte Carlo trials per bid");
  probe->add_option("--epsilon", epsilon, "Estimation half-width");
  probe->add_option("--seed", seed, "Master seed");
  probe->add_option("-o,--out", out_path, "Report file (default stdout)");

  // experiment
  CLI::App* experiment = app.add_subcommand(
      "experiment", "Welfare-ratio experiment over generated instances");
  ExperimentConfig exp;
  experiment->add_option("--seed", exp.base.seed, "Master seed");
  experiment->add_option("-m,--bidders", exp.base.num_bidders, "Bidder count");
  experiment->add_option("-n,--points", exp.base.num_points, "Point count");
  experiment->add_option("-d,--dim", exp.base.dim, "Coordinate dimension");
  experiment->add_option("--classes", exp.base.num_classes, "Class count");
  experiment->add_option("--type-count", exp.base.types.count,
                         "Bid grid size");
  experiment->add_option("--instances", exp.num_instances, "Instance count");
  experiment->add_option("--trials", exp.trials,
                         "Monte Carlo trials per instance (0 disables)");
  experiment->add_option("--timing-repeats", exp.timing_repeats,
                         "Wall-clock repetitions per algorithm");
  experiment->add_option("-o,--out", out_path, "Report file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    InstanceFile file;
    if (!embeddings_path.empty()) {
      if (embeddings_format != "text") {
        throw covauction::InvalidInputError("unsupported embeddings format: " +
                                            embeddings_format);
      }
      // Bidder profiles are drawn as in the synthetic generator, but over
      // the file's points and class labels.
      namespace rng = covauction::rng;
      Instance& inst = file.instance;
      inst.db = covauction::load_embeddings(embeddings_path);
      inst.type_set = syn.types.values();
      const int n = inst.db.num_points();
      const int m = syn.num_bidders;
      const int K = syn.types.count;
      int num_classes = 1;
      for (int label : inst.db.class_labels) {
        num_classes = std::max(num_classes, label + 1);
      }
      std::vector<double> alpha(m);
      for (int i = 0; i < m; ++i) {
        alpha[i] = rng::Uniform(seed, rng::kRadiusCoefficient, i);
      }
      const auto radii = covauction::derive_radii(inst.db, alpha, seed);
      inst.bidders.resize(m);
      for (int i = 0; i < m; ++i) {
        std::vector<double> raw(n);
        for (int j = 0; j < n; ++j) {
          const int label =
              inst.db.class_labels.empty() ? 0 : inst.db.class_labels[j];
          raw[j] = rng::Uniform(
              seed, rng::kWeightDraw,
              static_cast<std::uint64_t>(i) * num_classes + label);
        }
        inst.bidders[i].weights = covauction::normalize_weights(raw);
        inst.bidders[i].radii = radii[i];
        const double u = rng::Uniform(seed, rng::kTypeDraw, i);
        inst.bidders[i].true_type =
            inst.type_set[std::min(K - 1, static_cast<int>(u * K))];
      }
      inst.bids.resize(m);
      for (int i = 0; i < m; ++i) inst.bids[i] = inst.bidders[i].true_type;
      inst.validate();
    } else {
      syn.seed = seed;
      file.instance = covauction::generate_synthetic(syn);
    }
    file.seed = seed;
    covauction::save_instance_file(file, out_path);
    return 0;
  }

  if (solve->parsed()) {
    const InstanceFile file = covauction::load_instance_file(instance_path);
    const Instance& inst = file.instance;
    const NeighborhoodIndex nbr =
        covauction::build_neighborhoods(inst.db, inst.bidders);
    covauction::LpOptions options;
    options.dump_path = dump_path;
    const covauction::FractionalSolution sol =
        covauction::solve_welfare_lp(inst, nbr, options);
    json doc;
    doc["lp_objective"] = sol.objective;
    doc["lp_iterations"] = sol.iterations;
    doc["bidder_coverage"] = sol.bidder_coverage;
    json expected = json::array();
    double rounded_welfare = 0.0;
    for (int i = 0; i < inst.num_bidders(); ++i) {
      const double e = covauction::expected_bidder_coverage(inst, sol, nbr, i);
      expected.push_back(e);
      rounded_welfare += inst.bids[i] * e;
    }
    doc["rounded_expected_coverage"] = std::move(expected);
    doc["rounded_expected_welfare"] = rounded_welfare;
    emit(doc, out_path);
    return 0;
  }

  if (auction->parsed()) {
    const InstanceFile file = covauction::load_instance_file(instance_path);
    const NeighborhoodIndex nbr =
        covauction::build_neighborhoods(file.instance.db,
                                        file.instance.bidders);
    const MechanismOutcome outcome =
        covauction::run_auction(file.instance, nbr, seed);
    emit(outcome_json(outcome), out_path);
    return 0;
  }

  if (revenue->parsed()) {
    const InstanceFile file = covauction::load_instance_file(instance_path);
    if (file.priors.empty()) {
      throw covauction::InvalidInputError(
          "revenue auction needs type_pmf for every bidder");
    }
    const NeighborhoodIndex nbr =
        covauction::build_neighborhoods(file.instance.db,
                                        file.instance.bidders);
    const covauction::RevenueOutcome outcome = covauction::run_revenue_auction(
        file.instance, nbr, file.priors, seed);
    json doc = outcome_json(outcome.outcome);
    doc["virtual_bids"] = outcome.virtual_bids;
    doc["expected_revenue"] = outcome.expected_revenue;
    emit(doc, out_path);
    return 0;
  }

  if (probe->parsed()) {
    const InstanceFile file = covauction::load_instance_file(instance_path);
    const Instance& inst = file.instance;
    const NeighborhoodIndex nbr =
        covauction::build_neighborhoods(inst.db, inst.bidders);
    CoverageSampler sampler;
    int effective_trials = trials;
    if (mechanism == "flattened") {
      sampler = covauction::make_flattened_sampler(inst, nbr);
    } else if (mechanism == "greedy") {
      sampler = covauction::make_greedy_sampler(inst, nbr);
      effective_trials = 1;  // deterministic mechanism
    } else {
      throw covauction::InvalidInputError("unknown mechanism: " + mechanism);
    }
    MonotonicityReport report;
    if (probe_bidder >= 0 && bid_high >= 0.0 && bid_low >= 0.0) {
      report = covauction::monotonicity_probe(inst, sampler, probe_bidder,
                                              bid_high, bid_low,
                                              effective_trials, epsilon, seed);
    } else {
      report = covauction::monotonicity_sweep(inst, sampler, effective_trials,
                                              epsilon, seed);
    }
    emit(report_json(report), out_path);
    return 0;
  }

  // experiment
  const covauction::ExperimentReport report = covauction::run_experiment(exp);
  if (out_path.empty()) {
    std::cout << report.to_json() << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) {
      throw covauction::InvalidInputError("cannot write output file: " +
                                          out_path);
    }
    out << report.to_json() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const covauction::InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const covauction::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  } catch (const covauction::InvariantViolationError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
