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

#ifndef COVAUCTION_HARNESS_HPP_
#define COVAUCTION_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covauction/revenue.hpp"
#include "covauction/valuation.hpp"

namespace covauction {

// Evenly spaced bid grid start, start + spacing, ...
struct TypeGridSpec {
  int count = 10;
  double spacing = 0.1;
  double start = 0.0;

  std::vector<double> values() const;
};

struct SyntheticConfig {
  int num_bidders = 2;
  int num_points = 5;
  int dim = 10;
  TypeGridSpec types;
  double coord_low = 0.0;
  double coord_high = 10.0;
  int num_classes = 1;
  std::uint64_t seed = 0;

  void validate() const;  // throws InvalidInputError
};

// Mean pairwise distance among up to 100 sampled points of each class,
// scaled per bidder: r_ij = alpha[i] * R_{class(j)}. A one-point class has
// R = 0.
std::vector<std::vector<double>> derive_radii(const Database& db,
                                              const std::vector<double>& alpha,
                                              std::uint64_t sample_seed);

// Fully seed-deterministic instance draw: uniform coordinates, uniform
// class labels, types uniform over the grid, per-class uniform weights
// normalized per bidder, radii via derive_radii with alpha_i uniform in
// [0, 1]. Bids start at the true types.
Instance generate_synthetic(const SyntheticConfig& config);

// Delimited text, one point per row, comma or whitespace separated; an
// optional non-numeric trailing column becomes the class label. Parse
// errors carry the row and column location.
Database load_embeddings(const std::string& path);

// One self-contained file per experiment: database (inline points), bidder
// profiles, type grid, bids and optional per-bidder priors.
struct InstanceFile {
  Instance instance;
  std::vector<TypeDistribution> priors;  // empty when absent
  std::uint64_t seed = 0;
};

InstanceFile load_instance_file(const std::string& path);
void save_instance_file(const InstanceFile& file, const std::string& path);

struct ExperimentConfig {
  SyntheticConfig base;      // per-instance seeds derive from base.seed
  int num_instances = 50;
  int trials = 150000;       // Monte Carlo confirmations; 0 disables them
  int timing_repeats = 3;    // per-algorithm wall clock, median
};

struct InstanceResult {
  std::uint64_t seed = 0;
  double lp_objective = 0.0;
  long lp_iterations = 0;
  // Closed-form expected welfare of each method.
  double rounded_expected = 0.0;    // rounding only
  double flattened_expected = 0.0;  // rounding plus flattening
  double greedy_welfare = 0.0;
  // Ratios against the LP objective; NaN when the objective is 0.
  double rounded_ratio = 0.0;
  double flattened_ratio = 0.0;
  double greedy_ratio = 0.0;
  // Monte Carlo confirmations (NaN when disabled or objective 0).
  double rounded_mc_ratio = 0.0;
  double flattened_mc_ratio = 0.0;
  // Median wall-clock milliseconds.
  double lp_time_ms = 0.0;
  double greedy_time_ms = 0.0;
  double mc_time_ms = 0.0;
};

struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;
  int count = 0;  // instances with a positive LP objective
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<InstanceResult> instances;
  Aggregate rounded_ratio, flattened_ratio, greedy_ratio;
  Aggregate rounded_mc_ratio, flattened_mc_ratio;
  int zero_objective_instances = 0;

  std::string to_json() const;
};

// Generates `num_instances` instances, solves each, reports closed-form
// and Monte Carlo welfare ratios against the LP objective, greedy welfare,
// and per-algorithm timings. Instances whose LP objective is 0 (possible
// when all drawn types are 0) have no defined ratio and are excluded from
// the aggregates; their count is reported.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace covauction

#endif  // COVAUCTION_HARNESS_HPP_
