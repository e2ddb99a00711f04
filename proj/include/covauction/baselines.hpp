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

#ifndef COVAUCTION_BASELINES_HPP_
#define COVAUCTION_BASELINES_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "covauction/rounding.hpp"
#include "covauction/valuation.hpp"

namespace covauction {

// Greedy exclusive allocation: points are visited in index order and each
// is handed to the bidder whose weighted bid-scaled coverage increases the
// most. Every point is assigned; exact gain ties (including all-zero gains)
// go to the highest bidder index.
Allocation greedy_allocate(const Instance& instance,
                           const NeighborhoodIndex& nbr);

// Exact optimal integral welfare by enumerating all (m+1)^n owner
// assignments. Throws InvalidInputError above an enumeration budget of 1e7
// assignments; larger instances should be bounded through the fractional
// relaxation instead.
double brute_force_welfare(const Instance& instance,
                           const NeighborhoodIndex& nbr,
                           Allocation* best = nullptr);

// Estimated expected coverage of one bidder at one bid under a mechanism,
// averaged over `trials` independent runs seeded from `master_seed`.
using CoverageSampler =
    std::function<double(int bidder, double bid, std::uint64_t seed)>;

struct MonotonicityReport {
  struct Pair {
    int bidder;
    double low_bid, high_bid;
    double low_estimate, high_estimate;
    bool violation;
  };
  std::vector<Pair> pairs;
  int violations = 0;
  int trials = 0;
  // Estimation half-width; a decrease must clear 2 * epsilon to count.
  double epsilon = 0.0;
};

// Estimates expected coverage at two bids of one bidder with `trials`
// Monte Carlo runs each, and flags a violation when the higher bid's
// estimate plus epsilon is still below the lower bid's estimate minus
// epsilon.
MonotonicityReport monotonicity_probe(const Instance& instance,
                                      const CoverageSampler& sampler,
                                      int bidder, double bid_high,
                                      double bid_low, int trials,
                                      double epsilon,
                                      std::uint64_t master_seed);

// Runs the probe on every bidder and every adjacent bid pair of the type
// set, merging the pairs into one report.
MonotonicityReport monotonicity_sweep(const Instance& instance,
                                      const CoverageSampler& sampler,
                                      int trials, double epsilon,
                                      std::uint64_t master_seed);

// Sampler over the full flattened mechanism: each trial re-solves (cached
// per bid), rounds, flattens, and measures realized coverage.
CoverageSampler make_flattened_sampler(const Instance& instance,
                                       const NeighborhoodIndex& nbr);

// Sampler over the greedy baseline. Greedy is deterministic, so every trial
// returns the same realized coverage.
CoverageSampler make_greedy_sampler(const Instance& instance,
                                    const NeighborhoodIndex& nbr);

}  // namespace covauction

#endif  // COVAUCTION_BASELINES_HPP_
