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

#ifndef COVAUCTION_MECHANISM_HPP_
#define COVAUCTION_MECHANISM_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "covauction/lp.hpp"
#include "covauction/rounding.hpp"
#include "covauction/valuation.hpp"

namespace covauction {

// Memoizes LP solves by bid vector. Payment curves re-solve the same bid
// profile once per bidder otherwise.
class LpCache {
 public:
  explicit LpCache(const Instance& instance, const NeighborhoodIndex& nbr)
      : instance_(instance), nbr_(nbr) {}

  // Solves (or returns the cached solution of) the instance with its bids
  // replaced by `bids`.
  const FractionalSolution& solve(const std::vector<double>& bids);

 private:
  const Instance& instance_;
  const NeighborhoodIndex& nbr_;
  std::map<std::vector<double>, FractionalSolution> cache_;
};

// Keep probability per bidder that flattens the rounding guarantee into an
// exact equality: after keeping bidder i's allocation with probability
// rho_i = (1 - 1/e) * Cbar_i / E[C_i] (and discarding it otherwise), the
// expected coverage is exactly (1 - 1/e) * Cbar_i. Always in [0, 1] since
// E[C_i] >= (1 - 1/e) * Cbar_i.
std::vector<double> keep_probabilities(const Instance& instance,
                                       const FractionalSolution& sol,
                                       const NeighborhoodIndex& nbr);

// Rounds and then discards each bidder's entire allocation with probability
// 1 - rho_i. `kept`, if non-null, receives the per-bidder keep outcome.
Allocation round_and_flatten(const Instance& instance,
                             const FractionalSolution& sol,
                             const NeighborhoodIndex& nbr, std::uint64_t seed,
                             std::vector<char>* kept = nullptr);

// Expected coverages of `bidder` at every possible bid, others' bids fixed:
// entry 0 is the empty allocation (0), entry t+1 is the flattened expected
// coverage (1 - 1/e) * Cbar_i when bidding type_set[t]. The curve is
// non-decreasing; a decrease beyond numerical noise throws
// InvariantViolationError.
std::vector<double> coverage_curve(const Instance& instance, LpCache& cache,
                                   int bidder);

// Threshold payment for `bid` given the bidder's coverage curve: each
// increment of expected coverage is priced at the lowest bid that obtains
// it. The increment from the empty allocation to the lowest bid is free, so
// bidding the lowest type costs 0. Truthful bidding is a dominant strategy
// and utilities are non-negative.
double myerson_payment(const std::vector<double>& curve,
                       const std::vector<double>& type_set, double bid);

struct MechanismOutcome {
  Allocation allocation;                  // after flattening
  std::vector<char> kept;                 // per bidder
  std::vector<double> payments;           // charged unconditionally
  std::vector<double> expected_coverage;  // (1 - 1/e) * Cbar_i at the bids
  std::vector<double> realized_coverage;  // coverage of the final allocation
  double lp_objective = 0.0;
};

// Full auction at the instance's reported bids: fractional solve, rounding,
// flattening, and threshold payments for every bidder.
MechanismOutcome run_auction(const Instance& instance,
                             const NeighborhoodIndex& nbr, std::uint64_t seed);

}  // namespace covauction

#endif  // COVAUCTION_MECHANISM_HPP_
