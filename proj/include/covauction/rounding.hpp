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

#ifndef COVAUCTION_ROUNDING_HPP_
#define COVAUCTION_ROUNDING_HPP_

#include <cstdint>

#include "covauction/lp.hpp"
#include "covauction/valuation.hpp"

namespace covauction {

// Integral exclusive allocation: owner per point, or kUnassignedPoint.
struct Allocation {
  std::vector<int> assignment;
};

// Rounds a fractional solution point by point: point j goes to bidder i
// with probability Xbar_ij, and stays unallocated with the leftover
// probability. Draws are independent across points; the draw for point j
// depends only on (seed, j), not on the other points.
Allocation round_allocation(const FractionalSolution& sol, std::uint64_t seed);

// P(point j of bidder i is covered) under round_allocation:
//   1 - prod_{j' in N_i(j)} (1 - Xbar_ij').
double expected_point_coverage(const FractionalSolution& sol,
                               const NeighborhoodIndex& nbr, int bidder,
                               int point);

// E[C_i] = sum_j w_ij * P(j covered). At least (1 - 1/e) * Cbar_i.
double expected_bidder_coverage(const Instance& instance,
                                const FractionalSolution& sol,
                                const NeighborhoodIndex& nbr, int bidder);

}  // namespace covauction

#endif  // COVAUCTION_ROUNDING_HPP_
