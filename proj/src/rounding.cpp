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

#include "covauction/rounding.hpp"

#include <cmath>

#include "covauction/errors.hpp"
#include "covauction/rng.hpp"

namespace covauction {

Allocation round_allocation(const FractionalSolution& sol, std::uint64_t seed) {
  const int m = sol.num_bidders;
  const int n = sol.num_points;
  Allocation out;
  out.assignment.assign(n, kUnassignedPoint);
  for (int j = 0; j < n; ++j) {
    double total = 0.0;
    for (int i = 0; i < m; ++i) total += sol.x_at(i, j);
    if (total > 1.0 + 1e-9) {
      throw InvalidInputError("point " + std::to_string(j) +
                              " has fractional mass above 1");
    }
    const double u = rng::Uniform(seed, rng::kPointAssignment + j, 0);
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
      acc += sol.x_at(i, j);
      if (u < acc) {
        out.assignment[j] = i;
        break;
      }
    }
  }
  return out;
}

double expected_point_coverage(const FractionalSolution& sol,
                               const NeighborhoodIndex& nbr, int bidder,
                               int point) {
  const std::vector<int>& neigh = nbr.neighbors[bidder][point];
  // Log-space keeps the product stable for large neighborhoods.
  if (neigh.size() > 64) {
    double log_miss = 0.0;
    for (int jp : neigh) {
      const double x = sol.x_at(bidder, jp);
      if (x >= 1.0) return 1.0;
      log_miss += std::log1p(-x);
    }
    return -std::expm1(log_miss);
  }
  double miss = 1.0;
  for (int jp : neigh) miss *= 1.0 - sol.x_at(bidder, jp);
  return 1.0 - miss;
}

double expected_bidder_coverage(const Instance& instance,
                                const FractionalSolution& sol,
                                const NeighborhoodIndex& nbr, int bidder) {
  if (bidder < 0 || bidder >= sol.num_bidders) {
    throw InvalidInputError("bidder index out of range");
  }
  double total = 0.0;
  for (int j = 0; j < sol.num_points; ++j) {
    total += instance.bidders[bidder].weights[j] *
             expected_point_coverage(sol, nbr, bidder, j);
  }
  return total;
}

}  // namespace covauction
