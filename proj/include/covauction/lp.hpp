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

#ifndef COVAUCTION_LP_HPP_
#define COVAUCTION_LP_HPP_

#include <string>
#include <vector>

#include "covauction/valuation.hpp"

namespace covauction {

// Optimal fractional relaxation of the exclusive-allocation welfare problem:
//
//   max  sum_i b_i sum_j w_ij Cbar_ij
//   s.t. Cbar_ij <= sum_{j' in N_i(j)} Xbar_ij'
//        sum_i Xbar_ij <= 1 for every point j
//        0 <= Cbar_ij <= 1, Xbar_ij >= 0
//
// Its objective upper-bounds the best integral welfare.
struct FractionalSolution {
  int num_bidders = 0;
  int num_points = 0;
  // Row-major m x n. x[i*n + j] = fraction of point j given to bidder i.
  std::vector<double> x;
  // Row-major m x n fractional point coverage.
  std::vector<double> c;
  // Cbar_i = sum_j w_ij * Cbar_ij per bidder.
  std::vector<double> bidder_coverage;
  double objective = 0.0;
  long iterations = 0;

  double x_at(int i, int j) const { return x[i * num_points + j]; }
  double c_at(int i, int j) const { return c[i * num_points + j]; }
};

struct LpOptions {
  // If non-empty, also write the instance in LP text format to this path.
  std::string dump_path;
};

FractionalSolution solve_welfare_lp(const Instance& instance,
                                    const NeighborhoodIndex& nbr,
                                    const LpOptions& options = {});

// Weighted coverage of a fractional solution for one bidder.
double lp_bidder_coverage(const Instance& instance,
                          const FractionalSolution& sol, int bidder);

}  // namespace covauction

#endif  // COVAUCTION_LP_HPP_
