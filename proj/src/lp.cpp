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

#include "covauction/lp.hpp"

#include <algorithm>
#include <cmath>

#include "covauction/errors.hpp"
#include "covauction/simplex.hpp"

namespace covauction {

FractionalSolution solve_welfare_lp(const Instance& instance,
                                    const NeighborhoodIndex& nbr,
                                    const LpOptions& options) {
  const int m = instance.num_bidders();
  const int n = instance.num_points();
  if (nbr.num_bidders() != m || nbr.num_points() != n) {
    throw InvalidInputError("neighborhood index does not match instance");
  }

  // Variables: X_ij for every (bidder, point). Coverage rows only where the
  // objective coefficient b_i * w_ij is positive; zero-gain rows cannot
  // change the optimum and would only slow the solver.
  CoverageLpProblem problem;
  problem.num_groups = n;  // one exclusivity group per point
  std::vector<int> cov_row(m * n, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double q = instance.bids[i] * instance.bidders[i].weights[j];
      if (q > 0.0) {
        cov_row[i * n + j] = problem.num_cov_rows++;
        problem.gain.push_back(q);
      }
    }
  }
  problem.group_of.resize(m * n);
  problem.covers.resize(m * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      problem.group_of[i * n + j] = j;
    }
    // X_ij' contributes to the coverage row of every point j whose
    // neighborhood contains j'. Per-point radii make this relation
    // asymmetric, so invert the adjacency explicitly.
    for (int j = 0; j < n; ++j) {
      const int r = cov_row[i * n + j];
      if (r < 0) continue;
      for (int jp : nbr.neighbors[i][j]) {
        problem.covers[i * n + jp].push_back(r);
      }
    }
  }

  if (!options.dump_path.empty()) WriteLpFormat(problem, options.dump_path);

  CoverageSimplex solver(problem);
  CoverageLpSolution raw = solver.Solve();

  FractionalSolution sol;
  sol.num_bidders = m;
  sol.num_points = n;
  sol.iterations = raw.iterations;
  sol.x.assign(m * n, 0.0);
  sol.c.assign(m * n, 0.0);

  for (int x = 0; x < m * n; ++x) {
    sol.x[x] = std::clamp(raw.x[x], 0.0, 1.0);
  }
  // Per-point totals may exceed 1 by roundoff only; renormalize within a
  // tight tolerance and reject anything larger.
  for (int j = 0; j < n; ++j) {
    double total = 0.0;
    for (int i = 0; i < m; ++i) total += sol.x[i * n + j];
    if (total > 1.0 + 1e-7) {
      throw SolverError("point " + std::to_string(j) +
                        " is fractionally over-allocated: " +
                        std::to_string(total));
    }
    if (total > 1.0) {
      for (int i = 0; i < m; ++i) sol.x[i * n + j] /= total;
    }
  }
  // Bidders bidding zero contribute nothing to the objective, so the solver
  // may leave arbitrary mass on them. Pin their rows to zero; this keeps the
  // solution feasible, preserves the objective, and makes the map from bids
  // to fractional coverage deterministic at zero.
  for (int i = 0; i < m; ++i) {
    if (instance.bids[i] == 0.0) {
      for (int j = 0; j < n; ++j) sol.x[i * n + j] = 0.0;
    }
  }
  // Coverage is reported at its induced optimum min(1, sum of neighborhood
  // mass) rather than the raw LP value, so rows dropped from the LP and
  // zeroed bidders stay consistent.
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double mass = 0.0;
      for (int jp : nbr.neighbors[i][j]) mass += sol.x[i * n + jp];
      sol.c[i * n + j] = std::min(1.0, mass);
    }
  }
  sol.bidder_coverage.resize(m);
  sol.objective = 0.0;
  for (int i = 0; i < m; ++i) {
    double cov = 0.0;
    for (int j = 0; j < n; ++j) {
      cov += instance.bidders[i].weights[j] * sol.c[i * n + j];
    }
    sol.bidder_coverage[i] = cov;
    sol.objective += instance.bids[i] * cov;
  }
  return sol;
}

double lp_bidder_coverage(const Instance& instance,
                          const FractionalSolution& sol, int bidder) {
  if (bidder < 0 || bidder >= sol.num_bidders) {
    throw InvalidInputError("bidder index out of range");
  }
  double cov = 0.0;
  for (int j = 0; j < sol.num_points; ++j) {
    cov += instance.bidders[bidder].weights[j] * sol.c_at(bidder, j);
  }
  return cov;
}

}  // namespace covauction
