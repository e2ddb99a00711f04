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
#include <vector>

#include <doctest.h>

#include "covauction/errors.hpp"
#include "covauction/lp.hpp"
#include "helpers.hpp"

using namespace covauction;

TEST_CASE("collinear instance optimum") {
  // External solver value for the truthful bid profile: 11/6.
  const Instance inst = testing::collinear_instance();
  const NeighborhoodIndex nbr = build_neighborhoods(inst.db, inst.bidders);
  const FractionalSolution sol = solve_welfare_lp(inst, nbr);
  CHECK(sol.objective == doctest::Approx(11.0 / 6).epsilon(1e-9));

  // External solver value when bidder 0 bids 0.7 instead: 1.55.
  const Instance dev = testing::collinear_instance(0.7);
  const FractionalSolution sol_dev = solve_welfare_lp(dev, nbr);
  CHECK(sol_dev.objective == doctest::Approx(1.55).epsilon(1e-9));
}

TEST_CASE("mutual-neighbor instance optimum") {
  // Both bidders can reach full coverage from any point, so each reaches
  // coverage 1 and the objective is 2 (external solver cross-check).
  const Instance inst = testing::mutual_instance();
  const NeighborhoodIndex nbr = build_neighborhoods(inst.db, inst.bidders);
  const FractionalSolution sol = solve_welfare_lp(inst, nbr);
  CHECK(sol.objective == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(sol.bidder_coverage[0] == doctest::Approx(1.0));
  CHECK(sol.bidder_coverage[1] == doctest::Approx(1.0));
}

TEST_CASE("single bidder takes everything") {
  Instance inst = testing::random_instance(5, 1, 6);
  inst.bids = {1.0};
  const NeighborhoodIndex nbr = build_neighborhoods(inst.db, inst.bidders);
  const FractionalSolution sol = solve_welfare_lp(inst, nbr);
  // Every point covers itself, so full allocation gives coverage 1.
  CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sol.bidder_coverage[0] == doctest::Approx(1.0));
}

TEST_CASE("zero-bid bidders are pinned to zero") {
  Instance inst = testing::mutual_instance();
  inst.bids = {1.0, 0.0};
  const NeighborhoodIndex nbr = build_neighborhoods(inst.db, inst.bidders);
  const FractionalSolution sol = solve_welfare_lp(inst, nbr);
  for (int j = 0; j < inst.num_points(); ++j) {
    CHECK(sol.x_at(1, j) == 0.0);
    CHECK(sol.c_at(1, j) == 0.0);
  }
  CHECK(sol.bidder_coverage[1] == 0.0);
  CHECK(sol.objective == doctest::Approx(1.0));
}

TEST_CASE("solution is a consistent fractional allocation") {
  for (std::uint64_t seed = 10; seed < 16; ++seed) {
    const Instance inst = testing::random_instance(seed, 3, 8);
    const NeighborhoodIndex nbr = build_neighborhoods(inst.db, inst.bidders);
    const FractionalSolution sol = solve_welfare_lp(inst, nbr);
    const int m = inst.num_bidders();
    const int n = inst.num_points();
    for (int j = 0; j < n; ++j) {
      double total = 0.0;
      for (int i = 0; i < m; ++i) {
        CHECK(sol.x_at(i, j) >= 0.0);
        total += sol.x_at(i, j);
      }
      CHECK(total <= 1.0 + 1e-12);
    }
    double obj = 0.0;
    for (int i = 0; i < m; ++i) {
      double cov = 0.0;
      for (int j = 0; j < n; ++j) {
        // Reported coverage equals the induced neighborhood mass cap.
        double mass = 0.0;
        for (int jp : nbr.neighbors[i][j]) mass += sol.x_at(i, jp);
        CHECK(sol.c_at(i, j) == doctest::Approx(std::min(1.0, mass)));
        cov += inst.bidders[i].weights[j] * sol.c_at(i, j);
      }
      CHECK(sol.bidder_coverage[i] == doctest::Approx(cov));
      CHECK(lp_bidder_coverage(inst, sol, i) ==
            doctest::Approx(sol.bidder_coverage[i]));
      obj += inst.bids[i] * cov;
    }
    CHECK(sol.objective == doctest::Approx(obj));
  }
}

TEST_CASE("rejects a mismatched neighborhood index") {
  const Instance inst = testing::mutual_instance();
  const Instance other = testing::collinear_instance();
  const NeighborhoodIndex nbr = build_neighborhoods(other.db, other.bidders);
  CHECK_THROWS_AS(solve_welfare_lp(inst, nbr), InvalidInputError);
}
