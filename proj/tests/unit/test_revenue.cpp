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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "covauction/errors.hpp"
#include "covauction/revenue.hpp"
#include "helpers.hpp"

using namespace covauction;

namespace {

TypeDistribution uniform_dist(int k) {
  TypeDistribution d;
  d.pmf.assign(k, 1.0 / k);
  return d;
}

std::vector<double> grid(int k, double spacing) {
  std::vector<double> out(k);
  for (int t = 0; t < k; ++t) out[t] = t * spacing;
  return out;
}

}  // namespace

TEST_CASE("virtual values of the uniform ten-type grid") {
  const std::vector<double> types = grid(10, 0.1);
  const VirtualTypeTable table = virtual_values(types, uniform_dist(10));
  CHECK(table.excluded[0]);
  for (int t = 1; t < 10; ++t) {
    CHECK_FALSE(table.excluded[t]);
    // theta_t - (1 - F(theta_{t-1})) with unit hazard spacing: 0.2 t - 1.
    CHECK(table.phi[t] == doctest::Approx(0.2 * t - 1.0).epsilon(1e-12));
  }
  CHECK(table.phi[9] == doctest::Approx(0.8));
}

TEST_CASE("virtual values of a two-type distribution") {
  const std::vector<double> types = {0.3, 0.9};
  TypeDistribution dist;
  dist.pmf = {0.5, 0.5};
  const VirtualTypeTable table = virtual_values(types, dist);
  // phi(b) = b - (b - a)(1 - p)/p; at p = 1/2 the hazard term is 1, so the
  // high type's virtual value collapses to the low type a.
  CHECK(table.phi[1] == doctest::Approx(0.3));
  CHECK(table.phi[1] == doctest::Approx(0.9 - 0.6 * 0.5 / 0.5));
}

TEST_CASE("virtual values reject zero prior mass") {
  TypeDistribution dist;
  dist.pmf = {0.0, 1.0};
  CHECK_THROWS_AS(virtual_values({0.2, 0.6}, dist), InvalidInputError);
  dist.pmf = {0.6, 0.6};
  CHECK_THROWS_AS(virtual_values({0.2, 0.6}, dist), InvalidInputError);
}

TEST_CASE("ironing pools a decreasing pair") {
  VirtualTypeTable table;
  table.phi = {3.0, 1.0};
  table.excluded = {0, 0};
  TypeDistribution dist;
  dist.pmf = {0.5, 0.5};
  const VirtualTypeTable ironed = iron_virtual_values(table, dist);
  CHECK(ironed.phi[0] == doctest::Approx(2.0));
  CHECK(ironed.phi[1] == doctest::Approx(2.0));
  CHECK(ironed.ironed);
}

TEST_CASE("ironing leaves monotone and constant tables unchanged") {
  VirtualTypeTable table;
  table.phi = {0.0, -0.2, 0.1, 0.4};
  table.excluded = {1, 0, 0, 0};
  TypeDistribution dist;
  dist.pmf = {0.25, 0.25, 0.25, 0.25};
  const VirtualTypeTable ironed = iron_virtual_values(table, dist);
  for (int t = 1; t < 4; ++t) {
    CHECK(ironed.phi[t] == doctest::Approx(table.phi[t]));
  }
  VirtualTypeTable constant;
  constant.phi = {0.5, 0.5, 0.5};
  constant.excluded = {0, 0, 0};
  TypeDistribution d3;
  d3.pmf = {0.2, 0.3, 0.5};
  const VirtualTypeTable out = iron_virtual_values(constant, d3);
  for (double v : out.phi) CHECK(v == doctest::Approx(0.5));
}

TEST_CASE("ironing is monotone and idempotent on random tables") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int k = 2 + static_cast<int>(rng::Uniform(seed, 1, 0) * 7);
    VirtualTypeTable table;
    table.phi.resize(k);
    table.excluded.assign(k, 0);
    table.excluded[0] = 1;
    TypeDistribution dist;
    dist.pmf.resize(k);
    double total = 0.0;
    for (int t = 0; t < k; ++t) {
      table.phi[t] = 2.0 * rng::Uniform(seed, 2, t) - 1.0;
      dist.pmf[t] = 0.05 + rng::Uniform(seed, 3, t);
      total += dist.pmf[t];
    }
    for (double& p : dist.pmf) p /= total;
    const VirtualTypeTable ironed = iron_virtual_values(table, dist);
    double prev = -1e100;
    for (int t = 1; t < k; ++t) {
      CHECK(ironed.phi[t] >= prev - 1e-12);
      prev = ironed.phi[t];
    }
    const VirtualTypeTable twice = iron_virtual_values(ironed, dist);
    for (int t = 1; t < k; ++t) {
      CHECK(twice.phi[t] == doctest::Approx(ironed.phi[t]).epsilon(1e-12));
    }
    // Pooling preserves the prior-weighted total over non-excluded types.
    double before = 0.0, after = 0.0;
    for (int t = 1; t < k; ++t) {
      before += dist.pmf[t] * table.phi[t];
      after += dist.pmf[t] * ironed.phi[t];
    }
    CHECK(after == doctest::Approx(before).epsilon(1e-9));
  }
}

TEST_CASE("lowest types are shut out") {
  Instance inst = testing::mutual_instance();
  inst.bids = {0.0, 0.0};  // both report the lowest type
  const NeighborhoodIndex nbr = build_neighborhoods(inst.db, inst.bidders);
  const std::vector<TypeDistribution> priors(2, uniform_dist(2));
  const RevenueOutcome out = run_revenue_auction(inst, nbr, priors, 5);
  CHECK(out.expected_revenue == 0.0);
  for (int j = 0; j < inst.num_points(); ++j) {
    CHECK(out.outcome.allocation.assignment[j] == kUnassignedPoint);
  }
  for (double p : out.outcome.payments) CHECK(p == 0.0);
}

TEST_CASE("expected revenue equals expected virtual welfare") {
  // Exact enumeration of all type profiles under independent uniform
  // priors: E[sum payments] must equal E[sum phi^+ * expected coverage].
  const Instance base = testing::random_instance(77, 2, 4, 3);
  const NeighborhoodIndex nbr = build_neighborhoods(base.db, base.bidders);
  const std::vector<TypeDistribution> priors(2, uniform_dist(3));
  const int K = 3;
  double expected_revenue = 0.0, expected_virtual_welfare = 0.0;
  for (int t0 = 0; t0 < K; ++t0) {
    for (int t1 = 0; t1 < K; ++t1) {
      Instance inst = base;
      inst.bids = {base.type_set[t0], base.type_set[t1]};
      const RevenueOutcome out = run_revenue_auction(inst, nbr, priors, 9);
      const double mass = (1.0 / K) * (1.0 / K);
      for (int i = 0; i < 2; ++i) {
        expected_revenue += mass * out.outcome.payments[i];
        expected_virtual_welfare +=
            mass * out.virtual_bids[i] * out.outcome.expected_coverage[i];
      }
    }
  }
  CHECK(expected_revenue ==
        doctest::Approx(expected_virtual_welfare).epsilon(1e-9));
}
