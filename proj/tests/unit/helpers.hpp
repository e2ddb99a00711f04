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

#ifndef COVAUCTION_TESTS_HELPERS_HPP_
#define COVAUCTION_TESTS_HELPERS_HPP_

#include <algorithm>
#include <cstdint>
#include <vector>

#include "covauction/rng.hpp"
#include "covauction/valuation.hpp"

namespace testing {

// Three collinear unit-spaced points, three bidders with radius 1 and
// uniform weights; types (1, 3/4, 1/2). The classic greedy
// non-monotonicity instance.
inline covauction::Instance collinear_instance(double bid1 = 1.0) {
  covauction::Instance inst;
  inst.db.points = {{0.0}, {1.0}, {2.0}};
  inst.type_set = {0.5, 0.7, 0.75, 1.0};
  for (double type : {1.0, 0.75, 0.5}) {
    covauction::BidderProfile b;
    b.weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    b.radii = {1.0, 1.0, 1.0};
    b.true_type = type;
    inst.bidders.push_back(b);
  }
  inst.bids = {bid1, 0.75, 0.5};
  inst.validate();
  return inst;
}

// Three points that are all within each other's radius, two bidders with
// uniform weights bidding 1.
inline covauction::Instance mutual_instance() {
  covauction::Instance inst;
  inst.db.points = {{0.0}, {1.0}, {2.0}};
  inst.type_set = {0.0, 1.0};
  for (int i = 0; i < 2; ++i) {
    covauction::BidderProfile b;
    b.weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    b.radii = {2.0, 2.0, 2.0};
    b.true_type = 1.0;
    inst.bidders.push_back(b);
  }
  inst.bids = {1.0, 1.0};
  inst.validate();
  return inst;
}

// Small random instance with varied weights and radii; types on an evenly
// spaced grid of size `type_count` starting at 0.
inline covauction::Instance random_instance(std::uint64_t seed, int m, int n,
                                            int type_count = 5) {
  namespace rng = covauction::rng;
  covauction::Instance inst;
  inst.db.points.resize(n);
  double max_coord = 0.0;
  for (int j = 0; j < n; ++j) {
    inst.db.points[j] = {10.0 * rng::Uniform(seed, rng::kCoordinates, 2 * j),
                         10.0 * rng::Uniform(seed, rng::kCoordinates, 2 * j + 1)};
    max_coord = 10.0;
  }
  for (int t = 0; t < type_count; ++t) {
    inst.type_set.push_back(t / static_cast<double>(type_count - 1));
  }
  for (int i = 0; i < m; ++i) {
    covauction::BidderProfile b;
    std::vector<double> raw(n);
    for (int j = 0; j < n; ++j) {
      raw[j] = 0.05 + rng::Uniform(seed, rng::kWeightDraw, i * n + j);
    }
    b.weights = covauction::normalize_weights(raw);
    b.radii.resize(n);
    for (int j = 0; j < n; ++j) {
      // Up to the database diameter so neighborhood sizes vary widely.
      b.radii[j] = 1.5 * max_coord *
                   rng::Uniform(seed, rng::kRadiusCoefficient, i * n + j);
    }
    const double u = rng::Uniform(seed, rng::kTypeDraw, i);
    b.true_type =
        inst.type_set[std::min<int>(type_count - 1,
                                    static_cast<int>(u * type_count))];
    inst.bidders.push_back(b);
  }
  inst.bids.resize(m);
  for (int i = 0; i < m; ++i) inst.bids[i] = inst.bidders[i].true_type;
  inst.validate();
  return inst;
}

}  // namespace testing

#endif  // COVAUCTION_TESTS_HELPERS_HPP_
