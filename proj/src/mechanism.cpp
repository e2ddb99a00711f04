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

#include "covauction/mechanism.hpp"

#include <algorithm>
#include <cmath>

#include "covauction/errors.hpp"
#include "covauction/rng.hpp"

namespace covauction {

namespace {
const double kFlattenRatio = 1.0 - 1.0 / std::exp(1.0);
constexpr double kCurveTol = 1e-6;
}  // namespace

const FractionalSolution& LpCache::solve(const std::vector<double>& bids) {
  auto it = cache_.find(bids);
  if (it != cache_.end()) return it->second;
  Instance modified = instance_;
  modified.bids = bids;
  FractionalSolution sol = solve_welfare_lp(modified, nbr_);
  return cache_.emplace(bids, std::move(sol)).first->second;
}

std::vector<double> keep_probabilities(const Instance& instance,
                                       const FractionalSolution& sol,
                                       const NeighborhoodIndex& nbr) {
  const int m = instance.num_bidders();
  std::vector<double> rho(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double cbar = sol.bidder_coverage[i];
    if (cbar <= 0.0) continue;  // nothing to guarantee, never keep
    const double expected = expected_bidder_coverage(instance, sol, nbr, i);
    if (expected <= 0.0) {
      throw InvariantViolationError(
          "bidder " + std::to_string(i) +
          " has positive fractional coverage but zero rounded coverage");
    }
    double r = kFlattenRatio * cbar / expected;
    if (r > 1.0 + 1e-9) {
      throw InvariantViolationError(
          "keep probability above 1 for bidder " + std::to_string(i) + ": " +
          std::to_string(r));
    }
    rho[i] = std::min(r, 1.0);
  }
  return rho;
}

Allocation round_and_flatten(const Instance& instance,
                             const FractionalSolution& sol,
                             const NeighborhoodIndex& nbr, std::uint64_t seed,
                             std::vector<char>* kept) {
  const std::vector<double> rho = keep_probabilities(instance, sol, nbr);
  Allocation alloc = round_allocation(sol, seed);
  const int m = instance.num_bidders();
  std::vector<char> keep(m, 0);
  for (int i = 0; i < m; ++i) {
    keep[i] = rng::Uniform(seed, rng::kBurnDraw + i, 0) < rho[i] ? 1 : 0;
  }
  for (int& owner : alloc.assignment) {
    if (owner != kUnassignedPoint && !keep[owner]) owner = kUnassignedPoint;
  }
  if (kept != nullptr) *kept = std::move(keep);
  return alloc;
}

std::vector<double> coverage_curve(const Instance& instance, LpCache& cache,
                                   int bidder) {
  if (bidder < 0 || bidder >= instance.num_bidders()) {
    throw InvalidInputError("bidder index out of range");
  }
  const std::size_t K = instance.type_set.size();
  std::vector<double> curve(K + 1, 0.0);
  std::vector<double> bids = instance.bids;
  for (std::size_t t = 0; t < K; ++t) {
    bids[bidder] = instance.type_set[t];
    const FractionalSolution& sol = cache.solve(bids);
    curve[t + 1] = kFlattenRatio * sol.bidder_coverage[bidder];
  }
  for (std::size_t t = 1; t <= K; ++t) {
    if (curve[t] < curve[t - 1] - kCurveTol) {
      throw InvariantViolationError(
          "expected coverage of bidder " + std::to_string(bidder) +
          " decreased in its bid: " + std::to_string(curve[t - 1]) + " -> " +
          std::to_string(curve[t]));
    }
  }
  return curve;
}

double myerson_payment(const std::vector<double>& curve,
                       const std::vector<double>& type_set, double bid) {
  const std::size_t K = type_set.size();
  if (curve.size() != K + 1) {
    throw InvalidInputError("curve must have one entry per type plus zero");
  }
  std::size_t k = K;
  for (std::size_t t = 0; t < K; ++t) {
    if (type_set[t] == bid) {
      k = t;
      break;
    }
  }
  if (k == K) throw InvalidInputError("bid is not in the type set");
  double payment = 0.0;
  for (std::size_t t = 1; t <= k; ++t) {
    // Curve dips within tolerance are numerical noise; never refund them.
    payment += type_set[t - 1] * std::max(0.0, curve[t + 1] - curve[t]);
  }
  return payment;
}

MechanismOutcome run_auction(const Instance& instance,
                             const NeighborhoodIndex& nbr,
                             std::uint64_t seed) {
  instance.validate();
  const int m = instance.num_bidders();
  LpCache cache(instance, nbr);
  const FractionalSolution& sol = cache.solve(instance.bids);

  MechanismOutcome out;
  out.lp_objective = sol.objective;
  out.expected_coverage.resize(m);
  for (int i = 0; i < m; ++i) {
    out.expected_coverage[i] = kFlattenRatio * sol.bidder_coverage[i];
  }
  out.allocation = round_and_flatten(instance, sol, nbr, seed, &out.kept);

  out.payments.resize(m);
  for (int i = 0; i < m; ++i) {
    const std::vector<double> curve = coverage_curve(instance, cache, i);
    out.payments[i] = myerson_payment(curve, instance.type_set,
                                      instance.bids[i]);
  }

  out.realized_coverage.resize(m);
  std::vector<std::vector<int>> datasets(m);
  for (int j = 0; j < instance.num_points(); ++j) {
    const int owner = out.allocation.assignment[j];
    if (owner != kUnassignedPoint) datasets[owner].push_back(j);
  }
  for (int i = 0; i < m; ++i) {
    out.realized_coverage[i] = coverage(instance, nbr, i, datasets[i]);
  }
  return out;
}

}  // namespace covauction
