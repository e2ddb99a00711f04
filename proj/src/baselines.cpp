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

#include "covauction/baselines.hpp"

#include <cmath>
#include <memory>

#include "covauction/errors.hpp"
#include "covauction/mechanism.hpp"
#include "covauction/rng.hpp"

namespace covauction {

namespace {

// rev[i][j] = points whose coverage test passes when j is allocated, i.e.
// {j' : d(j', j) <= r_ij'}. This differs from neighbors[i][j], which uses
// the radius of j itself.
std::vector<std::vector<std::vector<int>>> reverse_neighbors(
    const NeighborhoodIndex& nbr) {
  const int m = nbr.num_bidders();
  const int n = nbr.num_points();
  std::vector<std::vector<std::vector<int>>> rev(
      m, std::vector<std::vector<int>>(n));
  for (int i = 0; i < m; ++i) {
    for (int jp = 0; jp < n; ++jp) {
      for (int j : nbr.neighbors[i][jp]) rev[i][j].push_back(jp);
    }
  }
  return rev;
}

}  // namespace

Allocation greedy_allocate(const Instance& instance,
                           const NeighborhoodIndex& nbr) {
  const int m = instance.num_bidders();
  const int n = instance.num_points();
  const auto rev = reverse_neighbors(nbr);
  std::vector<std::vector<char>> covered(m, std::vector<char>(n, 0));
  Allocation out;
  out.assignment.assign(n, kUnassignedPoint);
  for (int j = 0; j < n; ++j) {
    int winner = 0;
    double best_gain = -1.0;
    for (int i = 0; i < m; ++i) {
      double gain = 0.0;
      for (int jp : rev[i][j]) {
        if (!covered[i][jp]) gain += instance.bidders[i].weights[jp];
      }
      gain *= instance.bids[i];
      // Ties go to the later bidder, hence >=.
      if (gain >= best_gain) {
        best_gain = gain;
        winner = i;
      }
    }
    out.assignment[j] = winner;
    for (int jp : rev[winner][j]) covered[winner][jp] = 1;
  }
  return out;
}

double brute_force_welfare(const Instance& instance,
                           const NeighborhoodIndex& nbr, Allocation* best) {
  const int m = instance.num_bidders();
  const int n = instance.num_points();
  double combos = std::pow(static_cast<double>(m + 1), n);
  if (combos > 1e7) {
    throw InvalidInputError(
        "brute force would enumerate " + std::to_string(combos) +
        " assignments; bound larger instances with the fractional "
        "relaxation instead");
  }
  std::vector<int> owners(n, kUnassignedPoint);  // -1 .. m-1 per digit
  std::vector<int> best_owners = owners;
  double best_welfare = welfare(instance, nbr, std::span<const int>(owners));
  while (true) {
    int pos = n - 1;
    while (pos >= 0 && owners[pos] == m - 1) {
      owners[pos] = kUnassignedPoint;
      --pos;
    }
    if (pos < 0) break;
    ++owners[pos];
    const double w = welfare(instance, nbr, std::span<const int>(owners));
    // Strict improvement only, so ties keep the lexicographically first
    // assignment (in owner digits, unallocated < bidder 0 < ...).
    if (w > best_welfare) {
      best_welfare = w;
      best_owners = owners;
    }
  }
  if (best != nullptr) best->assignment = best_owners;
  return best_welfare;
}

namespace {

double estimate_coverage(const CoverageSampler& sampler, int bidder,
                         double bid, int trials, std::uint64_t master_seed) {
  double total = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t seed =
        rng::DeriveSeed(master_seed, rng::kTrialSeed, trial);
    total += sampler(bidder, bid, seed);
  }
  return total / trials;
}

}  // namespace

MonotonicityReport monotonicity_probe(const Instance& instance,
                                      const CoverageSampler& sampler,
                                      int bidder, double bid_high,
                                      double bid_low, int trials,
                                      double epsilon,
                                      std::uint64_t master_seed) {
  if (trials <= 0) throw InvalidInputError("trials must be positive");
  if (epsilon <= 0.0) throw InvalidInputError("epsilon must be positive");
  if (bidder < 0 || bidder >= instance.num_bidders()) {
    throw InvalidInputError("bidder index out of range");
  }
  MonotonicityReport report;
  report.epsilon = epsilon;
  report.trials = trials;
  MonotonicityReport::Pair pair;
  pair.bidder = bidder;
  pair.high_bid = bid_high;
  pair.low_bid = bid_low;
  pair.high_estimate =
      estimate_coverage(sampler, bidder, bid_high, trials, master_seed);
  pair.low_estimate =
      estimate_coverage(sampler, bidder, bid_low, trials, master_seed);
  pair.violation = bid_high >= bid_low &&
                   pair.high_estimate + epsilon < pair.low_estimate - epsilon;
  if (pair.violation) report.violations = 1;
  report.pairs.push_back(pair);
  return report;
}

MonotonicityReport monotonicity_sweep(const Instance& instance,
                                      const CoverageSampler& sampler,
                                      int trials, double epsilon,
                                      std::uint64_t master_seed) {
  MonotonicityReport report;
  report.epsilon = epsilon;
  report.trials = trials;
  const std::size_t K = instance.type_set.size();
  for (int i = 0; i < instance.num_bidders(); ++i) {
    for (std::size_t t = 1; t < K; ++t) {
      MonotonicityReport single = monotonicity_probe(
          instance, sampler, i, instance.type_set[t],
          instance.type_set[t - 1], trials, epsilon, master_seed);
      report.violations += single.violations;
      report.pairs.push_back(single.pairs[0]);
    }
  }
  return report;
}

CoverageSampler make_flattened_sampler(const Instance& instance,
                                       const NeighborhoodIndex& nbr) {
  auto cache = std::make_shared<LpCache>(instance, nbr);
  const Instance* inst = &instance;
  const NeighborhoodIndex* index = &nbr;
  return [cache, inst, index](int bidder, double bid, std::uint64_t seed) {
    std::vector<double> bids = inst->bids;
    bids[bidder] = bid;
    const FractionalSolution& sol = cache->solve(bids);
    const Allocation alloc = round_and_flatten(*inst, sol, *index, seed);
    std::vector<int> dataset;
    for (int j = 0; j < inst->num_points(); ++j) {
      if (alloc.assignment[j] == bidder) dataset.push_back(j);
    }
    return coverage(*inst, *index, bidder, dataset);
  };
}

CoverageSampler make_greedy_sampler(const Instance& instance,
                                    const NeighborhoodIndex& nbr) {
  const Instance* inst = &instance;
  const NeighborhoodIndex* index = &nbr;
  return [inst, index](int bidder, double bid, std::uint64_t /*seed*/) {
    Instance modified = *inst;
    modified.bids[bidder] = bid;
    const Allocation alloc = greedy_allocate(modified, *index);
    std::vector<int> dataset;
    for (int j = 0; j < inst->num_points(); ++j) {
      if (alloc.assignment[j] == bidder) dataset.push_back(j);
    }
    return coverage(*inst, *index, bidder, dataset);
  };
}

}  // namespace covauction
