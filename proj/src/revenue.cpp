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

#include "covauction/revenue.hpp"

#include <algorithm>
#include <cmath>

#include "covauction/errors.hpp"

namespace covauction {

namespace {
const double kFlattenRatio = 1.0 - 1.0 / std::exp(1.0);
constexpr double kCurveTol = 1e-6;

// Virtual bid actually placed by a bidder reporting type index k. The
// lowest type is always shut out; negative ironed values are clamped to 0
// so the fractional solve never rewards them.
double clamped_virtual_bid(const VirtualTypeTable& table, std::size_t k) {
  if (table.excluded[k]) return 0.0;
  return std::max(0.0, table.phi[k]);
}
}  // namespace

void TypeDistribution::validate(std::size_t num_types) const {
  if (pmf.size() != num_types) {
    throw InvalidInputError("prior pmf size does not match type set");
  }
  double sum = 0.0;
  for (double p : pmf) {
    if (p < 0.0 || !std::isfinite(p)) {
      throw InvalidInputError("prior probabilities must be finite and >= 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw InvalidInputError("prior probabilities must sum to 1 (got " +
                            std::to_string(sum) + ")");
  }
}

std::vector<double> TypeDistribution::cdf() const {
  std::vector<double> out(pmf.size());
  double acc = 0.0;
  for (std::size_t t = 0; t < pmf.size(); ++t) {
    acc += pmf[t];
    out[t] = acc;
  }
  return out;
}

VirtualTypeTable virtual_values(const std::vector<double>& type_set,
                                const TypeDistribution& dist) {
  const std::size_t K = type_set.size();
  dist.validate(K);
  for (double p : dist.pmf) {
    if (p <= 0.0) {
      throw InvalidInputError(
          "virtual values need positive mass on every type");
    }
  }
  VirtualTypeTable table;
  table.phi.assign(K, 0.0);
  table.excluded.assign(K, 0);
  table.excluded[0] = 1;
  const std::vector<double> F = dist.cdf();
  for (std::size_t t = 1; t < K; ++t) {
    table.phi[t] = type_set[t] - (type_set[t] - type_set[t - 1]) *
                                     (1.0 - F[t - 1]) / dist.pmf[t - 1];
  }
  return table;
}

VirtualTypeTable iron_virtual_values(const VirtualTypeTable& table,
                                     const TypeDistribution& dist) {
  const std::size_t K = table.phi.size();
  if (table.excluded.size() != K || dist.pmf.size() != K) {
    throw InvalidInputError("virtual value table and prior sizes disagree");
  }
  // Lower convex hull of the cumulative mass-weighted curve over the
  // non-excluded types; the hull slopes are the ironed values, constant on
  // each pooled interval.
  std::vector<std::size_t> idx;
  for (std::size_t t = 0; t < K; ++t) {
    if (!table.excluded[t]) idx.push_back(t);
  }
  VirtualTypeTable out = table;
  out.ironed = true;
  if (idx.empty()) return out;

  struct HullPoint {
    double mass, value;       // cumulative coordinates
    std::size_t upto;         // number of idx entries consumed
  };
  std::vector<HullPoint> hull;
  hull.push_back({0.0, 0.0, 0});
  double mass = 0.0, value = 0.0;
  for (std::size_t s = 0; s < idx.size(); ++s) {
    mass += dist.pmf[idx[s]];
    value += dist.pmf[idx[s]] * table.phi[idx[s]];
    HullPoint next{mass, value, s + 1};
    while (hull.size() >= 2) {
      const HullPoint& b = hull[hull.size() - 1];
      const HullPoint& a = hull[hull.size() - 2];
      // Keep b only if it lies strictly below segment a-next.
      if ((b.value - a.value) * (next.mass - a.mass) <=
          (next.value - a.value) * (b.mass - a.mass)) {
        break;
      }
      hull.pop_back();
    }
    hull.push_back(next);
  }
  for (std::size_t h = 1; h < hull.size(); ++h) {
    const double slope = (hull[h].value - hull[h - 1].value) /
                         (hull[h].mass - hull[h - 1].mass);
    for (std::size_t s = hull[h - 1].upto; s < hull[h].upto; ++s) {
      out.phi[idx[s]] = slope;
    }
  }
  return out;
}

RevenueOutcome run_revenue_auction(const Instance& instance,
                                   const NeighborhoodIndex& nbr,
                                   const std::vector<TypeDistribution>& priors,
                                   std::uint64_t seed) {
  instance.validate();
  const int m = instance.num_bidders();
  const std::size_t K = instance.type_set.size();
  if (static_cast<int>(priors.size()) != m) {
    throw InvalidInputError("prior count does not match bidder count");
  }
  std::vector<VirtualTypeTable> tables;
  tables.reserve(m);
  for (int i = 0; i < m; ++i) {
    tables.push_back(
        iron_virtual_values(virtual_values(instance.type_set, priors[i]),
                            priors[i]));
  }

  RevenueOutcome out;
  out.virtual_bids.resize(m);
  for (int i = 0; i < m; ++i) {
    const int k = instance.type_index(instance.bids[i]);
    out.virtual_bids[i] = clamped_virtual_bid(tables[i], k);
  }

  LpCache cache(instance, nbr);
  const FractionalSolution& sol = cache.solve(out.virtual_bids);
  MechanismOutcome& mech = out.outcome;
  mech.lp_objective = sol.objective;
  mech.expected_coverage.resize(m);
  for (int i = 0; i < m; ++i) {
    mech.expected_coverage[i] = kFlattenRatio * sol.bidder_coverage[i];
  }
  mech.allocation = round_and_flatten(instance, sol, nbr, seed, &mech.kept);

  // Payment curves live in reported-type space: reporting type t places
  // the clamped ironed virtual bid of t into the fractional solve. The
  // curve is monotone because ironed values are non-decreasing in the type
  // and fractional coverage is monotone in the bid.
  mech.payments.resize(m);
  for (int i = 0; i < m; ++i) {
    std::vector<double> bids = out.virtual_bids;
    std::vector<double> curve(K + 1, 0.0);
    for (std::size_t t = 0; t < K; ++t) {
      bids[i] = clamped_virtual_bid(tables[i], t);
      curve[t + 1] = kFlattenRatio * cache.solve(bids).bidder_coverage[i];
    }
    for (std::size_t t = 1; t <= K; ++t) {
      if (curve[t] < curve[t - 1] - kCurveTol) {
        throw InvariantViolationError(
            "revenue coverage curve of bidder " + std::to_string(i) +
            " decreased");
      }
    }
    mech.payments[i] =
        myerson_payment(curve, instance.type_set, instance.bids[i]);
    out.expected_revenue += mech.payments[i];
  }

  mech.realized_coverage.resize(m);
  std::vector<std::vector<int>> datasets(m);
  for (int j = 0; j < instance.num_points(); ++j) {
    const int owner = mech.allocation.assignment[j];
    if (owner != kUnassignedPoint) datasets[owner].push_back(j);
  }
  for (int i = 0; i < m; ++i) {
    mech.realized_coverage[i] = coverage(instance, nbr, i, datasets[i]);
  }
  return out;
}

}  // namespace covauction
