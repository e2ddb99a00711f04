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

#ifndef COVAUCTION_REVENUE_HPP_
#define COVAUCTION_REVENUE_HPP_

#include <cstdint>
#include <vector>

#include "covauction/mechanism.hpp"
#include "covauction/valuation.hpp"

namespace covauction {

// Discrete prior over the type set, one probability per type.
struct TypeDistribution {
  std::vector<double> pmf;

  void validate(std::size_t num_types) const;  // throws InvalidInputError
  std::vector<double> cdf() const;
};

// Discrete virtual values. The lowest type has no downward increment, so it
// is marked excluded rather than given a virtual value.
struct VirtualTypeTable {
  std::vector<double> phi;       // per type; phi[0] is unused
  std::vector<char> excluded;    // true only for the lowest type
  bool ironed = false;
};

// phi_t = theta_t - (theta_t - theta_{t-1}) * (1 - F(theta_{t-1})) /
// f(theta_{t-1}) for t >= 1. Zero prior mass below a supported type makes
// the hazard undefined and is rejected.
VirtualTypeTable virtual_values(const std::vector<double>& type_set,
                                const TypeDistribution& dist);

// Monotone (ironed) virtual values: slopes of the lower convex hull of the
// cumulative mass-weighted virtual value curve in quantile space. The
// result is non-decreasing and preserves every prior-weighted expectation
// of functions constant on the pooled intervals. Idempotent.
VirtualTypeTable iron_virtual_values(const VirtualTypeTable& table,
                                     const TypeDistribution& dist);

// Revenue-optimal variant of the auction: the allocation maximizes virtual
// welfare, i.e. it runs the fractional solve with each bid replaced by
// max(ironed virtual value, 0) (lowest types by 0), then rounds, flattens
// and charges threshold payments along the virtual allocation rule.
struct RevenueOutcome {
  MechanismOutcome outcome;
  std::vector<double> virtual_bids;  // clamped ironed values actually used
  double expected_revenue = 0.0;     // sum of charged payments
};

RevenueOutcome run_revenue_auction(const Instance& instance,
                                   const NeighborhoodIndex& nbr,
                                   const std::vector<TypeDistribution>& priors,
                                   std::uint64_t seed);

}  // namespace covauction

#endif  // COVAUCTION_REVENUE_HPP_
