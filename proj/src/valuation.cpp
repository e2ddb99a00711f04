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

#include "covauction/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "covauction/errors.hpp"

namespace covauction {

namespace {

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

double cosine_distance(const std::vector<double>& a,
                       const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  if (na == 0.0 || nb == 0.0) {
    throw InvalidInputError("cosine metric is undefined for a zero vector");
  }
  return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

double Database::distance(int a, int b) const {
  if (a == b) return 0.0;
  switch (metric) {
    case Metric::kEuclidean:
      return euclidean(points[a], points[b]);
    case Metric::kCosine:
      return cosine_distance(points[a], points[b]);
  }
  return 0.0;
}

void Database::validate() const {
  if (points.empty()) throw InvalidInputError("database has no points");
  const std::size_t d = points[0].size();
  if (d == 0) throw InvalidInputError("points must have dimension >= 1");
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].size() != d) {
      throw InvalidInputError("point " + std::to_string(j) +
                              " has inconsistent dimension");
    }
    for (double v : points[j]) {
      if (!std::isfinite(v)) {
        throw InvalidInputError("point " + std::to_string(j) +
                                " has a non-finite coordinate");
      }
    }
  }
  if (!class_labels.empty() && class_labels.size() != points.size()) {
    throw InvalidInputError("class_labels size does not match point count");
  }
}

int Instance::type_index(double value) const {
  for (std::size_t t = 0; t < type_set.size(); ++t) {
    if (type_set[t] == value) return static_cast<int>(t);
  }
  return -1;
}

void Instance::validate() const {
  db.validate();
  if (bidders.empty()) throw InvalidInputError("instance has no bidders");
  if (type_set.empty()) throw InvalidInputError("type set is empty");
  for (std::size_t t = 0; t < type_set.size(); ++t) {
    if (type_set[t] < 0.0) throw InvalidInputError("type set has a negative entry");
    if (t > 0 && type_set[t] <= type_set[t - 1]) {
      throw InvalidInputError("type set must be strictly ascending");
    }
  }
  const std::size_t n = db.points.size();
  for (std::size_t i = 0; i < bidders.size(); ++i) {
    const BidderProfile& b = bidders[i];
    const std::string who = "bidder " + std::to_string(i);
    if (b.weights.size() != n) throw InvalidInputError(who + ": weight count != n");
    if (b.radii.size() != n) throw InvalidInputError(who + ": radius count != n");
    double sum = 0.0;
    for (double w : b.weights) {
      if (w < 0.0) throw InvalidInputError(who + ": negative weight");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw InvalidInputError(who + ": weights must sum to 1 (got " +
                              std::to_string(sum) + ")");
    }
    for (double r : b.radii) {
      if (r < 0.0 || !std::isfinite(r)) {
        throw InvalidInputError(who + ": radii must be finite and >= 0");
      }
    }
    if (type_index(b.true_type) < 0) {
      throw InvalidInputError(who + ": true type is not in the type set");
    }
  }
  if (bids.size() != bidders.size()) {
    throw InvalidInputError("bid count does not match bidder count");
  }
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (type_index(bids[i]) < 0) {
      throw InvalidInputError("bid of bidder " + std::to_string(i) +
                              " is not in the type set");
    }
  }
}

DistanceMatrix::DistanceMatrix(const Database& db) : n_(db.num_points()) {
  d_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int a = 0; a < n_; ++a) {
    for (int b = a + 1; b < n_; ++b) {
      const double v = db.distance(a, b);
      d_[a * n_ + b] = v;
      d_[b * n_ + a] = v;
    }
  }
}

std::vector<double> normalize_weights(const std::vector<double>& raw) {
  double sum = 0.0;
  for (double w : raw) {
    if (w < 0.0 || !std::isfinite(w)) {
      throw InvalidInputError("weights must be finite and >= 0");
    }
    sum += w;
  }
  if (sum <= 0.0) {
    throw InvalidInputError("bidder has no interest in database (all weights zero)");
  }
  std::vector<double> out(raw.size());
  for (std::size_t j = 0; j < raw.size(); ++j) out[j] = raw[j] / sum;
  return out;
}

NeighborhoodIndex build_neighborhoods(const DistanceMatrix& dist,
                                      const std::vector<BidderProfile>& bidders) {
  const int n = dist.num_points();
  NeighborhoodIndex index;
  index.neighbors.resize(bidders.size());
  for (std::size_t i = 0; i < bidders.size(); ++i) {
    index.neighbors[i].resize(n);
    for (int j = 0; j < n; ++j) {
      const double r = bidders[i].radii[j];
      std::vector<int>& nbr = index.neighbors[i][j];
      for (int jp = 0; jp < n; ++jp) {
        // Boundary ties count as covered: the comparison is exactly <=.
        if (dist(j, jp) <= r) nbr.push_back(jp);
      }
    }
  }
  return index;
}

NeighborhoodIndex build_neighborhoods(const Database& db,
                                      const std::vector<BidderProfile>& bidders) {
  for (const BidderProfile& b : bidders) {
    if (static_cast<int>(b.radii.size()) != db.num_points()) {
      throw InvalidInputError("radius count does not match database size");
    }
  }
  return build_neighborhoods(DistanceMatrix(db), bidders);
}

double coverage(const Instance& instance, const NeighborhoodIndex& nbr,
                int bidder, std::span<const int> dataset) {
  const int n = instance.num_points();
  if (bidder < 0 || bidder >= instance.num_bidders()) {
    throw InvalidInputError("bidder index out of range");
  }
  std::vector<char> in_dataset(n, 0);
  for (int j : dataset) {
    if (j < 0 || j >= n) throw InvalidInputError("point index out of range");
    in_dataset[j] = 1;
  }
  const std::vector<double>& w = instance.bidders[bidder].weights;
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int jp : nbr.neighbors[bidder][j]) {
      if (in_dataset[jp]) {
        total += w[j];
        break;
      }
    }
  }
  return total;
}

double welfare(const Instance& instance, const NeighborhoodIndex& nbr,
               std::span<const int> assignment) {
  const int n = instance.num_points();
  const int m = instance.num_bidders();
  if (static_cast<int>(assignment.size()) != n) {
    throw InvalidInputError("assignment size does not match point count");
  }
  std::vector<std::vector<int>> datasets(m);
  for (int j = 0; j < n; ++j) {
    const int owner = assignment[j];
    if (owner == kUnassignedPoint) continue;
    if (owner < 0 || owner >= m) throw InvalidInputError("owner index out of range");
    datasets[owner].push_back(j);
  }
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    total += instance.bids[i] * coverage(instance, nbr, i, datasets[i]);
  }
  return total;
}

double welfare(const Instance& instance, const NeighborhoodIndex& nbr,
               const std::vector<std::vector<int>>& datasets) {
  const int n = instance.num_points();
  if (static_cast<int>(datasets.size()) != instance.num_bidders()) {
    throw InvalidInputError("dataset count does not match bidder count");
  }
  std::vector<int> assignment(n, kUnassignedPoint);
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    for (int j : datasets[i]) {
      if (j < 0 || j >= n) throw InvalidInputError("point index out of range");
      if (assignment[j] != kUnassignedPoint) {
        throw InvalidInputError("point " + std::to_string(j) +
                                " allocated to more than one bidder");
      }
      assignment[j] = static_cast<int>(i);
    }
  }
  return welfare(instance, nbr, std::span<const int>(assignment));
}

}  // namespace covauction
