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

#ifndef COVAUCTION_VALUATION_HPP_
#define COVAUCTION_VALUATION_HPP_

#include <span>
#include <string>
#include <vector>

namespace covauction {

// How raw point dissimilarity is measured. Cosine similarity is converted
// to a distance as 1 - similarity so a single "d <= r" test applies to both.
enum class Metric { kEuclidean, kCosine };

struct Database {
  // n points of identical dimension d >= 1.
  std::vector<std::vector<double>> points;
  // Empty, or one label per point.
  std::vector<int> class_labels;
  Metric metric = Metric::kEuclidean;

  int num_points() const { return static_cast<int>(points.size()); }
  int dim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }

  // Symmetric, non-negative, zero on the diagonal.
  double distance(int a, int b) const;

  void validate() const;  // throws InvalidInputError
};

struct BidderProfile {
  std::vector<double> weights;  // n entries, normalized to sum 1
  std::vector<double> radii;    // n entries, >= 0
  double true_type = 0.0;       // element of the instance type set
};

struct Instance {
  Database db;
  std::vector<BidderProfile> bidders;
  std::vector<double> type_set;  // strictly ascending, non-negative
  std::vector<double> bids;      // m entries, each a member of type_set

  int num_bidders() const { return static_cast<int>(bidders.size()); }
  int num_points() const { return db.num_points(); }

  // Index of `value` in type_set, or -1.
  int type_index(double value) const;

  void validate() const;  // throws InvalidInputError
};

// Cached n x n pairwise distances.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const Database& db);
  double operator()(int a, int b) const { return d_[a * n_ + b]; }
  int num_points() const { return n_; }

 private:
  int n_;
  std::vector<double> d_;
};

// Per (bidder, point): the points whose allocation covers that point.
struct NeighborhoodIndex {
  // neighbors[i][j] = sorted list of j' with d(x_j, x_j') <= r_ij.
  std::vector<std::vector<std::vector<int>>> neighbors;

  int num_bidders() const { return static_cast<int>(neighbors.size()); }
  int num_points() const {
    return neighbors.empty() ? 0 : static_cast<int>(neighbors[0].size());
  }
};

// Scales a non-negative weight vector to sum exactly 1. Throws
// InvalidInputError on an all-zero vector (a bidder with no interest in the
// database) or any negative entry.
std::vector<double> normalize_weights(const std::vector<double>& raw);

NeighborhoodIndex build_neighborhoods(const Database& db,
                                      const std::vector<BidderProfile>& bidders);
NeighborhoodIndex build_neighborhoods(const DistanceMatrix& dist,
                                      const std::vector<BidderProfile>& bidders);

// Weighted fraction of points that have an allocated representative within
// radius: sum over covered j of w_ij. Monotone and submodular in `dataset`.
double coverage(const Instance& instance, const NeighborhoodIndex& nbr,
                int bidder, std::span<const int> dataset);

// Allocation as one owner (or kUnassignedPoint) per point. The partition
// property holds by construction.
inline constexpr int kUnassignedPoint = -1;

double welfare(const Instance& instance, const NeighborhoodIndex& nbr,
               std::span<const int> assignment);

// Per-bidder-set form. Throws InvalidInputError if two datasets overlap.
double welfare(const Instance& instance, const NeighborhoodIndex& nbr,
               const std::vector<std::vector<int>>& datasets);

}  // namespace covauction

#endif  // COVAUCTION_VALUATION_HPP_
