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

#ifndef COVAUCTION_SIMPLEX_HPP_
#define COVAUCTION_SIMPLEX_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace covauction {

// The LP family both allocation problems reduce to:
//
//   max  sum_r gain[r] * C_r
//   s.t. C_r <= sum_{x in cover(r)} X_x          (one row per coverage row r)
//        sum_{x : group_of[x] = g} X_x <= 1      (one row per group g)
//        0 <= C_r <= 1,  X_x >= 0
//
// X variables are "assignment" columns; everything else (C, slacks) touches
// a single row. `covers[x]` lists the coverage rows x contributes to.
struct CoverageLpProblem {
  int num_cov_rows = 0;
  int num_groups = 0;
  std::vector<double> gain;               // size num_cov_rows, >= 0
  std::vector<int> group_of;              // size num_vars
  std::vector<std::vector<int>> covers;   // size num_vars, each sorted

  int num_vars() const { return static_cast<int>(group_of.size()); }
  void validate() const;  // throws InvalidInputError
};

struct CoverageLpSolution {
  std::vector<double> x;  // per X variable
  std::vector<double> c;  // per coverage row
  double objective = 0.0;
  long iterations = 0;
};

// Primal simplex specialized to CoverageLpProblem. Because every non-X
// column is a unit column, the basis factorization reduces to a dense
// inverse of the "core": the square submatrix indexed by basic X variables
// and the rows whose unit column is nonbasic. The solver is strictly
// sequential with index-based tie-breaking, so identical inputs produce
// identical outputs.
class CoverageSimplex {
 public:
  explicit CoverageSimplex(const CoverageLpProblem& problem);

  // Throws SolverError on numerical failure; the all-zero solution is
  // always feasible so infeasibility cannot occur.
  CoverageLpSolution Solve();

 private:
  enum class Status : unsigned char { kLower, kUpper, kBasic };

  // Variable ids: [0, nx) = X, then C_r, then coverage slacks s_r, then
  // group slacks t_g.
  int CVar(int r) const { return nx_ + r; }
  int SVar(int r) const { return nx_ + nr_ + r; }
  int TVar(int g) const { return nx_ + 2 * nr_ + g; }
  bool IsX(int var) const { return var < nx_; }
  int RowOfSingleton(int var) const;  // row id of a non-X variable's column
  double Cost(int var) const;
  double UpperBound(int var) const;

  void ComputeDuals(Eigen::VectorXd& y) const;
  int ChooseEntering(const Eigen::VectorXd& y, bool bland, int& dir) const;
  void Ftran(int entering, Eigen::VectorXd& w, Eigen::VectorXd& z) const;
  void GatherCoreRow(int row, Eigen::VectorXd& out) const;  // A[row, core vars]
  void Refactorize();
  void RecomputeBasicValues();
  double Objective() const;

  const CoverageLpProblem& p_;
  int nx_, nr_, ng_, num_rows_;

  std::vector<std::vector<int>> row_members_;    // coverage row -> X vars
  std::vector<std::vector<int>> group_members_;  // group -> X vars

  std::vector<Status> status_;
  std::vector<double> value_;
  std::vector<int> singleton_basic_;  // per row: basic unit var, or -1 if core
  std::vector<int> core_vars_;        // basic X vars (column order of the core)
  std::vector<int> core_rows_;        // rows covered by the core (row order)
  std::vector<int> core_pos_of_var_;  // X var -> core column position or -1
  std::vector<int> core_pos_of_row_;  // row -> core row position or -1
  Eigen::MatrixXd minv_;              // inverse of the core, (var pos, row pos)
  std::vector<double> x_norm_;        // static pricing norms of X columns
  int pivots_since_refactor_ = 0;
};

// Debug dump in CPLEX LP text format, for cross-checking with an external
// solver.
void WriteLpFormat(const CoverageLpProblem& problem, const std::string& path);

}  // namespace covauction

#endif  // COVAUCTION_SIMPLEX_HPP_
