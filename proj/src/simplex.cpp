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

#include "covauction/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "covauction/errors.hpp"

namespace covauction {

namespace {
constexpr double kDualTol = 1e-9;       // reduced-cost optimality tolerance
constexpr double kZeroTol = 1e-11;      // treat smaller tableau entries as 0
constexpr double kPivotTol = 1e-8;      // minimum acceptable pivot magnitude
constexpr double kRatioTieTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kRefactorInterval = 64;
constexpr long kStallLimit = 1000;      // pivots without progress before Bland
}  // namespace

void CoverageLpProblem::validate() const {
  if (num_cov_rows < 0 || num_groups < 0) {
    throw InvalidInputError("negative LP dimensions");
  }
  if (static_cast<int>(gain.size()) != num_cov_rows) {
    throw InvalidInputError("gain size mismatch");
  }
  for (double q : gain) {
    if (q < 0.0 || !std::isfinite(q)) {
      throw InvalidInputError("coverage gains must be finite and >= 0");
    }
  }
  if (covers.size() != group_of.size()) {
    throw InvalidInputError("covers/group_of size mismatch");
  }
  for (int x = 0; x < num_vars(); ++x) {
    if (group_of[x] < 0 || group_of[x] >= num_groups) {
      throw InvalidInputError("group index out of range");
    }
    for (int r : covers[x]) {
      if (r < 0 || r >= num_cov_rows) {
        throw InvalidInputError("coverage row index out of range");
      }
    }
  }
}

CoverageSimplex::CoverageSimplex(const CoverageLpProblem& problem)
    : p_(problem),
      nx_(problem.num_vars()),
      nr_(problem.num_cov_rows),
      ng_(problem.num_groups),
      num_rows_(problem.num_cov_rows + problem.num_groups) {
  p_.validate();
  row_members_.resize(nr_);
  group_members_.resize(ng_);
  for (int x = 0; x < nx_; ++x) {
    for (int r : p_.covers[x]) row_members_[r].push_back(x);
    group_members_[p_.group_of[x]].push_back(x);
  }

  status_.assign(nx_ + 2 * nr_ + ng_, Status::kLower);
  value_.assign(nx_ + 2 * nr_ + ng_, 0.0);
  singleton_basic_.assign(num_rows_, -1);
  for (int r = 0; r < nr_; ++r) {
    status_[SVar(r)] = Status::kBasic;
    singleton_basic_[r] = SVar(r);
  }
  for (int g = 0; g < ng_; ++g) {
    status_[TVar(g)] = Status::kBasic;
    value_[TVar(g)] = 1.0;
    singleton_basic_[nr_ + g] = TVar(g);
  }
  core_pos_of_var_.assign(nx_, -1);
  core_pos_of_row_.assign(num_rows_, -1);
  minv_.resize(0, 0);

  // Static column norms for pricing; unit columns have norm 1.
  x_norm_.resize(nx_);
  for (int x = 0; x < nx_; ++x) {
    x_norm_[x] = std::sqrt(1.0 + static_cast<double>(p_.covers[x].size()));
  }
}

int CoverageSimplex::RowOfSingleton(int var) const {
  if (var < nx_ + nr_) return var - nx_;            // C_r
  if (var < nx_ + 2 * nr_) return var - nx_ - nr_;  // s_r
  return nr_ + (var - nx_ - 2 * nr_);               // t_g
}

double CoverageSimplex::Cost(int var) const {
  if (var >= nx_ && var < nx_ + nr_) return p_.gain[var - nx_];
  return 0.0;
}

double CoverageSimplex::UpperBound(int var) const {
  if (var >= nx_ && var < nx_ + nr_) return 1.0;  // C_r
  return kInf;
}

// Duals: rows whose unit column is basic carry that column's cost directly;
// the remaining (core) rows need a solve against the core transpose.
void CoverageSimplex::ComputeDuals(Eigen::VectorXd& y) const {
  y.setZero(num_rows_);
  for (int row = 0; row < num_rows_; ++row) {
    const int b = singleton_basic_[row];
    if (b >= 0) y[row] = Cost(b);
  }
  const int k = static_cast<int>(core_vars_.size());
  if (k == 0) return;
  Eigen::VectorXd rhs(k);
  for (int pcol = 0; pcol < k; ++pcol) {
    const int x = core_vars_[pcol];
    double v = 0.0;  // cost of X vars is 0
    for (int r : p_.covers[x]) {
      if (core_pos_of_row_[r] < 0) v += y[r];  // A[r, x] = -1
    }
    // Group rows never contribute: their unit variable has cost 0.
    rhs[pcol] = v;
  }
  const Eigen::VectorXd ycore = minv_.transpose() * rhs;
  for (int prow = 0; prow < k; ++prow) y[core_rows_[prow]] = ycore[prow];
}

int CoverageSimplex::ChooseEntering(const Eigen::VectorXd& y, bool bland,
                                    int& dir) const {
  int best = -1;
  double best_score = 0.0;
  auto consider = [&](int var, double d) {
    double score;
    int candidate_dir;
    if (status_[var] == Status::kLower && d > kDualTol) {
      score = d;
      candidate_dir = 1;
    } else if (status_[var] == Status::kUpper && d < -kDualTol) {
      score = -d;
      candidate_dir = -1;
    } else {
      return false;
    }
    if (IsX(var)) score /= x_norm_[var];
    if (bland) {
      if (best < 0) {
        best = var;
        dir = candidate_dir;
      }
      return true;
    }
    if (score > best_score) {
      best_score = score;
      best = var;
      dir = candidate_dir;
    }
    return false;
  };

  for (int x = 0; x < nx_; ++x) {
    if (status_[x] == Status::kBasic) continue;
    double d = -y[nr_ + p_.group_of[x]];
    for (int r : p_.covers[x]) d += y[r];
    if (consider(x, d) && bland) return best;
  }
  for (int r = 0; r < nr_; ++r) {
    if (status_[CVar(r)] != Status::kBasic) {
      if (consider(CVar(r), p_.gain[r] - y[r]) && bland) return best;
    }
    if (status_[SVar(r)] != Status::kBasic) {
      if (consider(SVar(r), -y[r]) && bland) return best;
    }
  }
  for (int g = 0; g < ng_; ++g) {
    if (status_[TVar(g)] != Status::kBasic) {
      if (consider(TVar(g), -y[nr_ + g]) && bland) return best;
    }
  }
  return best;
}

// w = Minv * A[core rows, entering]; z[row] = residual coefficient on every
// non-core row (i.e. on that row's basic unit variable).
void CoverageSimplex::Ftran(int entering, Eigen::VectorXd& w,
                            Eigen::VectorXd& z) const {
  const int k = static_cast<int>(core_vars_.size());
  Eigen::VectorXd a_core = Eigen::VectorXd::Zero(k);
  z.setZero(num_rows_);

  if (IsX(entering)) {
    for (int r : p_.covers[entering]) {
      const int prow = core_pos_of_row_[r];
      if (prow >= 0) {
        a_core[prow] = -1.0;
      } else {
        z[r] = -1.0;
      }
    }
    const int grow = nr_ + p_.group_of[entering];
    const int prow = core_pos_of_row_[grow];
    if (prow >= 0) {
      a_core[prow] = 1.0;
    } else {
      z[grow] = 1.0;
    }
  } else {
    const int row = RowOfSingleton(entering);
    const int prow = core_pos_of_row_[row];
    if (prow >= 0) {
      a_core[prow] = 1.0;
    } else {
      z[row] = 1.0;
    }
  }

  w = (k > 0) ? Eigen::VectorXd(minv_ * a_core) : Eigen::VectorXd(0);
  for (int pcol = 0; pcol < k; ++pcol) {
    const double wp = w[pcol];
    if (std::abs(wp) <= kZeroTol) continue;
    const int x = core_vars_[pcol];
    for (int r : p_.covers[x]) {
      if (core_pos_of_row_[r] < 0) z[r] += wp;  // -= wp * (-1)
    }
    const int grow = nr_ + p_.group_of[x];
    if (core_pos_of_row_[grow] < 0) z[grow] -= wp;
  }
}

void CoverageSimplex::GatherCoreRow(int row, Eigen::VectorXd& out) const {
  const int k = static_cast<int>(core_vars_.size());
  out.setZero(k);
  if (row < nr_) {
    for (int x : row_members_[row]) {
      const int pcol = core_pos_of_var_[x];
      if (pcol >= 0) out[pcol] = -1.0;
    }
  } else {
    for (int x : group_members_[row - nr_]) {
      const int pcol = core_pos_of_var_[x];
      if (pcol >= 0) out[pcol] = 1.0;
    }
  }
}

void CoverageSimplex::Refactorize() {
  const int k = static_cast<int>(core_vars_.size());
  pivots_since_refactor_ = 0;
  if (k == 0) {
    minv_.resize(0, 0);
    RecomputeBasicValues();
    return;
  }
  Eigen::MatrixXd m(k, k);
  Eigen::VectorXd row(k);
  for (int prow = 0; prow < k; ++prow) {
    GatherCoreRow(core_rows_[prow], row);
    m.row(prow) = row;
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  minv_ = lu.inverse();
  if (!minv_.allFinite()) {
    throw SolverError("singular basis during refactorization");
  }
  RecomputeBasicValues();
}

void CoverageSimplex::RecomputeBasicValues() {
  const int k = static_cast<int>(core_vars_.size());
  // rhs of each row after shifting nonbasic variables to their bounds; the
  // only nonbasic variables away from zero are C_r at their upper bound.
  Eigen::VectorXd rhs(num_rows_);
  for (int r = 0; r < nr_; ++r) {
    rhs[r] = (status_[CVar(r)] == Status::kUpper) ? -1.0 : 0.0;
  }
  for (int g = 0; g < ng_; ++g) rhs[nr_ + g] = 1.0;

  Eigen::VectorXd xk(k);
  if (k > 0) {
    Eigen::VectorXd rhs_core(k);
    for (int prow = 0; prow < k; ++prow) rhs_core[prow] = rhs[core_rows_[prow]];
    xk = minv_ * rhs_core;
    for (int pcol = 0; pcol < k; ++pcol) {
      const double v = xk[pcol];
      value_[core_vars_[pcol]] = v;
      if (std::abs(v) <= kZeroTol) continue;
      const int x = core_vars_[pcol];
      for (int r : p_.covers[x]) {
        if (core_pos_of_row_[r] < 0) rhs[r] += v;  // -= v * (-1)
      }
      const int grow = nr_ + p_.group_of[x];
      if (core_pos_of_row_[grow] < 0) rhs[grow] -= v;
    }
  }
  for (int row = 0; row < num_rows_; ++row) {
    const int b = singleton_basic_[row];
    if (b >= 0) value_[b] = rhs[row];
  }
  for (int pcol = 0; pcol < k; ++pcol) {
    if (value_[core_vars_[pcol]] < -1e-6) {
      throw SolverError("basic variable drifted infeasible");
    }
  }
}

double CoverageSimplex::Objective() const {
  double obj = 0.0;
  for (int r = 0; r < nr_; ++r) obj += p_.gain[r] * value_[CVar(r)];
  return obj;
}

CoverageLpSolution CoverageSimplex::Solve() {
  const long max_iterations =
      20000L + 50L * static_cast<long>(num_rows_ + nx_);
  Eigen::VectorXd y(num_rows_), w, z(num_rows_);

  long iterations = 0;
  long stall = 0;
  bool bland = false;
  double last_obj = 0.0;

  while (true) {
    if (++iterations > max_iterations) {
      throw SolverError("iteration limit exceeded (" +
                        std::to_string(max_iterations) + ")");
    }
    ComputeDuals(y);
    int dir = 0;
    const int entering = ChooseEntering(y, bland, dir);
    if (entering < 0) {
      if (bland) {
        bland = false;  // optimality must be certified under full pricing
        continue;
      }
      break;  // optimal
    }

    Ftran(entering, w, z);

    // Bounded-variable ratio test. A positive step of the entering variable
    // in direction `dir` moves basic i by -dir * coeff_i.
    const int k = static_cast<int>(core_vars_.size());
    double best_step = UpperBound(entering) == kInf
                           ? kInf
                           : UpperBound(entering);  // bound-to-bound flip
    int leaving = -1;
    int leaving_to_upper = 0;
    double leaving_coeff = 0.0;

    auto scan = [&](int var, double coeff) {
      if (std::abs(coeff) <= kZeroTol) return;
      const double delta = -dir * coeff;  // d(value)/d(step)
      double step;
      int to_upper;
      if (delta < 0.0) {
        step = value_[var] / (-delta);
        to_upper = 0;
      } else {
        const double ub = UpperBound(var);
        if (ub == kInf) return;
        step = (ub - value_[var]) / delta;
        to_upper = 1;
      }
      if (step < 0.0) step = 0.0;
      if (step < best_step - kRatioTieTol ||
          (step < best_step + kRatioTieTol &&
           (leaving < 0 || std::abs(coeff) > std::abs(leaving_coeff) + kRatioTieTol ||
            (std::abs(coeff) > std::abs(leaving_coeff) - kRatioTieTol && var < leaving)))) {
        if (step < best_step) best_step = step;
        leaving = var;
        leaving_to_upper = to_upper;
        leaving_coeff = coeff;
      }
    };

    for (int pcol = 0; pcol < k; ++pcol) scan(core_vars_[pcol], w[pcol]);
    for (int row = 0; row < num_rows_; ++row) {
      const int b = singleton_basic_[row];
      if (b >= 0) scan(b, z[row]);
    }

    if (leaving < 0 && best_step == kInf) {
      throw SolverError("unbounded direction encountered");
    }

    // Apply the step to all basic variables.
    const double step = best_step;
    if (step > 0.0) {
      for (int pcol = 0; pcol < k; ++pcol) {
        value_[core_vars_[pcol]] -= dir * w[pcol] * step;
      }
      for (int row = 0; row < num_rows_; ++row) {
        const int b = singleton_basic_[row];
        if (b >= 0) value_[b] -= dir * z[row] * step;
      }
    }

    const bool bound_flip = leaving < 0;
    if (bound_flip) {
      status_[entering] = (dir > 0) ? Status::kUpper : Status::kLower;
      value_[entering] = (dir > 0) ? UpperBound(entering) : 0.0;
    } else {
      if (std::abs(leaving_coeff) < kPivotTol) {
        // Tiny pivot: refactorize and retry the iteration from clean data.
        Refactorize();
        --iterations;
        continue;
      }
      value_[entering] = (dir > 0) ? step : UpperBound(entering) - step;
      status_[entering] = Status::kBasic;
      status_[leaving] = leaving_to_upper ? Status::kUpper : Status::kLower;
      value_[leaving] = leaving_to_upper ? UpperBound(leaving) : 0.0;

      const bool entering_x = IsX(entering);
      const bool leaving_x = IsX(leaving);
      if (entering_x && leaving_x) {
        // Core column replacement.
        const int pcol = core_pos_of_var_[leaving];
        const double piv = w[pcol];
        Eigen::RowVectorXd new_row = minv_.row(pcol) / piv;
        for (int i = 0; i < k; ++i) {
          if (i != pcol) minv_.row(i) -= w[i] * new_row;
        }
        minv_.row(pcol) = new_row;
        core_pos_of_var_[leaving] = -1;
        core_pos_of_var_[entering] = pcol;
        core_vars_[pcol] = entering;
      } else if (entering_x && !leaving_x) {
        // Core grows by the entering column and the leaving variable's row.
        const int row = RowOfSingleton(leaving);
        const double piv = z[row];
        Eigen::VectorXd v;
        GatherCoreRow(row, v);
        Eigen::RowVectorXd pT = v.transpose() * minv_;  // 1 x k
        Eigen::MatrixXd grown(k + 1, k + 1);
        grown.topLeftCorner(k, k) = minv_ + (w * pT) / piv;
        grown.topRightCorner(k, 1) = -w / piv;
        grown.bottomLeftCorner(1, k) = -pT / piv;
        grown(k, k) = 1.0 / piv;
        minv_ = std::move(grown);
        core_pos_of_var_[entering] = k;
        core_vars_.push_back(entering);
        core_pos_of_row_[row] = k;
        core_rows_.push_back(row);
        singleton_basic_[row] = -1;
      } else if (!entering_x && leaving_x) {
        // Core shrinks: drop the entering variable's row and the leaving
        // column.
        const int row = RowOfSingleton(entering);
        const int i0 = core_pos_of_row_[row];
        const int j0 = core_pos_of_var_[leaving];
        // Equals the ratio-test coefficient, already checked against
        // kPivotTol.
        const double piv = minv_(j0, i0);
        Eigen::MatrixXd shrunk(k - 1, k - 1);
        for (int j = 0, jj = 0; j < k; ++j) {
          if (j == j0) continue;
          for (int i = 0, ii = 0; i < k; ++i) {
            if (i == i0) continue;
            shrunk(jj, ii) = minv_(j, i) - minv_(j, i0) * minv_(j0, i) / piv;
            ++ii;
          }
          ++jj;
        }
        minv_ = std::move(shrunk);
        core_pos_of_var_[leaving] = -1;
        core_vars_.erase(core_vars_.begin() + j0);
        for (int j = j0; j < k - 1; ++j) core_pos_of_var_[core_vars_[j]] = j;
        core_pos_of_row_[row] = -1;
        core_rows_.erase(core_rows_.begin() + i0);
        for (int i = i0; i < k - 1; ++i) core_pos_of_row_[core_rows_[i]] = i;
        singleton_basic_[row] = entering;
      } else {
        const int row_e = RowOfSingleton(entering);
        const int row_l = RowOfSingleton(leaving);
        if (row_e == row_l) {
          // Swap between the two unit columns of one row; core unchanged.
          singleton_basic_[row_e] = entering;
        } else {
          // Core row replacement: row_e leaves the core, row_l joins it.
          const int i0 = core_pos_of_row_[row_e];
          Eigen::VectorXd r_new;
          GatherCoreRow(row_l, r_new);
          Eigen::VectorXd wt = minv_.transpose() * r_new;  // r^T Minv
          const double piv = wt[i0];
          if (std::abs(piv) < kPivotTol) {
            throw SolverError("degenerate core row-replacement pivot");
          }
          Eigen::VectorXd new_col = minv_.col(i0) / piv;
          for (int i = 0; i < k; ++i) {
            if (i != i0) minv_.col(i) -= wt[i] * new_col;
          }
          minv_.col(i0) = new_col;
          core_rows_[i0] = row_l;
          core_pos_of_row_[row_e] = -1;
          core_pos_of_row_[row_l] = i0;
          singleton_basic_[row_e] = entering;
          singleton_basic_[row_l] = -1;
        }
      }
      if (++pivots_since_refactor_ >= kRefactorInterval) Refactorize();
    }

    const double obj = Objective();
    if (obj > last_obj + 1e-12) {
      last_obj = obj;
      stall = 0;
      bland = false;
    } else if (++stall > kStallLimit) {
      bland = true;
    }
  }

  Refactorize();  // clean values for extraction
  CoverageLpSolution sol;
  sol.iterations = iterations;
  sol.x.resize(nx_);
  for (int x = 0; x < nx_; ++x) sol.x[x] = value_[x];
  sol.c.resize(nr_);
  for (int r = 0; r < nr_; ++r) sol.c[r] = value_[CVar(r)];
  sol.objective = Objective();
  return sol;
}

void WriteLpFormat(const CoverageLpProblem& problem, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot open LP dump file: " + path);
  out << "Maximize\n obj:";
  bool first = true;
  for (int r = 0; r < problem.num_cov_rows; ++r) {
    if (problem.gain[r] == 0.0) continue;
    out << (first ? " " : " + ") << problem.gain[r] << " c" << r;
    first = false;
  }
  if (first) out << " 0 c0";
  out << "\nSubject To\n";
  std::vector<std::vector<int>> row_members(problem.num_cov_rows);
  std::vector<std::vector<int>> group_members(problem.num_groups);
  for (int x = 0; x < problem.num_vars(); ++x) {
    for (int r : problem.covers[x]) row_members[r].push_back(x);
    group_members[problem.group_of[x]].push_back(x);
  }
  for (int r = 0; r < problem.num_cov_rows; ++r) {
    out << " cov" << r << ": c" << r;
    for (int x : row_members[r]) out << " - x" << x;
    out << " <= 0\n";
  }
  for (int g = 0; g < problem.num_groups; ++g) {
    out << " grp" << g << ":";
    bool f = true;
    for (int x : group_members[g]) {
      out << (f ? " " : " + ") << "x" << x;
      f = false;
    }
    if (f) out << " 0 x0";
    out << " <= 1\n";
  }
  out << "Bounds\n";
  for (int r = 0; r < problem.num_cov_rows; ++r) {
    out << " 0 <= c" << r << " <= 1\n";
  }
  out << "End\n";
}

}  // namespace covauction
