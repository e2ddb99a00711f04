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

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "covauction/errors.hpp"
#include "covauction/simplex.hpp"

using namespace covauction;

namespace {

struct OracleCase {
  int num_cov_rows;
  int num_groups;
  std::vector<double> gain;
  std::vector<int> group_of;
  std::vector<std::vector<int>> covers;
  double objective;  // frozen from an independent LP solver
};

// Optimal objectives computed externally and frozen.
const std::vector<OracleCase> kOracleCases = {
  { // case 0
    3, 2,
    {0.764752, 0.524648, 0.457829},
    {1, 0, 0, 0},
    {{0, 1}, {0, 1, 2}, {1}, {0, 1, 2}},
    1.7472290000000001},
  { // case 1
    5, 3,
    {0.481477, 0.646436, 0.289396, 0.672512, 0.780706},
    {1, 2, 1, 0, 1, 1},
    {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, {2}, {2}, {0, 1, 2, 3, 4}, {1, 2}},
    2.8705269999999996},
  { // case 2
    8, 4,
    {0.977543, 0.934381, 0.281951, 0.066015, 0.26001, 0.443201, 0.758997,
     0.977413},
    {2, 0, 1, 2, 0, 1, 1, 0, 0, 1, 1, 0},
    {{1, 2, 3, 5}, {0, 1, 4, 6, 7}, {0, 2, 3, 6, 7}, {1, 3, 4, 5, 6},
     {0, 1, 2, 3, 6, 7}, {2, 7}, {0, 2, 6, 7}, {1, 3}, {0, 2, 6, 7},
     {1, 3, 4, 5, 6, 7}, {0, 1, 2, 3, 4, 7}, {0, 1, 2, 3, 4, 5, 6, 7}},
    4.699511},
  { // case 3
    10, 5,
    {0.191549, 0.358804, 0.980483, 0.934215, 0.504774, 0.29636, 0.523684,
     0.251414, 0.306434, 0.703553},
    {3, 0, 2, 4, 2, 0, 3, 0, 3, 0, 1, 1, 3, 2, 2, 4, 2, 0, 2, 2},
    {{0, 1, 3, 4, 5, 6}, {7}, {8}, {8, 9}, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9},
     {0, 1, 3, 4, 5}, {7}, {2, 5, 6, 9}, {5, 6, 8, 9}, {1, 4, 9},
     {0, 1, 2, 3, 4, 6, 7, 8, 9}, {0, 1, 2, 3, 4, 5, 6, 7, 9},
     {0, 1, 2, 3, 4, 6, 7, 8, 9}, {0, 1, 4, 5, 6, 8, 9},
     {0, 1, 3, 4, 5, 6, 7, 8, 9}, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9},
     {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, {0, 1, 3, 4, 6, 7, 8},
     {1, 2, 3, 5, 6, 7, 8, 9}, {0, 6, 8, 9}},
    5.051270000000001},
  { // case 4
    6, 6,
    {0.848404, 0.606172, 0.504813, 0.870703, 0.986573, 0.251513},
    {2, 1, 1, 4, 2, 5},
    {{2}, {0}, {0, 1, 2, 3, 4, 5}, {2, 3, 5}, {0, 1, 2, 3, 4, 5},
     {0, 1, 2, 3, 4, 5}},
    4.068178},
  { // case 5
    12, 3,
    {0.608252, 0.25613, 0.488801, 0.932381, 0.989931, 0.954341, 0.332848,
     0.353185, 0.444016, 0.272567, 0.366435, 0.488894},
    {2, 2, 2, 1, 0, 2, 2, 2, 2, 1, 1, 2, 2, 2, 0, 1, 1, 2, 2, 1, 1, 0, 1,
     1, 1, 0, 2, 1, 0, 0},
    {{1, 4, 5, 6, 7, 8, 9, 11}, {0, 2, 5, 7, 8}, {0, 2, 3, 4, 6, 11},
     {0, 1, 4, 5, 7, 11}, {3, 7}, {0, 5, 6, 7, 10},
     {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11},
     {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, {0, 1, 2, 3, 4, 7, 8, 10},
     {0, 2, 5, 7, 8, 10, 11}, {2, 4, 7, 8},
     {1, 2, 3, 4, 5, 6, 7, 9, 10, 11}, {0, 1, 4, 6, 7, 9, 10}, {1, 5},
     {0, 1, 2, 3, 4, 5, 6, 7, 9, 10, 11}, {3, 9},
     {0, 2, 3, 4, 5, 6, 8, 9, 11}, {0, 1, 3, 4, 5, 6, 7, 9, 10, 11},
     {1, 5, 8, 9, 11}, {8}, {0, 1, 3, 7, 8, 9, 11},
     {1, 2, 3, 6, 9, 10, 11}, {0, 1, 2, 5, 6, 7, 8, 9, 10, 11},
     {0, 1, 2, 4, 8, 10}, {0, 4, 5, 10}, {4}, {1, 2, 5, 9}, {0, 1, 2, 4, 7},
     {0, 1, 2, 3, 5, 6, 7, 8, 9, 10, 11}, {2, 3, 4, 5, 7, 8, 9, 11}},
    6.487781000000001},
  { // case 6
    4, 2,
    {0.302918, 0.144741, 0.397867, 0.150656},
    {1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0},
    {{0, 1, 2, 3}, {0, 2}, {0, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 3},
     {0, 1, 2, 3}, {0}, {1, 2}, {1}, {1}, {2}, {2, 3}, {0, 1, 2, 3},
     {0, 1, 2, 3}, {0, 1, 3}},
    0.996182},
};

CoverageLpProblem to_problem(const OracleCase& oc) {
  CoverageLpProblem p;
  p.num_cov_rows = oc.num_cov_rows;
  p.num_groups = oc.num_groups;
  p.gain = oc.gain;
  p.group_of = oc.group_of;
  p.covers = oc.covers;
  return p;
}

void check_feasible(const CoverageLpProblem& p, const CoverageLpSolution& s) {
  for (double x : s.x) CHECK(x >= -1e-9);
  for (double c : s.c) {
    CHECK(c >= -1e-9);
    CHECK(c <= 1.0 + 1e-9);
  }
  std::vector<double> group_mass(p.num_groups, 0.0);
  std::vector<double> row_mass(p.num_cov_rows, 0.0);
  for (int x = 0; x < p.num_vars(); ++x) {
    group_mass[p.group_of[x]] += s.x[x];
    for (int r : p.covers[x]) row_mass[r] += s.x[x];
  }
  for (double g : group_mass) CHECK(g <= 1.0 + 1e-8);
  for (int r = 0; r < p.num_cov_rows; ++r) {
    CHECK(s.c[r] <= row_mass[r] + 1e-8);
  }
  double obj = 0.0;
  for (int r = 0; r < p.num_cov_rows; ++r) obj += p.gain[r] * s.c[r];
  CHECK(obj == doctest::Approx(s.objective).epsilon(1e-9));
}

}  // namespace

TEST_CASE("matches an external solver on frozen cases") {
  for (std::size_t idx = 0; idx < kOracleCases.size(); ++idx) {
    CAPTURE(idx);
    const CoverageLpProblem p = to_problem(kOracleCases[idx]);
    CoverageSimplex solver(p);
    const CoverageLpSolution s = solver.Solve();
    CHECK(s.objective ==
          doctest::Approx(kOracleCases[idx].objective).epsilon(1e-7));
    check_feasible(p, s);
  }
}

TEST_CASE("trivial problems") {
  // One variable covering one row: optimum picks it fully.
  CoverageLpProblem p;
  p.num_cov_rows = 1;
  p.num_groups = 1;
  p.gain = {0.5};
  p.group_of = {0};
  p.covers = {{0}};
  CoverageSimplex solver(p);
  const CoverageLpSolution s = solver.Solve();
  CHECK(s.objective == doctest::Approx(0.5));
  CHECK(s.x[0] == doctest::Approx(1.0));
  CHECK(s.c[0] == doctest::Approx(1.0));
}

TEST_CASE("zero gains yield zero objective") {
  CoverageLpProblem p;
  p.num_cov_rows = 2;
  p.num_groups = 1;
  p.gain = {0.0, 0.0};
  p.group_of = {0, 0};
  p.covers = {{0}, {1}};
  CoverageSimplex solver(p);
  CHECK(solver.Solve().objective == doctest::Approx(0.0));
}

TEST_CASE("two variables competing for one group") {
  // Both X share a group; the higher-gain row wins the shared unit.
  CoverageLpProblem p;
  p.num_cov_rows = 2;
  p.num_groups = 1;
  p.gain = {0.3, 0.8};
  p.group_of = {0, 0};
  p.covers = {{0}, {1}};
  CoverageSimplex solver(p);
  const CoverageLpSolution s = solver.Solve();
  CHECK(s.objective == doctest::Approx(0.8));
  CHECK(s.x[1] == doctest::Approx(1.0));
}

TEST_CASE("deterministic across repeated solves") {
  const CoverageLpProblem p = to_problem(kOracleCases[3]);
  CoverageSimplex a(p), b(p);
  const CoverageLpSolution sa = a.Solve();
  const CoverageLpSolution sb = b.Solve();
  CHECK(sa.iterations == sb.iterations);
  CHECK(sa.x == sb.x);
  CHECK(sa.c == sb.c);
}

TEST_CASE("problem validation") {
  CoverageLpProblem p;
  p.num_cov_rows = 1;
  p.num_groups = 1;
  p.gain = {0.5};
  p.group_of = {0};
  p.covers = {{1}};  // out of range row
  CHECK_THROWS_AS(p.validate(), InvalidInputError);
  p.covers = {{0}};
  p.group_of = {2};  // out of range group
  CHECK_THROWS_AS(p.validate(), InvalidInputError);
  p.group_of = {0};
  p.gain = {-0.5};
  CHECK_THROWS_AS(p.validate(), InvalidInputError);
}

TEST_CASE("LP text dump") {
  const CoverageLpProblem p = to_problem(kOracleCases[0]);
  const std::string path = "lp_dump_test.lp";
  WriteLpFormat(p, path);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("Bounds") != std::string::npos);
  std::remove(path.c_str());
}
