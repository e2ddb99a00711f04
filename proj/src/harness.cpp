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

#include "covauction/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "covauction/baselines.hpp"
#include "covauction/errors.hpp"
#include "covauction/lp.hpp"
#include "covauction/mechanism.hpp"
#include "covauction/rng.hpp"
#include "covauction/rounding.hpp"

namespace covauction {

namespace {

using nlohmann::json;

const double kFlattenRatio = 1.0 - 1.0 / std::exp(1.0);
const double kNan = std::numeric_limits<double>::quiet_NaN();

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// Median wall clock of `repeats` runs of `fn`.
template <typename Fn>
double time_median_ms(int repeats, Fn&& fn) {
  std::vector<double> samples;
  samples.reserve(repeats);
  for (int rep = 0; rep < repeats; ++rep) {
    const double start = now_ms();
    fn();
    samples.push_back(now_ms() - start);
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

}  // namespace

std::vector<double> TypeGridSpec::values() const {
  if (count <= 0 || spacing <= 0.0 || start < 0.0) {
    throw InvalidInputError("type grid needs count > 0, spacing > 0, start >= 0");
  }
  std::vector<double> out(count);
  for (int t = 0; t < count; ++t) out[t] = start + t * spacing;
  return out;
}

void SyntheticConfig::validate() const {
  if (num_bidders <= 0 || num_points <= 0 || dim <= 0 || num_classes <= 0) {
    throw InvalidInputError("synthetic config dimensions must be positive");
  }
  if (!(coord_low < coord_high)) {
    throw InvalidInputError("coordinate range must be non-empty");
  }
  types.values();  // validates the grid
}

std::vector<std::vector<double>> derive_radii(const Database& db,
                                              const std::vector<double>& alpha,
                                              std::uint64_t sample_seed) {
  db.validate();
  for (double a : alpha) {
    if (a < 0.0 || a > 1.0 || !std::isfinite(a)) {
      throw InvalidInputError("radius coefficients must lie in [0, 1]");
    }
  }
  const int n = db.num_points();
  // Distinct labels in order of appearance; an unlabeled database is one
  // class.
  std::map<int, std::vector<int>> classes;
  if (db.class_labels.empty()) {
    std::vector<int>& all = classes[0];
    for (int j = 0; j < n; ++j) all.push_back(j);
  } else {
    for (int j = 0; j < n; ++j) classes[db.class_labels[j]].push_back(j);
  }

  std::uint64_t counter = 0;
  std::map<int, double> base_radius;
  for (const auto& [label, members] : classes) {
    if (members.empty()) {
      throw InvalidInputError("class " + std::to_string(label) + " is empty");
    }
    // Up to 100 members sampled without replacement (partial Fisher-Yates).
    std::vector<int> pool = members;
    const int take = std::min<int>(100, static_cast<int>(pool.size()));
    for (int s = 0; s < take; ++s) {
      const double u = rng::Uniform(sample_seed, rng::kRadiusSample, counter++);
      const int pick =
          s + static_cast<int>(u * static_cast<double>(pool.size() - s));
      std::swap(pool[s], pool[std::min<int>(pick, pool.size() - 1)]);
    }
    double total = 0.0;
    long pairs = 0;
    for (int a = 0; a < take; ++a) {
      for (int b = a + 1; b < take; ++b) {
        total += db.distance(pool[a], pool[b]);
        ++pairs;
      }
    }
    base_radius[label] = pairs > 0 ? total / pairs : 0.0;
  }

  std::vector<std::vector<double>> radii(alpha.size(),
                                         std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (int j = 0; j < n; ++j) {
      const int label = db.class_labels.empty() ? 0 : db.class_labels[j];
      radii[i][j] = alpha[i] * base_radius[label];
    }
  }
  return radii;
}

Instance generate_synthetic(const SyntheticConfig& config) {
  config.validate();
  const std::uint64_t seed = config.seed;
  const int m = config.num_bidders;
  const int n = config.num_points;
  const int d = config.dim;

  Instance inst;
  inst.type_set = config.types.values();
  inst.db.metric = Metric::kEuclidean;
  inst.db.points.assign(n, std::vector<double>(d));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < d; ++k) {
      const double u = rng::Uniform(seed, rng::kCoordinates,
                                    static_cast<std::uint64_t>(j) * d + k);
      inst.db.points[j][k] =
          config.coord_low + u * (config.coord_high - config.coord_low);
    }
  }
  inst.db.class_labels.resize(n);
  for (int j = 0; j < n; ++j) {
    const double u = rng::Uniform(seed, rng::kClassAssignment, j);
    inst.db.class_labels[j] =
        std::min(config.num_classes - 1,
                 static_cast<int>(u * config.num_classes));
  }

  std::vector<double> alpha(m);
  for (int i = 0; i < m; ++i) {
    alpha[i] = rng::Uniform(seed, rng::kRadiusCoefficient, i);
  }
  const std::vector<std::vector<double>> radii =
      derive_radii(inst.db, alpha, seed);

  inst.bidders.resize(m);
  const int K = config.types.count;
  for (int i = 0; i < m; ++i) {
    BidderProfile& b = inst.bidders[i];
    // One uniform draw per (bidder, class); all points of a class share it.
    std::vector<double> class_weight(config.num_classes);
    for (int c = 0; c < config.num_classes; ++c) {
      class_weight[c] = rng::Uniform(
          seed, rng::kWeightDraw,
          static_cast<std::uint64_t>(i) * config.num_classes + c);
    }
    std::vector<double> raw(n);
    for (int j = 0; j < n; ++j) raw[j] = class_weight[inst.db.class_labels[j]];
    b.weights = normalize_weights(raw);
    b.radii = radii[i];
    const double u = rng::Uniform(seed, rng::kTypeDraw, i);
    b.true_type = inst.type_set[std::min(K - 1, static_cast<int>(u * K))];
  }
  inst.bids.resize(m);
  for (int i = 0; i < m; ++i) inst.bids[i] = inst.bidders[i].true_type;
  inst.validate();
  return inst;
}

Database load_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open embeddings file: " + path);
  Database db;
  std::map<std::string, int> label_ids;
  std::string line;
  int row = 0;
  int expected_cols = -1;
  bool has_class_column = false;
  while (std::getline(in, line)) {
    ++row;
    // Normalize separators, then split on whitespace.
    for (char& ch : line) {
      if (ch == ',' || ch == '\t' || ch == '\r') ch = ' ';
    }
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (fields >> tok) tokens.push_back(tok);
    if (tokens.empty()) continue;

    if (expected_cols < 0) {
      expected_cols = static_cast<int>(tokens.size());
      char* end = nullptr;
      std::strtod(tokens.back().c_str(), &end);
      has_class_column = (end == tokens.back().c_str() || *end != '\0');
      if (has_class_column && expected_cols == 1) {
        throw InvalidInputError("row 1 has no numeric columns");
      }
    }
    if (static_cast<int>(tokens.size()) != expected_cols) {
      throw InvalidInputError(
          "row " + std::to_string(row) + " has " +
          std::to_string(tokens.size()) + " columns, expected " +
          std::to_string(expected_cols));
    }
    const int numeric_cols = expected_cols - (has_class_column ? 1 : 0);
    std::vector<double> point(numeric_cols);
    for (int col = 0; col < numeric_cols; ++col) {
      char* end = nullptr;
      point[col] = std::strtod(tokens[col].c_str(), &end);
      if (end == tokens[col].c_str() || *end != '\0' ||
          !std::isfinite(point[col])) {
        throw InvalidInputError("row " + std::to_string(row) + ", column " +
                                std::to_string(col + 1) +
                                ": not a finite number: '" + tokens[col] + "'");
      }
    }
    db.points.push_back(std::move(point));
    if (has_class_column) {
      const std::string& label = tokens.back();
      auto [it, inserted] =
          label_ids.emplace(label, static_cast<int>(label_ids.size()));
      db.class_labels.push_back(it->second);
    }
  }
  if (db.points.empty()) {
    throw InvalidInputError("embeddings file has no data rows: " + path);
  }
  db.validate();
  return db;
}

InstanceFile load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open instance file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InvalidInputError("instance file " + path + ": " + e.what());
  }
  try {
    InstanceFile out;
    Instance& inst = out.instance;
    const std::string metric = doc.value("metric", "euclidean");
    if (metric == "euclidean") {
      inst.db.metric = Metric::kEuclidean;
    } else if (metric == "cosine") {
      inst.db.metric = Metric::kCosine;
    } else {
      throw InvalidInputError("unknown metric: " + metric);
    }
    inst.db.points = doc.at("points").get<std::vector<std::vector<double>>>();
    if (doc.contains("class_labels")) {
      inst.db.class_labels = doc["class_labels"].get<std::vector<int>>();
    }
    inst.type_set = doc.at("type_set").get<std::vector<double>>();
    bool any_prior = false;
    for (const json& b : doc.at("bidders")) {
      BidderProfile profile;
      profile.weights = b.at("weights").get<std::vector<double>>();
      profile.radii = b.at("radii").get<std::vector<double>>();
      profile.true_type = b.at("true_type").get<double>();
      inst.bidders.push_back(std::move(profile));
      TypeDistribution dist;
      if (b.contains("type_pmf")) {
        dist.pmf = b["type_pmf"].get<std::vector<double>>();
        any_prior = true;
      }
      out.priors.push_back(std::move(dist));
    }
    if (any_prior) {
      for (std::size_t i = 0; i < out.priors.size(); ++i) {
        if (out.priors[i].pmf.empty()) {
          throw InvalidInputError("bidder " + std::to_string(i) +
                                  " is missing type_pmf while others have it");
        }
        out.priors[i].validate(inst.type_set.size());
      }
    } else {
      out.priors.clear();
    }
    if (doc.contains("bids")) {
      inst.bids = doc["bids"].get<std::vector<double>>();
    } else {
      for (const BidderProfile& b : inst.bidders) {
        inst.bids.push_back(b.true_type);
      }
    }
    out.seed = doc.value("seed", std::uint64_t{0});
    inst.validate();
    return out;
  } catch (const json::exception& e) {
    throw InvalidInputError("instance file " + path + ": " + e.what());
  }
}

void save_instance_file(const InstanceFile& file, const std::string& path) {
  const Instance& inst = file.instance;
  json doc;
  doc["metric"] = inst.db.metric == Metric::kEuclidean ? "euclidean" : "cosine";
  doc["points"] = inst.db.points;
  if (!inst.db.class_labels.empty()) {
    doc["class_labels"] = inst.db.class_labels;
  }
  doc["type_set"] = inst.type_set;
  json bidders = json::array();
  for (std::size_t i = 0; i < inst.bidders.size(); ++i) {
    json b;
    b["weights"] = inst.bidders[i].weights;
    b["radii"] = inst.bidders[i].radii;
    b["true_type"] = inst.bidders[i].true_type;
    if (!file.priors.empty()) b["type_pmf"] = file.priors[i].pmf;
    bidders.push_back(std::move(b));
  }
  doc["bidders"] = std::move(bidders);
  doc["bids"] = inst.bids;
  doc["seed"] = file.seed;
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write instance file: " + path);
  out << doc.dump(2) << "\n";
}

namespace {

// One shared Monte Carlo pass estimates both welfare variants: each trial
// rounds once and reuses the draw, with the flattening keep-draws applied
// on top. Estimates are unbiased for both.
struct McEstimate {
  double rounded_welfare = 0.0;
  double flattened_welfare = 0.0;
};

McEstimate run_mc(const Instance& inst, const NeighborhoodIndex& nbr,
                  const FractionalSolution& sol, const std::vector<double>& rho,
                  int trials, std::uint64_t instance_seed) {
  const int m = inst.num_bidders();
  const int n = inst.num_points();
  // Per-point cumulative assignment mass, owner = first prefix above u.
  std::vector<double> cum(static_cast<std::size_t>(n) * m);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
      acc += sol.x_at(i, j);
      cum[static_cast<std::size_t>(j) * m + i] = acc;
    }
  }
  std::vector<int> owner(n);
  std::vector<char> owned(static_cast<std::size_t>(m) * n);
  McEstimate est;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t seed =
        rng::DeriveSeed(instance_seed, rng::kTrialSeed, trial);
    std::fill(owned.begin(), owned.end(), 0);
    for (int j = 0; j < n; ++j) {
      const double u = rng::Uniform(seed, rng::kPointAssignment + j, 0);
      owner[j] = kUnassignedPoint;
      const double* c = &cum[static_cast<std::size_t>(j) * m];
      for (int i = 0; i < m; ++i) {
        if (u < c[i]) {
          owner[j] = i;
          owned[static_cast<std::size_t>(i) * n + j] = 1;
          break;
        }
      }
    }
    double rounded = 0.0, flattened = 0.0;
    for (int i = 0; i < m; ++i) {
      double cov = 0.0;
      const char* mine = &owned[static_cast<std::size_t>(i) * n];
      for (int j = 0; j < n; ++j) {
        for (int jp : nbr.neighbors[i][j]) {
          if (mine[jp]) {
            cov += inst.bidders[i].weights[j];
            break;
          }
        }
      }
      const double contribution = inst.bids[i] * cov;
      rounded += contribution;
      if (rng::Uniform(seed, rng::kBurnDraw + i, 0) < rho[i]) {
        flattened += contribution;
      }
    }
    est.rounded_welfare += rounded;
    est.flattened_welfare += flattened;
  }
  if (trials > 0) {
    est.rounded_welfare /= trials;
    est.flattened_welfare /= trials;
  }
  return est;
}

json aggregate_json(const Aggregate& agg) {
  return json{{"mean", agg.mean}, {"stddev", agg.stddev}, {"count", agg.count}};
}

Aggregate aggregate_over(const std::vector<InstanceResult>& results,
                         double InstanceResult::* field) {
  Aggregate agg;
  double sum = 0.0;
  for (const InstanceResult& r : results) {
    const double v = r.*field;
    if (std::isnan(v)) continue;
    sum += v;
    ++agg.count;
  }
  if (agg.count == 0) return agg;
  agg.mean = sum / agg.count;
  double ss = 0.0;
  for (const InstanceResult& r : results) {
    const double v = r.*field;
    if (std::isnan(v)) continue;
    ss += (v - agg.mean) * (v - agg.mean);
  }
  agg.stddev = agg.count > 1 ? std::sqrt(ss / (agg.count - 1)) : 0.0;
  return agg;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.base.validate();
  if (config.num_instances <= 0) {
    throw InvalidInputError("experiment needs at least one instance");
  }
  if (config.trials < 0 || config.timing_repeats <= 0) {
    throw InvalidInputError("invalid trial or timing repeat count");
  }
  ExperimentReport report;
  report.config = config;

  for (int idx = 0; idx < config.num_instances; ++idx) {
    SyntheticConfig sub = config.base;
    sub.seed = rng::DeriveSeed(config.base.seed, rng::kInstanceSeed, idx);
    const Instance inst = generate_synthetic(sub);
    const NeighborhoodIndex nbr = build_neighborhoods(inst.db, inst.bidders);

    InstanceResult res;
    res.seed = sub.seed;

    FractionalSolution sol;
    res.lp_time_ms = time_median_ms(config.timing_repeats, [&] {
      sol = solve_welfare_lp(inst, nbr);
    });
    res.lp_objective = sol.objective;
    res.lp_iterations = sol.iterations;

    double rounded = 0.0;
    for (int i = 0; i < inst.num_bidders(); ++i) {
      rounded +=
          inst.bids[i] * expected_bidder_coverage(inst, sol, nbr, i);
    }
    res.rounded_expected = rounded;
    res.flattened_expected = kFlattenRatio * sol.objective;

    Allocation greedy;
    res.greedy_time_ms = time_median_ms(config.timing_repeats, [&] {
      greedy = greedy_allocate(inst, nbr);
    });
    res.greedy_welfare =
        welfare(inst, nbr, std::span<const int>(greedy.assignment));

    const bool zero = sol.objective <= 0.0;
    if (zero) ++report.zero_objective_instances;
    res.rounded_ratio = zero ? kNan : res.rounded_expected / sol.objective;
    res.flattened_ratio = zero ? kNan : kFlattenRatio;
    res.greedy_ratio = zero ? kNan : res.greedy_welfare / sol.objective;

    res.rounded_mc_ratio = kNan;
    res.flattened_mc_ratio = kNan;
    if (config.trials > 0 && !zero) {
      const std::vector<double> rho = keep_probabilities(inst, sol, nbr);
      const double start = now_ms();
      const McEstimate mc =
          run_mc(inst, nbr, sol, rho, config.trials, sub.seed);
      res.mc_time_ms = now_ms() - start;
      res.rounded_mc_ratio = mc.rounded_welfare / sol.objective;
      res.flattened_mc_ratio = mc.flattened_welfare / sol.objective;
    }
    report.instances.push_back(std::move(res));
  }

  report.rounded_ratio =
      aggregate_over(report.instances, &InstanceResult::rounded_ratio);
  report.flattened_ratio =
      aggregate_over(report.instances, &InstanceResult::flattened_ratio);
  report.greedy_ratio =
      aggregate_over(report.instances, &InstanceResult::greedy_ratio);
  report.rounded_mc_ratio =
      aggregate_over(report.instances, &InstanceResult::rounded_mc_ratio);
  report.flattened_mc_ratio =
      aggregate_over(report.instances, &InstanceResult::flattened_mc_ratio);
  return report;
}

std::string ExperimentReport::to_json() const {
  json doc;
  doc["config"] = {
      {"num_bidders", config.base.num_bidders},
      {"num_points", config.base.num_points},
      {"dim", config.base.dim},
      {"num_classes", config.base.num_classes},
      {"type_count", config.base.types.count},
      {"type_spacing", config.base.types.spacing},
      {"type_start", config.base.types.start},
      {"coord_low", config.base.coord_low},
      {"coord_high", config.base.coord_high},
      {"seed", config.base.seed},
      {"num_instances", config.num_instances},
      {"trials", config.trials},
      {"timing_repeats", config.timing_repeats},
  };
  json rows = json::array();
  for (const InstanceResult& r : instances) {
    rows.push_back({
        {"seed", r.seed},
        {"lp_objective", r.lp_objective},
        {"lp_iterations", r.lp_iterations},
        {"rounded_expected", r.rounded_expected},
        {"flattened_expected", r.flattened_expected},
        {"greedy_welfare", r.greedy_welfare},
        {"rounded_ratio", r.rounded_ratio},
        {"flattened_ratio", r.flattened_ratio},
        {"greedy_ratio", r.greedy_ratio},
        {"rounded_mc_ratio", r.rounded_mc_ratio},
        {"flattened_mc_ratio", r.flattened_mc_ratio},
        {"lp_time_ms", r.lp_time_ms},
        {"greedy_time_ms", r.greedy_time_ms},
        {"mc_time_ms", r.mc_time_ms},
    });
  }
  doc["instances"] = std::move(rows);
  doc["aggregate"] = {
      {"rounded_ratio", aggregate_json(rounded_ratio)},
      {"flattened_ratio", aggregate_json(flattened_ratio)},
      {"greedy_ratio", aggregate_json(greedy_ratio)},
      {"rounded_mc_ratio", aggregate_json(rounded_mc_ratio)},
      {"flattened_mc_ratio", aggregate_json(flattened_mc_ratio)},
      {"zero_objective_instances", zero_objective_instances},
  };
  return doc.dump(2);
}

}  // namespace covauction
