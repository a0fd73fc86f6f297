#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cat/binning.hpp"
#include "cat/engine.hpp"
#include "cat/gaussian_mean.hpp"
#include "cat/pmf.hpp"

namespace cat {

// Built-in instance families for the Monte Carlo experiments. The null /
// Y-side distribution comes second; the alternative / X-side first.
enum class InstanceFamily {
  PaninskiUniform,  // uniform vs paired +-2eps/k perturbation
  NegSep,           // the [3k] pair with negative strictly-greater separation
  HeavyHead,        // two heavy head bins plus an eps-perturbed light tail
  Sobolev,          // Gaussian sequence signal vs zero mean
  Bump,             // 1-d perturbed-uniform density vs uniform
};
std::string to_string(InstanceFamily f);
InstanceFamily family_from_string(const std::string& s);

struct DiscreteInstance {
  DiscretePmf p;  // alternative / X side
  DiscretePmf q;  // null / Y side
};
DiscreteInstance make_discrete_instance(InstanceFamily f, std::size_t k,
                                        double eps, std::uint64_t sign_seed);

struct ExperimentConfig {
  Problem problem = Problem::TS;
  DistClass dist_class = DistClass::Db;
  InstanceFamily family = InstanceFamily::PaninskiUniform;
  std::vector<std::uint32_t> k_grid = {100};
  std::vector<double> eps_grid = {0.2};
  std::vector<double> delta_grid = {0.05};
  std::vector<std::uint64_t> n_grid = {1000};
  std::vector<std::uint64_t> m_grid;  // LFHT only
  std::uint32_t trials = 1000;
  std::uint64_t base_seed = 1;
  std::string out_dir;
  TestConfig engine;  // constant overrides propagate into every pipeline run

  void validate() const;
};

struct CellSpec {
  std::uint32_t k = 0;
  double eps = 0.0;
  double delta = 0.0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
};

struct TrialReport {
  Problem problem;
  DistClass dist_class;
  InstanceFamily family;
  CellSpec cell;
  std::uint32_t trials = 0;
  double type1 = 0.0, type1_se = 0.0;
  double type2 = 0.0, type2_se = 0.0;
  // oracle |sep| and tau of the selected set, averaged over alternative runs
  double mean_sep = 0.0, mean_sep_se = 0.0;
  double mean_tau = 0.0, mean_tau_se = 0.0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;  // informational; never serialized to results.csv
};

TrialReport run_cell(const ExperimentConfig& cfg, const CellSpec& cell);
std::vector<TrialReport> run_trials(const ExperimentConfig& cfg);

struct ComplexityResult {
  std::uint32_t k = 0;
  double eps = 0.0;
  double delta = 0.0;
  std::uint64_t n_star = 0;
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  bool censored = false;
};

// Geometric bracket plus bisection for the smallest n whose error rates are
// both <= delta + 2 SE; assumes power is monotone in n. The bracket closes
// to n_hi / n_lo <= 1.3, and n_star = n_hi. Censored cells report the last
// failing n instead of an estimate.
ComplexityResult estimate_sample_complexity(const ExperimentConfig& cfg,
                                            CellSpec cell, std::uint64_t n_min,
                                            std::uint64_t n_max);

// results.csv (fixed column schema) plus meta.json with every constant and
// seed; writes are atomic.
void emit_report(const std::vector<TrialReport>& reports,
                 const ExperimentConfig& cfg, const std::string& out_dir);
void emit_curves(const std::vector<ComplexityResult>& results,
                 const std::string& path);

ExperimentConfig parse_config_file(const std::string& path);
void apply_config_kv(ExperimentConfig& cfg, const std::string& key,
                     const std::string& value);

// thread cap: CAT_THREADS when set, else hardware concurrency
unsigned harness_threads();

// standard normal quantile, used to scale Gaussian instances to a target
// total-variation separation
double normal_quantile(double p);

}  // namespace cat
