#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "cat/binning.hpp"
#include "cat/counts.hpp"
#include "cat/gaussian_mean.hpp"
#include "cat/pmf.hpp"
#include "cat/rng.hpp"
#include "cat/sep_discrete.hpp"
#include "cat/sep_gaussian.hpp"

namespace cat {

enum class Problem { GoF, TS, LFHT };
enum class DistClass { Db, D, Holder, Gauss };

std::string to_string(Problem p);
std::string to_string(DistClass c);
Problem problem_from_string(const std::string& s);
DistClass class_from_string(const std::string& s);

struct TestConfig {
  Problem problem = Problem::TS;
  DistClass dist_class = DistClass::Db;
  double eps = 0.1;
  double delta = 0.05;

  // every constant below is surfaced on the CLI and recorded in reports
  double threshold_const = 8.0;          // c in the Bernstein threshold
  std::optional<double> tau_bar;         // explicit size-bound override
  double tau_const = 4.0;                // tau_bar = min(1/4, tau_const n/k) for Db
  double c0 = 0.1;                       // bucketing scale constant
  double c1 = 0.05;                      // best-of-log-k acceptance constant
  double level_const = 4.0;              // Gaussian truncation J = floor(c eps^{-1/s})
  double res_const = 1.0;                // grid resolution r = ceil(c eps^{-1/beta})
  double smoothness = 1.0;               // s for the Gaussian class
  double beta = 1.0;                     // Holder smoothness
  std::uint32_t dim = 1;                 // Holder dimension
  double poissonize_frac = 0.9;          // Poissonized rate as a fraction of the train half
  double construct_frac = 0.6;           // thinning share for set construction vs holdout

  void validate() const;
};

enum class Verdict { AcceptH0, RejectH0, LabelX, LabelY };
std::string to_string(Verdict v);

struct SepSummary {
  std::string tag = "none";
  std::optional<DiscreteSepSet> discrete;
  std::optional<GaussianHalfspace> halfspace;
};

// Verdict rule: GoF/TS reject H0 iff |statistic| > threshold; LFHT labels X
// iff statistic <= threshold, with statistic = |T(Z,X)| - |T(Z,Y)| and
// threshold = 0.
struct TestOutcome {
  Verdict verdict = Verdict::AcceptH0;
  double statistic = 0.0;
  double threshold = 0.0;
  SepSummary sep;
};

// (1/|A|) sum 1{A_i in S} - (1/|B|) sum 1{B_j in S}; always in [-1, 1].
double cat_statistic(const DiscreteSepSet& s, std::span<const std::uint32_t> a,
                     std::span<const std::uint32_t> b);
double cat_statistic(const DiscreteSepSet& s, std::span<const std::uint32_t> a,
                     double exact_b_mass);
double cat_statistic(const GaussianHalfspace& s, const Matrix& a, const Matrix& b);
double cat_statistic(const GaussianHalfspace& s, const Matrix& a,
                     double exact_b_mass);

// sqrt(c tau_bar log(1/delta) / n) + c log(1/delta) / n.
double cat_threshold(double tau_bar, double n, double delta, double c);

// Discrete pipelines; samples are symbol vectors over {0,...,k-1} of size 2n
// (and 2m for the likelihood-free z sample), split internally into train and
// test halves.
TestOutcome run_two_sample_test(std::span<const std::uint32_t> x,
                                std::span<const std::uint32_t> y, std::size_t k,
                                const TestConfig& cfg, RngState rng);
TestOutcome run_gof_test(std::span<const std::uint32_t> x, const DiscretePmf& p0,
                         const TestConfig& cfg, RngState rng);
TestOutcome run_lfht_test(std::span<const std::uint32_t> x,
                          std::span<const std::uint32_t> y,
                          std::span<const std::uint32_t> z, std::size_t k,
                          const TestConfig& cfg, RngState rng);

// Gaussian sequence pipelines; rows are observations.
TestOutcome run_two_sample_test(const Matrix& x, const Matrix& y,
                                const TestConfig& cfg, RngState rng);
TestOutcome run_gof_test(const Matrix& x, const GaussianMean& theta0,
                         const TestConfig& cfg, RngState rng);
TestOutcome run_lfht_test(const Matrix& x, const Matrix& y, const Matrix& z,
                          const TestConfig& cfg, RngState rng);

// Smooth-density pipelines: bin the points at the class resolution and run
// the bounded-pmf discrete branch on the cells. Points are row-major with
// cfg.dim coordinates per observation.
TestOutcome run_two_sample_test_points(std::span<const double> x, std::size_t nx,
                                       std::span<const double> y, std::size_t ny,
                                       const TestConfig& cfg, RngState rng);
TestOutcome run_gof_test_points(std::span<const double> x, std::size_t nx,
                                const DiscretePmf& null_cells,
                                const TestConfig& cfg, RngState rng);
TestOutcome run_lfht_test_points(std::span<const double> x, std::size_t nx,
                                 std::span<const double> y, std::size_t ny,
                                 std::span<const double> z, std::size_t nz,
                                 const TestConfig& cfg, RngState rng);

}  // namespace cat
