#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cat/pmf.hpp"

namespace cat {

enum class Direction { Greater, Less };

// P(Poisson(mu) > Poisson(lambda)) and P(equal), by truncated double
// summation. Both tails are cut where the remaining mass is below tol, so
// the absolute error is at most 2*tol.
struct PoissonOrder {
  double p_gt = 0.0;
  double p_eq = 0.0;
};
PoissonOrder poisson_compare(double mu, double lambda, double tol = 1e-13);

double poisson_log_pmf(double rate, std::uint64_t k);

// Exact E sep(S_dir) = sum_i (p_i - q_i) P(order of Poi(n p_i), Poi(n q_i)),
// grouping bins with identical (p_i, q_i) to evaluate each comparison once.
double expected_sep_directional(const DiscretePmf& p, const DiscretePmf& q,
                                double n, Direction dir, double tol = 1e-13);

// Exact E sep of the fair-coin tie-broken set:
// sum_i (p_i - q_i) (P_gt + P_eq/2).
double expected_sep_half(const DiscretePmf& p, const DiscretePmf& q, double n,
                         double tol = 1e-13);

// [P(X>Y) + P(X=Y)/2 - 1/2] / min((mu-lambda)/sqrt(lambda+1), 1) for
// mu > lambda >= 0; the ratio whose grid minimum certifies the Poisson
// stochastic-order lower bound.
double lemma_e_lower_ratio(double mu, double lambda, double tol = 1e-13);

// Randomized classifier over a finite alphabet: label 0 deterministically on
// hard_set, label 0 with probability boundary_prob on boundary_set, label 1
// elsewhere. Satisfies p(C=0) + q(C=0) = 1 by construction.
struct BalancedClassifier {
  std::vector<std::uint32_t> hard_set;
  std::vector<std::uint32_t> boundary_set;
  double boundary_prob = 0.0;

  double label0_mass(const DiscretePmf& p) const;
};

// Threshold sweep over the realized values of (p_i-q_i)/(p_i+q_i) producing a
// balanced classifier whose separation p(C=0) - q(C=0) is at least TV(p,q)/2.
BalancedClassifier balanced_classifier(const DiscretePmf& p, const DiscretePmf& q);

// Exact P(|mean(A) - mean(B)| > threshold) for A ~ Ber(p_mass)^n,
// B ~ Ber(q_mass)^n by full binomial enumeration; requires n <= 40.
double exact_cat_error(double p_mass, double q_mass, std::uint64_t n,
                       double threshold);

// sep(S) = p(S) - q(S) and tau(S) = min of the two Bernoulli variances.
double exact_sep(std::span<const std::uint32_t> members, const DiscretePmf& p,
                 const DiscretePmf& q);
double exact_tau(std::span<const std::uint32_t> members, const DiscretePmf& p,
                 const DiscretePmf& q);

}  // namespace cat
