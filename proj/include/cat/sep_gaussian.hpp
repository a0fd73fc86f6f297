#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cat/gaussian_mean.hpp"

namespace cat {

// Truncated likelihood-ratio halfspace {Z : sum_j w_j Z_j + b >= 0} over the
// first `truncation` coordinates. A degenerate halfspace (all-zero weights)
// contains everything, matching the non-strict inequality.
struct GaussianHalfspace {
  std::vector<double> weights;
  double offset = 0.0;
  std::uint32_t truncation = 1;
  bool degenerate = false;

  bool contains(std::span<const double> z) const;
  double weight_norm() const;
};

// J = max(1, floor(c * eps^{-1/s})).
std::uint32_t truncation_level(double eps, double s, double c);

// w_j = 2 (thetaX_j - thetaY_j), b = -sum_j w_j (thetaX_j + thetaY_j)/2.
GaussianHalfspace gaussian_sep_set(std::span<const double> theta_hat_x,
                                   std::span<const double> theta_hat_y,
                                   std::uint32_t J);

// Exact mass of the halfspace under the product normal with mean theta:
// Phi((w.theta + b)/|w|), the linear statistic being Gaussian. Returns 1 for
// a degenerate halfspace.
double halfspace_mass(const GaussianMean& theta, const GaussianHalfspace& hs);
double halfspace_mass(std::span<const double> theta, const GaussianHalfspace& hs);

// Standard normal cdf via erfc; relative error below 1e-12 for |x| <= 8.
double normal_cdf(double x);

}  // namespace cat
