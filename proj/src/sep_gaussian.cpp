#include "cat/sep_gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace cat {

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

bool GaussianHalfspace::contains(std::span<const double> z) const {
  if (degenerate) return true;
  if (z.size() < weights.size())
    throw std::invalid_argument("halfspace: observation shorter than truncation");
  double t = offset;
  for (std::size_t j = 0; j < weights.size(); ++j) t += weights[j] * z[j];
  return t >= 0.0;
}

double GaussianHalfspace::weight_norm() const {
  double s = 0.0;
  for (double w : weights) s += w * w;
  return std::sqrt(s);
}

std::uint32_t truncation_level(double eps, double s, double c) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("truncation_level: eps must lie in (0,1)");
  if (!(s > 0.0) || !(c > 0.0))
    throw std::invalid_argument("truncation_level: s and c must be > 0");
  double j = std::floor(c * std::pow(eps, -1.0 / s));
  return j < 1.0 ? 1u : static_cast<std::uint32_t>(j);
}

GaussianHalfspace gaussian_sep_set(std::span<const double> theta_hat_x,
                                   std::span<const double> theta_hat_y,
                                   std::uint32_t J) {
  if (J < 1) throw std::invalid_argument("gaussian_sep_set: J must be >= 1");
  if (theta_hat_x.size() < J || theta_hat_y.size() < J)
    throw std::invalid_argument("gaussian_sep_set: mean estimates shorter than J");
  GaussianHalfspace hs;
  hs.truncation = J;
  hs.weights.resize(J);
  double b = 0.0;
  bool all_zero = true;
  for (std::uint32_t j = 0; j < J; ++j) {
    double w = 2.0 * (theta_hat_x[j] - theta_hat_y[j]);
    hs.weights[j] = w;
    b -= w * (theta_hat_x[j] + theta_hat_y[j]) / 2.0;
    if (w != 0.0) all_zero = false;
  }
  hs.offset = b;
  hs.degenerate = all_zero;
  return hs;
}

double halfspace_mass(std::span<const double> theta, const GaussianHalfspace& hs) {
  if (hs.degenerate) return 1.0;
  double mean = hs.offset;
  for (std::size_t j = 0; j < hs.weights.size(); ++j) {
    double th = j < theta.size() ? theta[j] : 0.0;
    mean += hs.weights[j] * th;
  }
  return normal_cdf(mean / hs.weight_norm());
}

double halfspace_mass(const GaussianMean& theta, const GaussianHalfspace& hs) {
  return halfspace_mass(std::span<const double>(theta.coeffs()), hs);
}

}  // namespace cat
