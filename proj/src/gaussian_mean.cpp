#include "cat/gaussian_mean.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cat {

GaussianMean::GaussianMean(std::vector<double> coeffs, double smoothness,
                           double size_bound)
    : coeffs_(std::move(coeffs)), smoothness_(smoothness), size_bound_(size_bound) {
  if (!(smoothness_ > 0.0))
    throw std::invalid_argument("GaussianMean: smoothness must be > 0");
  if (!(size_bound_ > 0.0))
    throw std::invalid_argument("GaussianMean: size bound must be > 0");
  double norm = sobolev_norm_sq();
  if (norm > size_bound_ + 1e-9) {
    throw std::invalid_argument(
        "GaussianMean: Sobolev ellipsoid violated, attained norm " +
        std::to_string(norm) + " > bound " + std::to_string(size_bound_));
  }
}

double GaussianMean::sobolev_norm_sq() const {
  double sum = 0.0, comp = 0.0;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    double w = std::pow(static_cast<double>(j + 1), 2.0 * smoothness_);
    double y = w * coeffs_[j] * coeffs_[j] - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double GaussianMean::l2_norm_sq() const {
  double sum = 0.0;
  for (double c : coeffs_) sum += c * c;
  return sum;
}

GaussianMean make_sobolev_signal(double s, double c_g, double eps,
                                 std::span<const int> signs, double c1,
                                 double c2) {
  if (!(s > 0.0)) throw std::invalid_argument("make_sobolev_signal: s must be > 0");
  if (!(eps > 0.0) || eps > 0.1)
    throw std::invalid_argument("make_sobolev_signal: eps must lie in (0, 1/10]");
  std::size_t len =
      static_cast<std::size_t>(std::floor(c2 * std::pow(eps, -1.0 / s)));
  if (signs.size() < len)
    throw std::invalid_argument("make_sobolev_signal: need at least " +
                                std::to_string(len) + " signs");
  double amp = c1 * std::pow(eps, (2.0 * s + 1.0) / (2.0 * s));
  std::vector<double> coeffs(len);
  for (std::size_t j = 0; j < len; ++j) coeffs[j] = (signs[j] >= 0 ? amp : -amp);
  return GaussianMean(std::move(coeffs), s, c_g);
}

Matrix sample_gaussian_sequence(const GaussianMean& theta, std::size_t L,
                                std::size_t n, Rng& rng) {
  if (L < theta.length())
    throw std::invalid_argument(
        "sample_gaussian_sequence: L smaller than the signal support");
  Matrix m(n, L);
  const auto& c = theta.coeffs();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < L; ++j) {
      double mean = j < c.size() ? c[j] : 0.0;
      m.at(r, j) = mean + rng.next_normal();
    }
  }
  return m;
}

}  // namespace cat
