#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cat/rng.hpp"

namespace cat {

// Dense row-major matrix; rows are observations.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const {
    return {data.data() + r * cols, cols};
  }
};

// Mean sequence of a unit-variance Gaussian product measure, truncated to
// finite length: coordinates beyond coeffs.size() are zero. Membership of
// the Sobolev ellipsoid sum_j j^{2s} theta_j^2 <= size_bound is checked at
// construction (1e-9 slack).
class GaussianMean {
 public:
  GaussianMean(std::vector<double> coeffs, double smoothness, double size_bound);

  const std::vector<double>& coeffs() const { return coeffs_; }
  double smoothness() const { return smoothness_; }
  double size_bound() const { return size_bound_; }
  std::size_t length() const { return coeffs_.size(); }

  double sobolev_norm_sq() const;
  double l2_norm_sq() const;

 private:
  std::vector<double> coeffs_;
  double smoothness_;
  double size_bound_;
};

// Signal with coordinates eta_j * c1 * eps^{(2s+1)/(2s)} on the first
// floor(c2 * eps^{-1/s}) coordinates, zero after.
GaussianMean make_sobolev_signal(double s, double c_g, double eps,
                                 std::span<const int> signs, double c1,
                                 double c2);

// n iid draws of the first L coordinates: row r, column j is
// theta_j + standard normal noise.
Matrix sample_gaussian_sequence(const GaussianMean& theta, std::size_t L,
                                std::size_t n, Rng& rng);

}  // namespace cat
