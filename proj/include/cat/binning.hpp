#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cat/counts.hpp"
#include "cat/pmf.hpp"
#include "cat/rng.hpp"

namespace cat {

// Regular grid on [0,1]^d with r cells per axis, r^d cells total. Cell index
// is sum_axis floor(x_a * r) * r^axis (first axis fastest), with the floor
// clamped to r-1 at the right boundary.
struct GridSpec {
  std::uint32_t r = 1;
  std::uint32_t d = 1;
  std::uint64_t total_cells = 1;
};

// r = max(1, ceil(c * eps^{-1/beta})). Throws when r^d does not fit the cell
// index budget.
GridSpec choose_resolution(double eps, double beta, double c, std::uint32_t d);

std::uint64_t cell_index(std::span<const double> point, const GridSpec& grid);

// Bin n points (row-major, d coordinates each) into grid cells.
CountVector grid_bin(std::span<const double> points, std::size_t n_points,
                     const GridSpec& grid);
std::vector<std::uint32_t> grid_cells(std::span<const double> points,
                                      std::size_t n_points, const GridSpec& grid);

// One-dimensional perturbed-uniform density 1 + a * sum_b eta_b sin(2 pi
// (Bx - (b-1))) on [0,1]: mean-zero bumps on B equal cells, amplitude chosen
// so the total-variation distance to uniform is exactly eps = a/pi. The cdf
// is piecewise closed-form, so sampling is by inversion and binned cell
// masses are exact.
class PerturbedUniformDensity {
 public:
  PerturbedUniformDensity(std::uint32_t bumps, double eps,
                          std::vector<int> signs);

  double tv_from_uniform() const;
  double pdf(double x) const;
  double cdf(double x) const;
  double sample(Rng& rng) const;
  std::vector<double> sample_many(std::size_t n, Rng& rng) const;

  // Exact pmf of the density binned on a 1-d grid.
  DiscretePmf binned(const GridSpec& grid) const;

 private:
  std::uint32_t bumps_;
  double amplitude_;
  std::vector<int> signs_;
};

}  // namespace cat
