#include "cat/binning.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cat {

GridSpec choose_resolution(double eps, double beta, double c, std::uint32_t d) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("choose_resolution: eps must lie in (0,1)");
  if (!(beta > 0.0) || !(c > 0.0))
    throw std::invalid_argument("choose_resolution: beta and c must be > 0");
  if (d < 1) throw std::invalid_argument("choose_resolution: d must be >= 1");
  // relative slack before the ceiling so the infinite-smoothness limit
  // degenerates to a single cell instead of rounding 1 + 1e-9 up
  double v = c * std::pow(eps, -1.0 / beta);
  double r_real = std::ceil(v * (1.0 - 1e-9));
  std::uint32_t r = r_real < 1.0 ? 1u : static_cast<std::uint32_t>(r_real);
  // the cell index must fit a machine word
  double bits = static_cast<double>(d) * std::log2(static_cast<double>(r));
  if (bits > 62.0) {
    throw std::invalid_argument("choose_resolution: r^d = " + std::to_string(r) +
                                "^" + std::to_string(d) +
                                " exceeds the cell index budget");
  }
  GridSpec g;
  g.r = r;
  g.d = d;
  g.total_cells = 1;
  for (std::uint32_t a = 0; a < d; ++a) g.total_cells *= r;
  return g;
}

std::uint64_t cell_index(std::span<const double> point, const GridSpec& grid) {
  if (point.size() != grid.d)
    throw std::invalid_argument("cell_index: point dimension mismatch");
  std::uint64_t idx = 0;
  std::uint64_t stride = 1;
  for (std::uint32_t a = 0; a < grid.d; ++a) {
    double x = point[a];
    if (!(x >= 0.0 && x <= 1.0))
      throw std::invalid_argument("cell_index: coordinate " + std::to_string(a) +
                                  " outside [0,1]");
    std::uint64_t cell = static_cast<std::uint64_t>(x * grid.r);
    if (cell >= grid.r) cell = grid.r - 1;  // clamp x = 1 into the last cell
    idx += cell * stride;
    stride *= grid.r;
  }
  return idx;
}

std::vector<std::uint32_t> grid_cells(std::span<const double> points,
                                      std::size_t n_points,
                                      const GridSpec& grid) {
  if (points.size() != n_points * grid.d)
    throw std::invalid_argument("grid_cells: flat point array size mismatch");
  std::vector<std::uint32_t> cells(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    cells[i] = static_cast<std::uint32_t>(
        cell_index(points.subspan(i * grid.d, grid.d), grid));
  }
  return cells;
}

CountVector grid_bin(std::span<const double> points, std::size_t n_points,
                     const GridSpec& grid) {
  CountVector out;
  out.counts.resize(grid.total_cells, 0);
  for (std::size_t i = 0; i < n_points; ++i) {
    ++out.counts[cell_index(points.subspan(i * grid.d, grid.d), grid)];
  }
  out.total = n_points;
  out.poissonized = false;
  return out;
}

PerturbedUniformDensity::PerturbedUniformDensity(std::uint32_t bumps, double eps,
                                                 std::vector<int> signs)
    : bumps_(bumps), amplitude_(M_PI * eps), signs_(std::move(signs)) {
  if (bumps_ < 1)
    throw std::invalid_argument("PerturbedUniformDensity: need at least one bump");
  if (signs_.size() != bumps_)
    throw std::invalid_argument("PerturbedUniformDensity: need one sign per bump");
  if (!(eps >= 0.0) || amplitude_ >= 1.0)
    throw std::invalid_argument(
        "PerturbedUniformDensity: eps must lie in [0, 1/pi) to keep the density positive");
}

double PerturbedUniformDensity::tv_from_uniform() const { return amplitude_ / M_PI; }

double PerturbedUniformDensity::pdf(double x) const {
  if (x < 0.0 || x > 1.0) return 0.0;
  double u = x * bumps_;
  std::uint32_t b = static_cast<std::uint32_t>(u);
  if (b >= bumps_) b = bumps_ - 1;
  double local = u - b;
  double s = signs_[b] >= 0 ? 1.0 : -1.0;
  return 1.0 + amplitude_ * s * std::sin(2.0 * M_PI * local);
}

double PerturbedUniformDensity::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double u = x * bumps_;
  std::uint32_t b = static_cast<std::uint32_t>(u);
  if (b >= bumps_) b = bumps_ - 1;
  double local = u - b;
  double s = signs_[b] >= 0 ? 1.0 : -1.0;
  // every complete bump integrates to zero, so F matches x at cell edges
  return x + amplitude_ * s * (1.0 - std::cos(2.0 * M_PI * local)) /
                 (2.0 * M_PI * bumps_);
}

double PerturbedUniformDensity::sample(Rng& rng) const {
  double u = rng.next_double();
  // cell edges are fixed points of the cdf, so the target cell is known
  std::uint32_t b = static_cast<std::uint32_t>(u * bumps_);
  if (b >= bumps_) b = bumps_ - 1;
  double lo = static_cast<double>(b) / bumps_;
  double hi = static_cast<double>(b + 1) / bumps_;
  // safeguarded Newton on the strictly increasing cdf
  double x = std::min(std::max(u, lo), hi);
  for (int it = 0; it < 60; ++it) {
    double f = cdf(x) - u;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    double d = pdf(x);
    double step = f / d;
    double next = x - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) < 1e-15) return next;
    x = next;
  }
  return x;
}

std::vector<double> PerturbedUniformDensity::sample_many(std::size_t n,
                                                         Rng& rng) const {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = sample(rng);
  return xs;
}

DiscretePmf PerturbedUniformDensity::binned(const GridSpec& grid) const {
  if (grid.d != 1)
    throw std::invalid_argument("PerturbedUniformDensity::binned: 1-d only");
  std::vector<double> masses(grid.r);
  for (std::uint32_t c = 0; c < grid.r; ++c) {
    double lo = static_cast<double>(c) / grid.r;
    double hi = static_cast<double>(c + 1) / grid.r;
    masses[c] = cdf(hi) - cdf(lo);
  }
  // compensate rounding so the constructor's 1e-12 sum check is met
  double total = kahan_sum(masses);
  for (double& m : masses) m /= total;
  return DiscretePmf(std::move(masses));
}

}  // namespace cat
