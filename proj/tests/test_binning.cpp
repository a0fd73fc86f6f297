#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "cat/binning.hpp"
#include "cat/pmf.hpp"
#include "cat/rng.hpp"

using namespace cat;

TEST_CASE("choose_resolution arithmetic") {
  CHECK(choose_resolution(0.01, 1.0, 1.0, 1).r == 100);
  CHECK(choose_resolution(0.5, 2.0, 1.0, 1).r == 2);
  CHECK(choose_resolution(0.5, 1e9, 1.0, 1).r == 1);  // smoothness limit
  GridSpec g = choose_resolution(0.1, 1.0, 1.0, 2);
  CHECK(g.total_cells == 100);
  CHECK_THROWS_WITH_AS(choose_resolution(1e-6, 1.0, 1.0, 8),
                       doctest::Contains("budget"), std::invalid_argument);
}

TEST_CASE("grid binning") {
  GridSpec g = choose_resolution(0.25, 1.0, 1.0, 1);
  REQUIRE(g.r == 4);
  std::vector<double> pts{0.1, 0.6, 0.61, 0.99};
  CountVector c = grid_bin(pts, 4, g);
  CHECK(c.counts == std::vector<std::uint64_t>{1, 0, 2, 1});
  CHECK(c.total == 4);

  std::vector<double> boundary{1.0};
  CHECK(grid_bin(boundary, 1, g).counts[3] == 1);  // clamp into the last cell

  GridSpec g2;
  g2.r = 2;
  g2.d = 2;
  g2.total_cells = 4;
  std::vector<double> pt{0.7, 0.2};
  CHECK(cell_index(pt, g2) == 1);  // first axis fastest

  std::vector<double> bad{1.2};
  CHECK_THROWS_WITH_AS(grid_bin(bad, 1, g), doctest::Contains("coordinate"),
                       std::invalid_argument);
}

TEST_CASE("refining and re-aggregating recovers coarse counts") {
  GridSpec coarse;
  coarse.r = 5;
  coarse.d = 1;
  coarse.total_cells = 5;
  GridSpec fine;
  fine.r = 15;
  fine.d = 1;
  fine.total_cells = 15;
  Rng rng(RngState{50, 1});
  std::vector<double> pts(2000);
  for (double& x : pts) x = rng.next_double();
  CountVector cc = grid_bin(pts, pts.size(), coarse);
  CountVector cf = grid_bin(pts, pts.size(), fine);
  for (std::size_t i = 0; i < 5; ++i) {
    std::uint64_t agg = cf.counts[3 * i] + cf.counts[3 * i + 1] + cf.counts[3 * i + 2];
    CHECK(agg == cc.counts[i]);
  }
}

TEST_CASE("perturbed uniform density basics") {
  std::vector<int> signs{1, -1, 1};
  PerturbedUniformDensity f(3, 0.15, signs);
  CHECK(f.tv_from_uniform() == doctest::Approx(0.15).epsilon(1e-14));
  CHECK(f.cdf(0.0) == 0.0);
  CHECK(f.cdf(1.0) == 1.0);
  // cell edges are fixed points of the cdf
  for (int b = 0; b <= 3; ++b) {
    double x = static_cast<double>(b) / 3.0;
    CHECK(f.cdf(x) == doctest::Approx(x).epsilon(1e-12));
  }
  // pdf stays positive and the cdf increases
  double prev = 0.0;
  for (int i = 1; i <= 200; ++i) {
    double x = i / 200.0;
    CHECK(f.pdf(x) > 0.0);
    CHECK(f.cdf(x) >= prev);
    prev = f.cdf(x);
  }
  CHECK_THROWS_AS(PerturbedUniformDensity(3, 0.4, signs), std::invalid_argument);
}

TEST_CASE("inversion sampling matches exact cell masses") {
  std::vector<int> signs{1, -1, 1, -1};
  PerturbedUniformDensity f(4, 0.2, signs);
  GridSpec grid;
  grid.r = 8;
  grid.d = 1;
  grid.total_cells = 8;
  DiscretePmf exact = f.binned(grid);
  Rng rng(RngState{51, 2});
  const int n = 200000;
  std::vector<double> xs = f.sample_many(n, rng);
  CountVector counts = grid_bin(xs, xs.size(), grid);
  for (std::size_t c = 0; c < 8; ++c) {
    double freq = static_cast<double>(counts.counts[c]) / n;
    double se = std::sqrt(exact[c] * (1.0 - exact[c]) / n);
    CHECK(std::fabs(freq - exact[c]) < 5.0 * se);
  }
}

TEST_CASE("binning preserves the separation scale") {
  // binned TV stays a constant fraction of eps at the class resolution
  double min_ratio = 1e300;
  for (double eps : {0.05, 0.1, 0.2}) {
    GridSpec grid = choose_resolution(eps, 1.0, 1.0, 1);
    std::uint32_t bumps = std::max<std::uint32_t>(1, grid.r / 2);
    std::vector<int> signs(bumps);
    for (std::size_t b = 0; b < bumps; ++b) signs[b] = b % 2 ? -1 : 1;
    PerturbedUniformDensity f(bumps, eps, signs);
    DiscretePmf binned = f.binned(grid);
    DiscretePmf uniform = make_uniform(grid.total_cells);
    double ratio = tv_distance(binned, uniform) / eps;
    min_ratio = std::min(min_ratio, ratio);
  }
  MESSAGE("fitted binned-TV constant: ", min_ratio);
  CHECK(min_ratio >= 0.4);
}
