#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "cat/gaussian_mean.hpp"
#include "cat/harness.hpp"
#include "cat/rng.hpp"
#include "cat/sep_gaussian.hpp"

using namespace cat;

TEST_CASE("truncation level") {
  CHECK(truncation_level(0.1, 1.0, 1.0) == 10);
  CHECK(truncation_level(0.9, 2.0, 1.0) == 1);
  CHECK(truncation_level(0.05, 1.0, 1.0) == 2 * truncation_level(0.1, 1.0, 1.0));
  CHECK_THROWS_AS(truncation_level(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("gaussian_sep_set construction") {
  std::vector<double> ex{1.0};
  std::vector<double> mex{-1.0};
  GaussianHalfspace hs = gaussian_sep_set(ex, mex, 1);
  CHECK(hs.weights == std::vector<double>{4.0});
  CHECK(hs.offset == 0.0);
  CHECK_FALSE(hs.degenerate);
  CHECK(hs.contains(std::vector<double>{0.1}));
  CHECK(hs.contains(std::vector<double>{0.0}));
  CHECK_FALSE(hs.contains(std::vector<double>{-0.1}));

  GaussianHalfspace deg = gaussian_sep_set(ex, ex, 1);
  CHECK(deg.degenerate);
  CHECK(deg.contains(std::vector<double>{-100.0}));

  // the X estimate always lands inside its own halfspace
  Rng rng(RngState{40, 1});
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> tx(5), ty(5);
    for (int j = 0; j < 5; ++j) {
      tx[j] = 2.0 * rng.next_normal();
      ty[j] = 2.0 * rng.next_normal();
    }
    GaussianHalfspace h = gaussian_sep_set(tx, ty, 5);
    CHECK(h.contains(tx));
  }

  CHECK_THROWS_AS(gaussian_sep_set(ex, mex, 2), std::invalid_argument);
}

TEST_CASE("halfspace mass closed form") {
  std::vector<double> ex{1.0};
  std::vector<double> mex{-1.0};
  GaussianHalfspace hs = gaussian_sep_set(ex, mex, 1);

  GaussianMean mid({}, 1.0, 1.0);  // the midpoint of +-e1 is the origin
  CHECK(halfspace_mass(mid, hs) == doctest::Approx(0.5).epsilon(1e-14));

  GaussianMean at_x({1.0}, 1.0, 2.0);
  CHECK(halfspace_mass(at_x, hs) ==
        doctest::Approx(normal_cdf(1.0)).epsilon(1e-13));
  CHECK(normal_cdf(1.0) == doctest::Approx(0.841344746068543).epsilon(1e-12));

  GaussianHalfspace deg = gaussian_sep_set(ex, ex, 1);
  CHECK(halfspace_mass(at_x, deg) == 1.0);
}

TEST_CASE("halfspace mass agrees with simulation") {
  Rng rng(RngState{41, 2});
  for (int rep = 0; rep < 6; ++rep) {
    std::uint32_t J = 2 + static_cast<std::uint32_t>(rng.next_below(5));
    std::vector<double> tx(J), ty(J), theta_v(J);
    for (std::uint32_t j = 0; j < J; ++j) {
      tx[j] = rng.next_normal();
      ty[j] = rng.next_normal();
      theta_v[j] = 0.5 * rng.next_normal();
    }
    GaussianHalfspace hs = gaussian_sep_set(tx, ty, J);
    double norm_s = 0.0;
    for (std::uint32_t j = 0; j < J; ++j)
      norm_s += std::pow(j + 1.0, 2.0) * theta_v[j] * theta_v[j];
    GaussianMean theta(theta_v, 1.0, norm_s + 1.0);
    double exact = halfspace_mass(theta, hs);

    const int draws = 100000;
    int inside = 0;
    std::vector<double> z(J);
    for (int d = 0; d < draws; ++d) {
      for (std::uint32_t j = 0; j < J; ++j)
        z[j] = theta_v[j] + rng.next_normal();
      inside += hs.contains(z) ? 1 : 0;
    }
    double mc = static_cast<double>(inside) / draws;
    double se = std::sqrt(exact * (1.0 - exact) / draws) + 1e-9;
    CHECK(std::fabs(mc - exact) < 5.0 * se);
  }
}

TEST_CASE("truncation keeps half the separation at the default level") {
  // random ellipsoid members with |x - y| >= eps keep first-J distance >= eps/2
  Rng rng(RngState{42, 3});
  const double level_const = 4.0;
  for (double s : {0.5, 1.0, 2.0}) {
    for (double eps : {0.05, 0.1, 0.2}) {
      std::uint32_t J = truncation_level(eps, s, level_const);
      for (int rep = 0; rep < 30; ++rep) {
        // random difference vector on the ellipsoid boundary scaled to eps
        std::size_t len = J + 20;
        std::vector<double> tau(len);
        for (double& v : tau) v = rng.next_normal();
        // project to Sobolev norm 2 (norm of a difference of two members
        // with C_G = 1), then rescale the euclidean norm to eps
        double sob = 0.0;
        for (std::size_t j = 0; j < len; ++j)
          sob += std::pow(j + 1.0, 2.0 * s) * tau[j] * tau[j];
        double scale_s = 2.0 / std::sqrt(sob);
        for (double& v : tau) v *= scale_s;
        double l2 = 0.0;
        for (double v : tau) l2 += v * v;
        if (l2 < eps * eps) {
          // concentrate enough mass up front to reach separation eps while
          // staying inside the ellipsoid
          double deficit = eps * eps - l2;
          tau[0] = std::sqrt(tau[0] * tau[0] + deficit);
        } else {
          double scale = eps / std::sqrt(l2);
          for (double& v : tau) v *= scale;
        }
        double head = 0.0;
        for (std::uint32_t j = 0; j < J; ++j) head += tau[j] * tau[j];
        CHECK(std::sqrt(head) >= eps / 2.0 - 1e-12);
      }
    }
  }
}

TEST_CASE("normal quantile inverts the cdf") {
  for (double p : {0.001, 0.05, 0.3, 0.5, 0.8, 0.99, 0.9999}) {
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-9));
  }
}
