#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cat/gaussian_mean.hpp"
#include "cat/pmf.hpp"
#include "cat/rng.hpp"

using namespace cat;

namespace {

DiscretePmf random_pmf(std::size_t k, Rng& rng) {
  std::vector<double> w(k);
  for (double& v : w) v = -std::log(1.0 - rng.next_double());
  double s = kahan_sum(w);
  for (double& v : w) v /= s;
  double s2 = kahan_sum(w);
  for (double& v : w) v /= s2;
  return DiscretePmf(std::move(w));
}

}  // namespace

TEST_CASE("make_uniform basics") {
  DiscretePmf u4 = make_uniform(4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(u4[i] == 0.25);
  DiscretePmf u1 = make_uniform(1);
  CHECK(u1[0] == 1.0);
  DiscretePmf u3 = make_uniform(3);
  CHECK(kahan_sum(u3.probs()) == 1.0);
  CHECK_THROWS_AS(make_uniform(0), std::invalid_argument);
}

TEST_CASE("paninski pair examples") {
  std::vector<int> s1{1};
  auto [p2, q2] = make_paninski_pair(2, 0.25, s1);
  CHECK(p2[0] == 0.5);
  CHECK(p2[1] == 0.5);
  CHECK(q2[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(q2[1] == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(tv_distance(p2, q2) == doctest::Approx(0.25).epsilon(1e-13));

  std::vector<int> s2{1, -1};
  auto [p4, q4] = make_paninski_pair(4, 0.1, s2);
  CHECK(q4[0] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(q4[1] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(q4[2] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(q4[3] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(tv_distance(p4, q4) == doctest::Approx(0.1).epsilon(1e-13));

  CHECK_THROWS_AS(make_paninski_pair(3, 0.1, s1), std::invalid_argument);
  CHECK_THROWS_AS(make_paninski_pair(2, 0.7, s1), std::invalid_argument);
  CHECK_THROWS_AS(make_paninski_pair(2, 0.0, s1), std::invalid_argument);
}

TEST_CASE("paninski pair TV and boundedness over random draws") {
  Rng rng(RngState{7, 1});
  for (int rep = 0; rep < 50; ++rep) {
    std::size_t k = 2 * (1 + rng.next_below(40));
    double eps = 0.01 + 0.49 * rng.next_double();
    std::vector<int> signs(k / 2);
    for (int& s : signs) s = rng.next_coin() ? 1 : -1;
    auto [p, q] = make_paninski_pair(k, eps, signs);
    CHECK(std::fabs(tv_distance(p, q) - eps) < 1e-12);
    CHECK(bounded_by(q, 2.0));
    CHECK(bounded_by(p, 2.0));
  }
}

TEST_CASE("negsep pair") {
  auto [p1, q1] = make_negsep_pair(1);
  CHECK(p1.probs() == std::vector<double>{0.5, 0.25, 0.25});
  CHECK(q1.probs() == std::vector<double>{1.0, 0.0, 0.0});

  auto [p2, q2] = make_negsep_pair(2);
  CHECK(p2.probs() ==
        std::vector<double>{0.25, 0.25, 0.125, 0.125, 0.125, 0.125});
  CHECK(q2.probs() == std::vector<double>{0.5, 0.5, 0.0, 0.0, 0.0, 0.0});

  for (std::size_t k : {1u, 3u, 17u, 50u}) {
    auto [p, q] = make_negsep_pair(k);
    CHECK(tv_distance(p, q) == doctest::Approx(0.5).epsilon(1e-13));
  }
}

TEST_CASE("tv_distance basics and metric properties") {
  DiscretePmf a(std::vector<double>{0.5, 0.5});
  DiscretePmf b(std::vector<double>{0.75, 0.25});
  DiscretePmf e1(std::vector<double>{1.0, 0.0});
  DiscretePmf e2(std::vector<double>{0.0, 1.0});
  CHECK(tv_distance(a, a) == 0.0);
  CHECK(tv_distance(e1, e2) == 1.0);
  CHECK(tv_distance(a, b) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(tv_distance(a, make_uniform(3)), std::invalid_argument);

  Rng rng(RngState{11, 2});
  for (int rep = 0; rep < 40; ++rep) {
    std::size_t k = 2 + rng.next_below(20);
    DiscretePmf p = random_pmf(k, rng);
    DiscretePmf q = random_pmf(k, rng);
    DiscretePmf r = random_pmf(k, rng);
    double pq = tv_distance(p, q);
    CHECK(pq == tv_distance(q, p));
    CHECK(pq >= 0.0);
    CHECK(pq <= 1.0);
    CHECK(pq <= tv_distance(p, r) + tv_distance(r, q) + 1e-14);
  }
}

TEST_CASE("pmf validation") {
  CHECK_THROWS_AS(DiscretePmf(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(DiscretePmf(std::vector<double>{0.5, -0.1, 0.6}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DiscretePmf(std::vector<double>{0.5, 0.4}),
                  std::invalid_argument);
}

TEST_CASE("sobolev signal") {
  std::vector<int> plus(10, 1);
  GaussianMean m = make_sobolev_signal(1.0, 1.0, 0.1, plus, 1.0, 1.0);
  REQUIRE(m.length() == 10);
  double amp = std::pow(0.1, 1.5);
  for (double c : m.coeffs()) CHECK(c == doctest::Approx(amp).epsilon(1e-14));

  std::vector<int> mixed(10);
  for (std::size_t j = 0; j < 10; ++j) mixed[j] = j % 2 ? 1 : -1;
  GaussianMean m2 = make_sobolev_signal(1.0, 1.0, 0.1, mixed, 1.0, 1.0);
  CHECK(m2.l2_norm_sq() == doctest::Approx(m.l2_norm_sq()).epsilon(1e-14));

  // |theta|^2 = c1^2 c2 eps^2 exactly at s = 1
  CHECK(m.l2_norm_sq() == doctest::Approx(0.1 * 0.1).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(make_sobolev_signal(1.0, 1e-4, 0.1, plus, 1.0, 1.0),
                       doctest::Contains("attained norm"), std::invalid_argument);
}

TEST_CASE("gaussian mean invariants") {
  CHECK_THROWS_AS(GaussianMean({10.0}, 1.0, 1.0), std::invalid_argument);
  GaussianMean zero({}, 1.0, 1.0);
  CHECK(zero.l2_norm_sq() == 0.0);
  CHECK(zero.sobolev_norm_sq() == 0.0);
}
