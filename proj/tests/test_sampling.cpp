#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cat/counts.hpp"
#include "cat/gaussian_mean.hpp"
#include "cat/pmf.hpp"
#include "cat/rng.hpp"

using namespace cat;

TEST_CASE("rng reproducibility contract") {
  Rng a(RngState{42, 7});
  Rng b(RngState{42, 7});
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(RngState{42, 8});
  bool differs = false;
  Rng a2(RngState{42, 7});
  for (int i = 0; i < 16; ++i) differs |= (a2.next_u64() != c.next_u64());
  CHECK(differs);
}

TEST_CASE("poisson sampler moments at both branches") {
  for (double rate : {3.0, 120.0}) {
    Rng rng(RngState{5, static_cast<std::uint64_t>(rate)});
    const int trials = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < trials; ++i) {
      double v = static_cast<double>(rng.next_poisson(rate));
      sum += v;
      sq += v * v;
    }
    double mean = sum / trials;
    double var = sq / trials - mean * mean;
    double se_mean = std::sqrt(rate / trials);
    CHECK(std::fabs(mean - rate) < 5.0 * se_mean);
    CHECK(std::fabs(var - rate) / rate < 0.05);
  }
}

TEST_CASE("normal sampler moments") {
  Rng rng(RngState{9, 1});
  const int trials = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < trials; ++i) {
    double v = rng.next_normal();
    sum += v;
    sq += v * v;
  }
  CHECK(std::fabs(sum / trials) < 5.0 / std::sqrt(trials));
  CHECK(std::fabs(sq / trials - 1.0) < 0.02);
}

TEST_CASE("poissonized sampling") {
  DiscretePmf p = make_uniform(10);
  Rng rng(RngState{1, 1});
  CountVector zero = sample_poissonized(p, 0.0, rng);
  CHECK(zero.total == 0);
  CHECK(zero.poissonized);

  Rng r1(RngState{2, 3});
  Rng r2(RngState{2, 3});
  DiscretePmf one = make_uniform(1);
  CHECK(sample_poissonized(one, 5.0, r1).total ==
        sample_poissonized(one, 5.0, r2).total);

  // n = 1e6, uniform over 10 bins: every count within 5 sigma of 1e5
  Rng r3(RngState{3, 1});
  CountVector big = sample_poissonized(p, 1e6, r3);
  for (std::uint64_t c : big.counts) {
    CHECK(std::fabs(static_cast<double>(c) - 1e5) < 5.0 * std::sqrt(1e5));
  }
}

TEST_CASE("poissonized empirical mean matches n p_i over many trials") {
  DiscretePmf p(std::vector<double>{0.5, 0.3, 0.2});
  double n = 8.0;
  const int trials = 10000;
  std::vector<double> sums(3, 0.0);
  Rng rng(RngState{17, 4});
  for (int t = 0; t < trials; ++t) {
    CountVector c = sample_poissonized(p, n, rng);
    for (int i = 0; i < 3; ++i) sums[i] += static_cast<double>(c.counts[i]);
  }
  for (int i = 0; i < 3; ++i) {
    double mean = sums[i] / trials;
    double se = std::sqrt(n * p[i] / trials);
    CHECK(std::fabs(mean - n * p[i]) < 5.0 * se);
  }
}

TEST_CASE("multinomial sampling") {
  DiscretePmf p(std::vector<double>{0.3, 0.7});
  Rng rng(RngState{21, 0});
  CountVector zero = sample_multinomial(p, 0, rng);
  CHECK(zero.total == 0);
  CHECK_FALSE(zero.poissonized);

  DiscretePmf one = make_uniform(1);
  CountVector all = sample_multinomial(one, 137, rng);
  CHECK(all.counts[0] == 137);

  CountVector big = sample_multinomial(p, 1000000, rng);
  CHECK(big.total == 1000000);
  CHECK(big.counts[0] + big.counts[1] == 1000000);
  double sigma = std::sqrt(1e6 * 0.3 * 0.7);
  CHECK(std::fabs(static_cast<double>(big.counts[0]) - 3e5) < 5.0 * sigma);
}

TEST_CASE("thin split preserves counts and expectation") {
  DiscretePmf p = make_uniform(4);
  Rng rng(RngState{33, 1});
  CountVector c = sample_poissonized(p, 400.0, rng);
  auto [a, b] = thin_split(c, 0.25, rng);
  CHECK(a.total + b.total == c.total);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(a.counts[i] + b.counts[i] == c.counts[i]);
  CHECK(a.poissonized);
  // expectation check over repetitions
  double asum = 0.0;
  for (int t = 0; t < 2000; ++t) {
    CountVector cc = sample_poissonized(p, 100.0, rng);
    auto [aa, bb] = thin_split(cc, 0.25, rng);
    asum += static_cast<double>(aa.total);
  }
  CHECK(std::fabs(asum / 2000 - 25.0) < 5.0 * std::sqrt(25.0 / 2000));
}

TEST_CASE("gaussian sequence sampling") {
  GaussianMean zero({}, 1.0, 1.0);
  Rng r1(RngState{4, 4});
  Rng r2(RngState{4, 4});
  Matrix m1 = sample_gaussian_sequence(zero, 3, 5, r1);
  Matrix m2 = sample_gaussian_sequence(zero, 3, 5, r2);
  CHECK(m1.data == m2.data);

  std::vector<int> plus(5, 1);
  GaussianMean theta = make_sobolev_signal(1.0, 1.0, 0.1, plus, 1.0, 0.5);
  REQUIRE(theta.length() == 5);
  CHECK_THROWS_AS(sample_gaussian_sequence(theta, 3, 2, r1),
                  std::invalid_argument);

  const std::size_t n = 100000;
  Rng r3(RngState{6, 6});
  Matrix m = sample_gaussian_sequence(theta, 6, n, r3);
  for (std::size_t j = 0; j < 6; ++j) {
    double mean = 0.0, sq = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      mean += m.at(r, j);
      sq += m.at(r, j) * m.at(r, j);
    }
    mean /= static_cast<double>(n);
    double expect = j < 5 ? theta.coeffs()[j] : 0.0;
    CHECK(std::fabs(mean - expect) < 5.0 / std::sqrt(static_cast<double>(n)));
    double var = sq / static_cast<double>(n) - mean * mean;
    CHECK(std::fabs(var - 1.0) < 0.05);
  }
}

TEST_CASE("counts_from_symbols validates range") {
  std::vector<std::uint32_t> syms{0, 1, 2, 1};
  CountVector c = counts_from_symbols(syms, 3);
  CHECK(c.counts == std::vector<std::uint64_t>{1, 2, 1});
  CHECK(c.total == 4);
  CHECK_THROWS_AS(counts_from_symbols(syms, 2), std::invalid_argument);
}
