#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cat {

// Compensated (Kahan) summation; pmf normalization checks and TV distances
// are run on alphabets up to 1e7 where naive accumulation loses digits.
double kahan_sum(std::span<const double> xs);

// Probability mass function on the alphabet {0,...,k-1}. Entries are
// non-negative and sum to one within 1e-12; both are checked at
// construction.
class DiscretePmf {
 public:
  explicit DiscretePmf(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  double mass(std::span<const std::uint32_t> bins) const;
  double max_prob() const;

 private:
  std::vector<double> probs_;
};

DiscretePmf make_uniform(std::size_t k);

// Uniform base point plus the paired +-2*eps/k perturbation driven by a
// sign per bin pair. Returns (uniform, perturbed); TV distance is exactly
// eps and the perturbed pmf is bounded by 2/k.
std::pair<DiscretePmf, DiscretePmf> make_paninski_pair(
    std::size_t k, double eps, std::span<const int> signs);

// The pair on [3k] for which the strictly-greater separating set has
// negative expected separation at n <= 0.6k:
//   p_i = 1/(2k) on the first k bins, 1/(4k) after;
//   q_i = 1/k on the first k bins, 0 after.
std::pair<DiscretePmf, DiscretePmf> make_negsep_pair(std::size_t k);

double tv_distance(const DiscretePmf& p, const DiscretePmf& q);

// max_i p_i <= c_db / k, the bounded-pmf class membership predicate.
bool bounded_by(const DiscretePmf& p, double c_db);

}  // namespace cat
