#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cat/pmf.hpp"
#include "cat/rng.hpp"

namespace cat {

// Per-bin frequencies of a sample. When `poissonized` is set the counts are
// independent Poisson(rate * p_i) and `total` was drawn rather than fixed.
struct CountVector {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  bool poissonized = false;

  std::size_t size() const { return counts.size(); }
};

// counts[i] ~ Poisson(n * p_i), independently across bins.
CountVector sample_poissonized(const DiscretePmf& p, double n, Rng& rng);

// Walker/Vose alias table for iid categorical draws.
class AliasTable {
 public:
  explicit AliasTable(const DiscretePmf& p);
  std::uint32_t sample(Rng& rng) const;

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

// counts ~ Multinomial(n, p), realized as n iid categorical draws.
CountVector sample_multinomial(const DiscretePmf& p, std::uint64_t n, Rng& rng);

// n iid symbols from p.
std::vector<std::uint32_t> sample_symbols(const DiscretePmf& p, std::uint64_t n,
                                          Rng& rng);

CountVector counts_from_symbols(std::span<const std::uint32_t> symbols,
                                std::size_t k);

// Bernoulli(frac) thinning of a Poissonized count vector into two
// independent Poissonized vectors (rates frac*r and (1-frac)*r).
std::pair<CountVector, CountVector> thin_split(const CountVector& c, double frac,
                                               Rng& rng);

}  // namespace cat
