#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cat/counts.hpp"
#include "cat/pmf.hpp"
#include "cat/rng.hpp"

namespace cat {

enum class SepDirection { Greater, Less };

// A separating subset of the alphabet with a provenance tag for reports.
struct DiscreteSepSet {
  enum class Tag { Half, Greater, Less, BestOfLogK };

  std::vector<std::uint32_t> members;  // sorted ascending
  Tag tag = Tag::Half;
  int bucket = -1;                              // BestOfLogK only
  SepDirection bucket_dir = SepDirection::Greater;  // BestOfLogK only

  bool contains(std::uint32_t bin) const;
  std::string tag_string() const;
};

// {i : x_i > y_i, or x_i = y_i and an independent fair coin is 1}. Coins are
// consumed in ascending bin order, one per tied bin.
DiscreteSepSet sep_set_half(const CountVector& x, const CountVector& y,
                            Rng& tie_coins);

// Known-null variant: y counts replaced by exact expectations.
DiscreteSepSet sep_set_half(const CountVector& x,
                            std::span<const double> y_expected, Rng& tie_coins);

// {i in D : x_i > y_i} (Greater) or {i in D : x_i < y_i} (Less); ties are
// never included. The overloads without a domain use the full alphabet.
DiscreteSepSet sep_set_directional(const CountVector& x, const CountVector& y,
                                   std::span<const std::uint32_t> domain,
                                   SepDirection dir);
DiscreteSepSet sep_set_directional(const CountVector& x, const CountVector& y,
                                   SepDirection dir);
DiscreteSepSet sep_set_directional(const CountVector& x,
                                   std::span<const double> y_expected,
                                   std::span<const std::uint32_t> domain,
                                   SepDirection dir);
DiscreteSepSet sep_set_directional(const CountVector& x,
                                   std::span<const double> y_expected,
                                   SepDirection dir);

// count(S)/total of a holdout sample; 0 when the sample is empty.
double empirical_mass(const CountVector& c, const DiscreteSepSet& s);

// Pick the candidate with the larger |empirical sep| on held-out counts
// (ties go to `a`). The holdout must be independent of the counts that built
// the candidates; that is the caller's responsibility.
const DiscreteSepSet& select_better_of_two(const DiscreteSepSet& a,
                                           const DiscreteSepSet& b,
                                           const CountVector& holdout_x,
                                           const CountVector& holdout_y);
// Known-null variant: the y side of the empirical sep is the exact mass.
const DiscreteSepSet& select_better_of_two(const DiscreteSepSet& a,
                                           const DiscreteSepSet& b,
                                           const CountVector& holdout_x,
                                           const DiscretePmf& exact_y);

// Partition of the alphabet into ell+2 slabs by held-out empirical mass:
// D_0 = {qhat <= 1/t}, D_j = {qhat in (2^{j-1}/t, 2^j/t]}, D_{ell+1} above.
struct BucketPartition {
  std::vector<std::vector<std::uint32_t>> buckets;
  double t = 0.0;
  int ell = 0;
};

// t = k /\ (c0 * m / log(1/delta)); pass m = infinity when the reference
// distribution is known exactly. Requires t > n; callers fall back to the
// tie-broken set when the precondition fails.
BucketPartition bucketize(const DiscretePmf& qhat0, double n, double m,
                          double delta, double c0);

// Scan the 2(ell+2) directional candidates (j ascending, Greater before
// Less) and return the first whose holdout |sep| clears c1 * E_j(eps/(ell+2)),
// where E_0 = n e^2/k, E_j = n e^2 / sqrt(k t / 2^j), E_{ell+1} = sqrt(n/k) e^2.
// Returns nothing when no candidate passes. The candidate sample size n is
// taken from x.total.
std::optional<DiscreteSepSet> select_best_of_logk(
    const BucketPartition& part, const CountVector& x, const CountVector& y,
    const CountVector& holdout_x, const CountVector& holdout_y, double eps,
    double delta, double c1);
std::optional<DiscreteSepSet> select_best_of_logk(
    const BucketPartition& part, const CountVector& x,
    std::span<const double> y_expected, const CountVector& holdout_x,
    const DiscretePmf& exact_y, double eps, double delta, double c1);

}  // namespace cat
