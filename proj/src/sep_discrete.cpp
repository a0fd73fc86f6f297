#include "cat/sep_discrete.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cat {

bool DiscreteSepSet::contains(std::uint32_t bin) const {
  return std::binary_search(members.begin(), members.end(), bin);
}

std::string DiscreteSepSet::tag_string() const {
  switch (tag) {
    case Tag::Half:
      return "half";
    case Tag::Greater:
      return "greater";
    case Tag::Less:
      return "less";
    case Tag::BestOfLogK:
      return "bestlogk:j=" + std::to_string(bucket) +
             (bucket_dir == SepDirection::Greater ? ":greater" : ":less");
  }
  return "unknown";
}

DiscreteSepSet sep_set_half(const CountVector& x, const CountVector& y,
                            Rng& tie_coins) {
  if (x.size() != y.size())
    throw std::invalid_argument("sep_set_half: alphabet size mismatch");
  DiscreteSepSet s;
  s.tag = DiscreteSepSet::Tag::Half;
  for (std::uint32_t i = 0; i < x.size(); ++i) {
    if (x.counts[i] > y.counts[i]) {
      s.members.push_back(i);
    } else if (x.counts[i] == y.counts[i] && tie_coins.next_coin()) {
      s.members.push_back(i);
    }
  }
  return s;
}

DiscreteSepSet sep_set_half(const CountVector& x,
                            std::span<const double> y_expected, Rng& tie_coins) {
  if (x.size() != y_expected.size())
    throw std::invalid_argument("sep_set_half: alphabet size mismatch");
  DiscreteSepSet s;
  s.tag = DiscreteSepSet::Tag::Half;
  for (std::uint32_t i = 0; i < x.size(); ++i) {
    double xi = static_cast<double>(x.counts[i]);
    if (xi > y_expected[i]) {
      s.members.push_back(i);
    } else if (xi == y_expected[i] && tie_coins.next_coin()) {
      s.members.push_back(i);
    }
  }
  return s;
}

namespace {

template <class Cmp>
DiscreteSepSet directional_impl(std::size_t k,
                                std::span<const std::uint32_t> domain,
                                bool full_domain, SepDirection dir, Cmp in_set) {
  DiscreteSepSet s;
  s.tag = dir == SepDirection::Greater ? DiscreteSepSet::Tag::Greater
                                       : DiscreteSepSet::Tag::Less;
  if (full_domain) {
    for (std::uint32_t i = 0; i < k; ++i)
      if (in_set(i)) s.members.push_back(i);
  } else {
    for (std::uint32_t i : domain) {
      if (i >= k)
        throw std::invalid_argument("sep_set_directional: domain index out of range");
      if (in_set(i)) s.members.push_back(i);
    }
    std::sort(s.members.begin(), s.members.end());
  }
  return s;
}

}  // namespace

DiscreteSepSet sep_set_directional(const CountVector& x, const CountVector& y,
                                   std::span<const std::uint32_t> domain,
                                   SepDirection dir) {
  if (x.size() != y.size())
    throw std::invalid_argument("sep_set_directional: alphabet size mismatch");
  return directional_impl(x.size(), domain, false, dir, [&](std::uint32_t i) {
    return dir == SepDirection::Greater ? x.counts[i] > y.counts[i]
                                        : x.counts[i] < y.counts[i];
  });
}

DiscreteSepSet sep_set_directional(const CountVector& x, const CountVector& y,
                                   SepDirection dir) {
  if (x.size() != y.size())
    throw std::invalid_argument("sep_set_directional: alphabet size mismatch");
  return directional_impl(x.size(), {}, true, dir, [&](std::uint32_t i) {
    return dir == SepDirection::Greater ? x.counts[i] > y.counts[i]
                                        : x.counts[i] < y.counts[i];
  });
}

DiscreteSepSet sep_set_directional(const CountVector& x,
                                   std::span<const double> y_expected,
                                   std::span<const std::uint32_t> domain,
                                   SepDirection dir) {
  if (x.size() != y_expected.size())
    throw std::invalid_argument("sep_set_directional: alphabet size mismatch");
  return directional_impl(x.size(), domain, false, dir, [&](std::uint32_t i) {
    double xi = static_cast<double>(x.counts[i]);
    return dir == SepDirection::Greater ? xi > y_expected[i] : xi < y_expected[i];
  });
}

DiscreteSepSet sep_set_directional(const CountVector& x,
                                   std::span<const double> y_expected,
                                   SepDirection dir) {
  if (x.size() != y_expected.size())
    throw std::invalid_argument("sep_set_directional: alphabet size mismatch");
  return directional_impl(x.size(), {}, true, dir, [&](std::uint32_t i) {
    double xi = static_cast<double>(x.counts[i]);
    return dir == SepDirection::Greater ? xi > y_expected[i] : xi < y_expected[i];
  });
}

double empirical_mass(const CountVector& c, const DiscreteSepSet& s) {
  if (c.total == 0) return 0.0;
  std::uint64_t hits = 0;
  for (std::uint32_t i : s.members) {
    if (i >= c.size()) throw std::invalid_argument("empirical_mass: bin out of range");
    hits += c.counts[i];
  }
  return static_cast<double>(hits) / static_cast<double>(c.total);
}

const DiscreteSepSet& select_better_of_two(const DiscreteSepSet& a,
                                           const DiscreteSepSet& b,
                                           const CountVector& holdout_x,
                                           const CountVector& holdout_y) {
  double sep_a =
      std::fabs(empirical_mass(holdout_x, a) - empirical_mass(holdout_y, a));
  double sep_b =
      std::fabs(empirical_mass(holdout_x, b) - empirical_mass(holdout_y, b));
  return sep_a >= sep_b ? a : b;
}

const DiscreteSepSet& select_better_of_two(const DiscreteSepSet& a,
                                           const DiscreteSepSet& b,
                                           const CountVector& holdout_x,
                                           const DiscretePmf& exact_y) {
  double sep_a = std::fabs(empirical_mass(holdout_x, a) - exact_y.mass(a.members));
  double sep_b = std::fabs(empirical_mass(holdout_x, b) - exact_y.mass(b.members));
  return sep_a >= sep_b ? a : b;
}

BucketPartition bucketize(const DiscretePmf& qhat0, double n, double m,
                          double delta, double c0) {
  if (!(delta > 0.0 && delta < 0.5))
    throw std::invalid_argument("bucketize: delta must lie in (0, 1/2)");
  if (!(c0 > 0.0)) throw std::invalid_argument("bucketize: c0 must be > 0");
  if (!(n > 0.0)) throw std::invalid_argument("bucketize: n must be > 0");
  double k = static_cast<double>(qhat0.size());
  double t = std::min(k, c0 * m / std::log(1.0 / delta));
  if (!(t > n)) {
    throw std::invalid_argument(
        "bucketize: effective support scale t = " + std::to_string(t) +
        " <= n = " + std::to_string(n) +
        "; bucketing does not apply, use the tie-broken set instead");
  }
  BucketPartition part;
  part.t = t;
  part.ell = static_cast<int>(std::ceil(std::log2(t / n)));
  part.buckets.assign(static_cast<std::size_t>(part.ell) + 2, {});
  for (std::uint32_t i = 0; i < qhat0.size(); ++i) {
    double v = qhat0[i] * t;  // bucket thresholds are powers of two over t
    std::size_t j;
    if (v <= 1.0) {
      j = 0;
    } else {
      j = static_cast<std::size_t>(std::max(1.0, std::ceil(std::log2(v))));
      if (j > static_cast<std::size_t>(part.ell)) j = part.ell + 1;
    }
    part.buckets[j].push_back(i);
  }
  return part;
}

namespace {

double selector_threshold(const BucketPartition& part, std::size_t j, double n,
                          double k, double eps, double c1) {
  double eps_j = eps / static_cast<double>(part.ell + 2);
  double e2 = eps_j * eps_j;
  if (j == 0) return c1 * n * e2 / k;
  if (j == static_cast<std::size_t>(part.ell) + 1)
    return c1 * std::sqrt(n / k) * e2;
  double denom = std::sqrt(k * part.t / std::exp2(static_cast<double>(j)));
  return c1 * n * e2 / denom;
}

template <class MakeSet, class HoldoutSep>
std::optional<DiscreteSepSet> best_of_logk_impl(const BucketPartition& part,
                                                double n, double k, double eps,
                                                double c1, MakeSet make_set,
                                                HoldoutSep holdout_sep) {
  for (std::size_t j = 0; j < part.buckets.size(); ++j) {
    for (SepDirection dir : {SepDirection::Greater, SepDirection::Less}) {
      DiscreteSepSet s = make_set(part.buckets[j], dir);
      if (holdout_sep(s) >= selector_threshold(part, j, n, k, eps, c1)) {
        s.tag = DiscreteSepSet::Tag::BestOfLogK;
        s.bucket = static_cast<int>(j);
        s.bucket_dir = dir;
        return s;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<DiscreteSepSet> select_best_of_logk(
    const BucketPartition& part, const CountVector& x, const CountVector& y,
    const CountVector& holdout_x, const CountVector& holdout_y, double eps,
    double delta, double c1) {
  (void)delta;  // the error target enters through the bucketing scale t
  double n = static_cast<double>(x.total);
  double k = static_cast<double>(x.size());
  return best_of_logk_impl(
      part, n, k, eps, c1,
      [&](std::span<const std::uint32_t> domain, SepDirection dir) {
        return sep_set_directional(x, y, domain, dir);
      },
      [&](const DiscreteSepSet& s) {
        return std::fabs(empirical_mass(holdout_x, s) -
                         empirical_mass(holdout_y, s));
      });
}

std::optional<DiscreteSepSet> select_best_of_logk(
    const BucketPartition& part, const CountVector& x,
    std::span<const double> y_expected, const CountVector& holdout_x,
    const DiscretePmf& exact_y, double eps, double delta, double c1) {
  (void)delta;
  double n = static_cast<double>(x.total);
  double k = static_cast<double>(x.size());
  return best_of_logk_impl(
      part, n, k, eps, c1,
      [&](std::span<const std::uint32_t> domain, SepDirection dir) {
        return sep_set_directional(x, y_expected, domain, dir);
      },
      [&](const DiscreteSepSet& s) {
        return std::fabs(empirical_mass(holdout_x, s) - exact_y.mass(s.members));
      });
}

}  // namespace cat
