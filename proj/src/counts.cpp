#include "cat/counts.hpp"

#include <stdexcept>

namespace cat {

CountVector sample_poissonized(const DiscretePmf& p, double n, Rng& rng) {
  if (!(n >= 0.0)) throw std::invalid_argument("sample_poissonized: n must be >= 0");
  CountVector out;
  out.counts.resize(p.size());
  out.poissonized = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::uint64_t c = rng.next_poisson(n * p[i]);
    out.counts[i] = c;
    out.total += c;
  }
  return out;
}

AliasTable::AliasTable(const DiscretePmf& p) {
  std::size_t k = p.size();
  prob_.resize(k);
  alias_.resize(k);
  std::vector<double> scaled(k);
  std::vector<std::uint32_t> small, large;
  small.reserve(k);
  large.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    scaled[i] = p[i] * static_cast<double>(k);
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    std::uint32_t s = small.back();
    small.pop_back();
    std::uint32_t l = large.back();
    large.pop_back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  while (!large.empty()) {
    prob_[large.back()] = 1.0;
    alias_[large.back()] = large.back();
    large.pop_back();
  }
  while (!small.empty()) {  // leftovers from rounding
    prob_[small.back()] = 1.0;
    alias_[small.back()] = small.back();
    small.pop_back();
  }
}

std::uint32_t AliasTable::sample(Rng& rng) const {
  std::uint32_t i = static_cast<std::uint32_t>(rng.next_below(prob_.size()));
  return rng.next_double() < prob_[i] ? i : alias_[i];
}

CountVector sample_multinomial(const DiscretePmf& p, std::uint64_t n, Rng& rng) {
  CountVector out;
  out.counts.resize(p.size(), 0);
  out.total = n;
  out.poissonized = false;
  if (p.size() == 1) {
    out.counts[0] = n;
    return out;
  }
  AliasTable table(p);
  for (std::uint64_t i = 0; i < n; ++i) ++out.counts[table.sample(rng)];
  return out;
}

std::vector<std::uint32_t> sample_symbols(const DiscretePmf& p, std::uint64_t n,
                                          Rng& rng) {
  std::vector<std::uint32_t> syms(n);
  if (p.size() == 1) {
    return syms;  // all zeros
  }
  AliasTable table(p);
  for (std::uint64_t i = 0; i < n; ++i) syms[i] = table.sample(rng);
  return syms;
}

CountVector counts_from_symbols(std::span<const std::uint32_t> symbols,
                                std::size_t k) {
  CountVector out;
  out.counts.resize(k, 0);
  for (std::uint32_t s : symbols) {
    if (s >= k) throw std::invalid_argument("counts_from_symbols: symbol out of range");
    ++out.counts[s];
  }
  out.total = symbols.size();
  out.poissonized = false;
  return out;
}

std::pair<CountVector, CountVector> thin_split(const CountVector& c, double frac,
                                               Rng& rng) {
  if (!(frac >= 0.0 && frac <= 1.0))
    throw std::invalid_argument("thin_split: frac must lie in [0,1]");
  CountVector a, b;
  a.counts.resize(c.size(), 0);
  b.counts.resize(c.size(), 0);
  a.poissonized = c.poissonized;
  b.poissonized = c.poissonized;
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uint64_t kept = 0;
    for (std::uint64_t j = 0; j < c.counts[i]; ++j) {
      if (rng.next_double() < frac) ++kept;
    }
    a.counts[i] = kept;
    b.counts[i] = c.counts[i] - kept;
    a.total += a.counts[i];
    b.total += b.counts[i];
  }
  return {std::move(a), std::move(b)};
}

}  // namespace cat
