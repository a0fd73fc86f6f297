#include "cat/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace cat {

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer (Steele, Lea, Flood 2014)
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

RngState derive_state(std::uint64_t base_seed,
                      std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = mix64(base_seed);
  for (std::uint64_t k : keys) h = hash_combine(h, k);
  return RngState{base_seed, h};
}

namespace {
constexpr std::uint64_t kPcgMult = 6364136223846793005ULL;

std::uint32_t rotr32(std::uint32_t v, unsigned r) {
  return (v >> r) | (v << ((32u - r) & 31u));
}
}  // namespace

Rng::Rng(RngState s) {
  // canonical pcg32 seeding: initseq selects the stream
  inc_ = (s.stream << 1u) | 1u;
  state_ = 0;
  next_u32();
  state_ += s.seed;
  next_u32();
}

std::uint32_t Rng::next_u32() {
  std::uint64_t old = state_;
  state_ = old * kPcgMult + inc_;
  std::uint32_t xorshifted =
      static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
  return rotr32(xorshifted, static_cast<unsigned>(old >> 59u));
}

std::uint64_t Rng::next_u64() {
  std::uint64_t hi = next_u32();
  return (hi << 32) | next_u32();
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool Rng::next_coin() { return (next_u32() & 1u) != 0; }

std::uint64_t Rng::next_below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // rejection from the top to avoid modulo bias
  std::uint64_t threshold = (~bound + 1) % bound;
  for (;;) {
    std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double Rng::next_normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1 = next_double();
  double u2 = next_double();
  double r = std::sqrt(-2.0 * std::log1p(-u1));
  double theta = 2.0 * M_PI * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_normal_ = true;
  return r * std::cos(theta);
}

std::uint64_t Rng::next_poisson(double rate) {
  if (!(rate >= 0.0)) throw std::invalid_argument("poisson rate must be >= 0");
  if (rate == 0.0) return 0;
  if (rate < kInversionCutoff) return poisson_inversion(rate);
  return poisson_ptrs(rate);
}

std::uint64_t Rng::poisson_inversion(double rate) {
  // Knuth multiplicative inversion; exact for rate < ~700, used below 30
  double limit = std::exp(-rate);
  double prod = 1.0;
  std::uint64_t k = 0;
  for (;;) {
    prod *= next_double();
    if (prod <= limit) return k;
    ++k;
  }
}

std::uint64_t Rng::poisson_ptrs(double rate) {
  // Hormann (1993), transformed rejection with squeeze; valid for rate >= 10
  double smu = std::sqrt(rate);
  double b = 0.931 + 2.53 * smu;
  double a = -0.059 + 0.02483 * b;
  double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  double v_r = 0.9277 - 3.6224 / (b - 2.0);
  double log_rate = std::log(rate);
  for (;;) {
    double u = next_double() - 0.5;
    double v = next_double();
    double us = 0.5 - std::fabs(u);
    double kf = std::floor((2.0 * a / us + b) * u + rate + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        kf * log_rate - rate - std::lgamma(kf + 1.0)) {
      return static_cast<std::uint64_t>(kf);
    }
  }
}

}  // namespace cat
