#pragma once

#include <cstdint>
#include <initializer_list>

namespace cat {

// Seed/stream pair identifying a random sequence. The same pair always
// reproduces the same draws, independent of platform and compiler.
struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// splitmix64 finalizer; used for seed derivation and content hashing.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v);

// Derive a child state from a base seed and a list of keys (cell ids,
// trial indices, role tags). Children with distinct keys are independent
// streams of the same generator family.
RngState derive_state(std::uint64_t base_seed,
                      std::initializer_list<std::uint64_t> keys);

// PCG32 with hand-rolled distributions. <random> distributions are
// implementation-defined, which would break the reproducibility contract,
// so uniform/normal/Poisson are implemented here.
class Rng {
 public:
  explicit Rng(RngState s);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  double next_double();  // uniform [0,1) with 53 random bits
  bool next_coin();
  std::uint64_t next_below(std::uint64_t bound);  // uniform on {0,...,bound-1}
  double next_normal();  // standard normal, Box-Muller

  // Poisson(rate): multiplicative inversion below kInversionCutoff,
  // Hormann's transformed rejection (PTRS) above.
  std::uint64_t next_poisson(double rate);

  static constexpr double kInversionCutoff = 30.0;

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;

  std::uint64_t poisson_inversion(double rate);
  std::uint64_t poisson_ptrs(double rate);
};

}  // namespace cat
