#pragma once

#include <cstdint>
#include <random>

namespace covtrans {

// splitmix64 finalizer; used to derive independent child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Seeded generator with platform-independent conversions. std::*_distribution
// output is implementation-defined, so integer and Bernoulli draws are done
// here to keep certificates byte-identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform01() < p;
  }

  // Uniform on [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Child generator for a numbered sub-stream (attempt, stage, ...).
  Rng child(std::uint64_t stream) const { return Rng(mix_seed(seed_, stream)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace covtrans
