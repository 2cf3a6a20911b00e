#pragma once

#include <cstdint>
#include <random>

namespace divalg {

// Deterministic random source.  We sample by explicit modulo reduction instead
// of std::uniform_int_distribution because the distribution's output is
// implementation-defined; the bias for desk-scale ranges (< 2^20 values out of
// a 64-bit draw) is irrelevant, while cross-toolchain reproducibility of
// seeded searches is part of the interface contract.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // Uniform value in [lo, hi], inclusive.  Requires lo <= hi.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(eng_() % span);
  }

private:
  std::mt19937_64 eng_;
};

}  // namespace divalg
