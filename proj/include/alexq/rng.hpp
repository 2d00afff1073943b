#pragma once

#include <cstdint>
#include <random>

namespace alexq {

// Seeded generator with platform-independent bounded draws (the standard
// distributions are implementation-defined, which would break reproducible
// move sequences and batteries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = 0;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  bool coin() { return (engine_() >> 63U) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace alexq
