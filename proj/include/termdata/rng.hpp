#ifndef TERMDATA_RNG_HPP
#define TERMDATA_RNG_HPP

#include <cstdint>

namespace termdata {

// Deterministic splitmix64 generator. Substreams are derived from a master
// seed and a stream id (sentence index, replicate index), so draws for one
// unit of work never depend on thread scheduling or on other units.
class Rng {
 public:
  Rng(std::uint64_t master_seed, std::uint64_t stream_id)
      : state_(mix(master_seed + 0x9E3779B97F4A7C15ULL * (stream_id + 1))) {}

  explicit Rng(std::uint64_t seed) : state_(mix(seed)) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi); degenerates to lo when hi == lo.
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Uniform in [0, n) without modulo bias (Lemire's multiply-shift).
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace termdata

#endif  // TERMDATA_RNG_HPP
