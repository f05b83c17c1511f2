#ifndef HARDY_RANDOM_HPP
#define HARDY_RANDOM_HPP

#include <cstdint>
#include <random>

// Reproducibility contract for every simulation in this library: counts are
// drawn with std::mt19937_64 (bit-exact by the standard on any conforming
// implementation) through the 53-bit uniform below, and sub-seeds are
// expanded from one master seed with SplitMix64. Published seeds therefore
// reproduce published counts across builds and platforms.

namespace hardy {

// SplitMix64 seed expander (Steele/Lea/Flood constants).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Sub-seed for the ordinal-th independent stream of a master seed.
inline std::uint64_t derive_subseed(std::uint64_t master, std::uint64_t ordinal) {
  SplitMix64 expander(master);
  std::uint64_t seed = expander.next();
  for (std::uint64_t i = 0; i < ordinal; ++i) seed = expander.next();
  return seed;
}

// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform_unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace hardy

#endif  // HARDY_RANDOM_HPP
