#pragma once

#include <cstdint>
#include <random>

namespace gpdcal {

/// splitmix64 mix step; used to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Explicit, seedable uniform random stream. All samplers in the library take
/// one of these as an argument; there is no hidden global state.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform draw strictly inside (0, 1). Uses the top 53 bits of the engine
  /// output, offset by half an ulp, so 0 and 1 are never returned and the
  /// mapping is identical across platforms.
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t raw() { return engine_(); }

  /// Stream seeded from (master, stream id, counter); independent of the order
  /// in which substreams are created.
  static RandomStream substream(std::uint64_t master, std::uint64_t id,
                                std::uint64_t counter) {
    return RandomStream(splitmix64(splitmix64(splitmix64(master) ^ (id + 1)) ^
                                   (counter + 1)));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gpdcal
