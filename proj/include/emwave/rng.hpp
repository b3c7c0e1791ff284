#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace emwave {

/// SplitMix64 finalizer: bijective 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Counter-based deterministic generator (splitmix64).
///
/// Output i of a stream is mix64(key + i * GOLDEN_GAMMA): a pure function of
/// (key, counter), so draws are reproducible byte-for-byte regardless of
/// platform, thread count, or call interleaving. Streams are derived from a
/// root seed and a text label, which is how the single CLI seed fans out to
/// independent per-component, per-bus noise streams.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  /// Stream derivation: key = mix64(root_seed ^ fnv1a64(label)).
  static CounterRng derive(std::uint64_t root_seed, std::string_view label) {
    return CounterRng(mix64(root_seed ^ fnv1a64(label)));
  }

  std::uint64_t next_u64() { return mix64(key_ + (counter_++) * kGamma); }

  /// Uniform double in (0, 1], 53-bit resolution. The half-open-at-zero
  /// range keeps log() in the Gaussian transform finite.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1p-53;
  }

  /// Standard normal via Box-Muller; the paired value is cached.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_unit();
    double u2 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * kPi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr double kPi = 3.14159265358979323846;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace emwave
