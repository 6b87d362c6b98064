#pragma once
// Deterministic, splittable random streams.
//
// A stream is a pure function of its StreamSeed: a 64-bit root plus a path
// of 64-bit derivation keys.  Key folding uses a fixed 64-bit avalanche
// finalizer, so the mapping (root, path) -> output sequence is part of the
// library contract and is pinned by golden-value tests.  The generator is
// splitmix64: a Weyl counter passed through the same finalizer, which makes
// substream derivation O(path length) with no jump-ahead bookkeeping.

#include <cstdint>
#include <vector>

namespace randflight {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// splitmix64 finalizer (Vigna): a bijective 64-bit avalanche.
constexpr std::uint64_t avalanche64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

/// Folds one derivation key into a stream state.  The contract, stable
/// across releases: child = avalanche64((state XOR key) + golden gamma).
constexpr std::uint64_t derive_state(std::uint64_t state,
                                     std::uint64_t key) noexcept {
  return avalanche64((state ^ key) + kGoldenGamma);
}

/// Identity of a random stream: root seed plus derivation path.  Distinct
/// paths give statistically independent streams.
struct StreamSeed {
  std::uint64_t root = 0;
  std::vector<std::uint64_t> path{};

  StreamSeed child(std::uint64_t key) const {
    StreamSeed c{root, path};
    c.path.push_back(key);
    return c;
  }

  /// 64-bit state this seed denotes: avalanche64(root), then one
  /// derive_state fold per path key, in order.
  std::uint64_t fold() const noexcept {
    std::uint64_t h = avalanche64(root);
    for (std::uint64_t key : path) h = derive_state(h, key);
    return h;
  }

  friend bool operator==(const StreamSeed&, const StreamSeed&) = default;
};

/// Single-owner pseudorandom stream.  Move-only: threads share work by
/// deriving child streams up front, never by sharing a live stream.
class RandomStream {
 public:
  explicit RandomStream(const StreamSeed& seed)
      : RandomStream(seed.fold()) {}

  RandomStream(RandomStream&&) noexcept = default;
  RandomStream& operator=(RandomStream&&) noexcept = default;
  RandomStream(const RandomStream&) = delete;
  RandomStream& operator=(const RandomStream&) = delete;

  static RandomStream from_state(std::uint64_t state) noexcept {
    return RandomStream(state);
  }

  /// Child stream keyed off the state this stream was derived with; the
  /// result does not depend on how many values were drawn since.
  RandomStream derive(std::uint64_t key) const noexcept {
    return RandomStream(derive_state(origin_, key));
  }

  std::uint64_t next_u64() noexcept {
    state_ += kGoldenGamma;
    return avalanche64(state_);
  }

  /// Uniform in [0, 1) with 2^-53 granularity.
  double next_unit() noexcept {
    return double(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in (0, 1): never exactly 0 or 1, so inverse-transform sampling
  /// stays inside open quantile domains.
  double next_open_unit() noexcept {
    return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  explicit RandomStream(std::uint64_t state) noexcept
      : origin_(state), state_(state) {}

  std::uint64_t origin_;  // state at derivation time, keyed by derive()
  std::uint64_t state_;   // Weyl counter, advanced by kGoldenGamma per draw
};

/// Stream for path seed.path + [key].
inline RandomStream derive_stream(const StreamSeed& seed, std::uint64_t key) {
  return RandomStream::from_state(derive_state(seed.fold(), key));
}

}  // namespace randflight
