#pragma once

#include <cstdint>
#include <limits>

namespace crsim {

/// Independent random streams used while drawing one replication.
enum class StreamPurpose : std::uint64_t {
  kCount = 1,
  kPlacement = 2,
  kShadowing = 3,
  kPrimaryLink = 4,
  kSingleDraw = 5,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: the k-th output is mix64(key + k * golden), so a
/// stream is fully determined by its key and never shares state.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) : state_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    state_ += kGolden;
    return mix64(state_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_;
};

/// Master seed plus the derivation of per-(purpose, replication) substreams.
struct SeedSpec {
  std::uint64_t master_seed = 1;

  constexpr std::uint64_t stream_key(StreamPurpose purpose, std::uint64_t replication) const {
    std::uint64_t h = mix64(master_seed ^ 0x6A09E667F3BCC909ULL);
    h = mix64(h + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(purpose));
    h = mix64(h ^ (replication * 0xD1B54A32D192ED03ULL + 0x3C6EF372FE94F82BULL));
    return h;
  }

  constexpr CounterRng stream(StreamPurpose purpose, std::uint64_t replication) const {
    return CounterRng(stream_key(purpose, replication));
  }
};

}  // namespace crsim
