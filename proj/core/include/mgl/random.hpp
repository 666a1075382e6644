#pragma once

#include <array>
#include <cstdint>

namespace mgl {

/// Philox4x32-10 counter-based block cipher (Salmon et al., Random123).
/// Stateless: the output is a pure function of (counter, key).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key) noexcept;
};

/// Independent uniform streams derived from one master seed. Every draw is
/// addressed by (stream, replicate, a, b), so a vertex's latent value does not
/// depend on how large a window is requested.
enum class Stream : std::uint32_t {
  kAlpha = 1,        // global mixing variable
  kVertex = 2,       // U_i / xi_i
  kEdge = 3,         // beta_{ij}, i <= j
  kPermutation = 4,  // Fisher-Yates swaps
  kSequence = 5,     // consistent-sequence extensions
  kAuxiliary = 6,    // anything else (probes, shuffles)
};

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  std::uint64_t seed() const noexcept {
    return static_cast<std::uint64_t>(key_[1]) << 32 | key_[0];
  }

  /// 64 random bits.
  std::uint64_t bits(Stream stream, std::uint32_t replicate, std::uint32_t a,
                     std::uint32_t b = 0) const noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform(Stream stream, std::uint32_t replicate, std::uint32_t a,
                 std::uint32_t b = 0) const noexcept {
    return static_cast<double>(bits(stream, replicate, a, b) >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n), n > 0, by rejection (unbiased).
  std::uint64_t below(std::uint64_t n, Stream stream, std::uint32_t replicate, std::uint32_t a,
                      std::uint32_t b = 0) const noexcept;

 private:
  Philox4x32::Key key_;
};

}  // namespace mgl
