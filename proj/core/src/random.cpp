#include "mgl/random.hpp"

namespace mgl {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t CounterRng::bits(Stream stream, std::uint32_t replicate, std::uint32_t a,
                               std::uint32_t b) const noexcept {
  const auto out =
      Philox4x32::generate({static_cast<std::uint32_t>(stream), replicate, a, b}, key_);
  return static_cast<std::uint64_t>(out[0]) << 32 | out[1];
}

std::uint64_t CounterRng::below(std::uint64_t n, Stream stream, std::uint32_t replicate,
                                std::uint32_t a, std::uint32_t b) const noexcept {
  // Rejection on the 64-bit draw; retries are addressed by the otherwise
  // unused high bits of the stream word.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (std::uint32_t attempt = 0;; ++attempt) {
    const auto out = Philox4x32::generate(
        {static_cast<std::uint32_t>(stream) | (attempt << 8), replicate, a, b}, key_);
    const std::uint64_t x = static_cast<std::uint64_t>(out[0]) << 32 | out[1];
    if (x < limit) return x % n;
  }
}

}  // namespace mgl
