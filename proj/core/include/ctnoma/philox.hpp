#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace ctnoma {

/// Philox 4x32 keyed counter permutation, 10 rounds (Salmon et al. 2011).
/// Stateless: every 128-bit counter value maps to an independent 128-bit
/// block under a 64-bit key, which is what makes substreams trivial to
/// carve out by index.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// One substream of the Philox generator, addressed by (seed, stream,
/// element). Streams with different addresses never overlap, and a stream's
/// output depends only on its address — never on how many other streams
/// exist or in what order they are drawn. That makes sweep results
/// independent of worker scheduling by construction.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint32_t stream, std::uint64_t element)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        prefix_{stream, static_cast<std::uint32_t>(element),
                static_cast<std::uint32_t>(element >> 32)} {}

  std::uint32_t next_u32() {
    if (cursor_ == 0) {
      block_ = philox4x32({block_index_++, prefix_[0], prefix_[1], prefix_[2]},
                          key_);
      cursor_ = 4;
    }
    return block_[4 - cursor_--];
  }

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double next_unit() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }

  /// Exponential with unit mean; -log1p keeps the argument away from log(0).
  double exponential() { return -std::log1p(-next_unit()); }

 private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 3> prefix_;
  std::array<std::uint32_t, 4> block_{};
  std::uint32_t block_index_ = 0;
  int cursor_ = 0;
};

}  // namespace ctnoma
