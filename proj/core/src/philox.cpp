#include "ctnoma/philox.hpp"

namespace ctnoma {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;  // golden-ratio increment
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;  // sqrt(3)-1 increment

inline std::array<std::uint32_t, 4> round_once(
    const std::array<std::uint32_t, 4>& x,
    const std::array<std::uint32_t, 2>& key) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x[2];
  return {static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ key[0],
          static_cast<std::uint32_t>(p1),
          static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ key[1],
          static_cast<std::uint32_t>(p0)};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
  for (int r = 0; r < 9; ++r) {
    counter = round_once(counter, key);
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return round_once(counter, key);
}

}  // namespace ctnoma
