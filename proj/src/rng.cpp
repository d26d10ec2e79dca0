#include "divbench/rng.hpp"

#include <array>

namespace divbench {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) noexcept {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string to_hex(std::uint64_t value) {
  static constexpr std::array<char, 16> digits{'0', '1', '2', '3', '4', '5', '6', '7',
                                               '8', '9', 'a', 'b', 'c', 'd', 'e', 'f'};
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t master_seed,
                          std::initializer_list<std::string_view> parts) noexcept {
  std::uint64_t h = splitmix64(master_seed);
  for (std::string_view part : parts) {
    h = fnv1a64(part, h);
    h = fnv1a64(std::string_view("\x1f", 1), h);
  }
  return splitmix64(h);
}

std::uint64_t RandomSource::uniform_index(std::uint64_t n) {
  if (n <= 1) return 0;
  // 2^64 mod n; values below it are redrawn so that the accepted range is a
  // multiple of n.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x >= threshold) return x % n;
  }
}

double RandomSource::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace divbench
