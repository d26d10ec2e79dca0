#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <string_view>

namespace divbench {

/// 64-bit FNV-1a. Stable across platforms; used for content hashes,
/// config fingerprints and stream derivation.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Lowercase 16-digit hex rendering of a 64-bit value.
std::string to_hex(std::uint64_t value);

/// Derives an independent seed from a master seed and a key path, e.g.
/// {prompt_id, condition, "rep=3", "context"}. Parts are separated by a unit
/// separator so {"ab","c"} and {"a","bc"} never collide.
std::uint64_t derive_seed(std::uint64_t master_seed,
                          std::initializer_list<std::string_view> parts) noexcept;

/// Source of uniformly distributed 64-bit words. The derived helpers avoid
/// std::*_distribution so that draws are bit-identical on every standard
/// library.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual std::uint64_t next_u64() = 0;

  /// Uniform integer in [0, n). Rejection sampling on the top of the range.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();
};

/// mt19937_64 is fully specified by the standard, so seeded output is
/// reproducible across compilers.
class RngStream final : public RandomSource {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t next_u64() override { return engine_(); }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace divbench
