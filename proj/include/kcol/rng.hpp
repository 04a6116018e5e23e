#pragma once

#include <bit>
#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace kcol {

using BigInt = boost::multiprecision::cpp_int;

// Stage labels for substream derivation.
enum class Phase : std::uint64_t {
  generation = 1,
  base = 2,
  step = 3,
  run = 4,
  trial = 5,
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4b7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// Deterministic xoshiro256** stream addressed by (seed, label, label, ...).
// A stream is identified by its lineage: substream(phase, i) derives a child
// whose draws depend only on the ancestor labels, never on how much the
// parent has already been consumed. All randomness in the project flows
// through this type, so runs replay bit-for-bit from one seed and consumed
// random bits can be metered.
//
// Bit accounting charges the information content of each draw:
// bit_width(m-1) per rejection round for uniform_below(m), msb(n-1)+1 per
// round for uniform_bigint_below(n), 53 for a unit double, 64 for a raw word.
class RandomStream {
 public:
  RandomStream() : RandomStream(0) {}

  explicit RandomStream(std::uint64_t seed)
      : lineage_(seed ^ 0x8f1bbcdcbfa53e0bULL) {
    init_state();
  }

  RandomStream substream(Phase phase, std::uint64_t index) const {
    RandomStream child(*this, static_cast<std::uint64_t>(phase));
    return RandomStream(child, index);
  }

  std::uint64_t next_u64() {
    bits_ += 64;
    return raw_u64();
  }

  // Uniform integer in [0, m), by masked rejection.
  std::uint64_t uniform_below(std::uint64_t m) {
    if (m <= 1) return 0;
    const int width = std::bit_width(m - 1);
    const std::uint64_t mask =
        width == 64 ? ~0ULL : ((std::uint64_t{1} << width) - 1);
    for (;;) {
      const std::uint64_t x = raw_u64() & mask;
      bits_ += static_cast<std::uint64_t>(width);
      if (x < m) return x;
    }
  }

  // Uniform in [0, n) for arbitrary-precision n > 0.
  BigInt uniform_bigint_below(const BigInt& n) {
    if (n <= 1) return 0;
    const BigInt top = n - 1;
    const std::uint64_t width = boost::multiprecision::msb(top) + 1;
    const std::uint64_t words = (width + 63) / 64;
    for (;;) {
      BigInt x = 0;
      for (std::uint64_t w = 0; w < words; ++w) {
        x <<= 64;
        x |= raw_u64();
      }
      x >>= words * 64 - width;
      bits_ += width;
      if (x < n) return x;
    }
  }

  // Uniform double in [0, 1), 53 significant bits.
  double uniform_unit() {
    const std::uint64_t x = raw_u64() >> 11;
    bits_ += 53;
    return static_cast<double>(x) * 0x1.0p-53;
  }

  std::uint64_t bits_consumed() const { return bits_; }

 private:
  RandomStream(const RandomStream& parent, std::uint64_t label)
      : lineage_(parent.lineage_) {
    std::uint64_t st = lineage_;
    lineage_ = detail::splitmix64(st) ^
               (label * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    init_state();
  }

  void init_state() {
    std::uint64_t st = lineage_;
    for (auto& word : s_) word = detail::splitmix64(st);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t raw_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  std::uint64_t lineage_ = 0;
  std::uint64_t s_[4] = {1, 0, 0, 0};
  std::uint64_t bits_ = 0;
};

}  // namespace kcol
