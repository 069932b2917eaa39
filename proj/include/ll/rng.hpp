#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace ll {

// Philox4x32-10 counter-based generator. One instance per Monte Carlo path:
// the (seed, stream) pair selects an independent stream, so paths can be
// sampled on any worker in any order and still reproduce bit-identically.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<std::uint64_t>::max(); }

  result_type operator()() {
    if (avail_ < 2) refill();
    std::uint64_t hi = block_[--avail_];
    std::uint64_t lo = block_[--avail_];
    return (hi << 32) | lo;
  }

  // uniform on [0,1) with 53 random bits
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  // uniform on (0,1]
  double uniform_pos() { return 1.0 - uniform01(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform_pos();
    double u2 = uniform01();
    double rad = std::sqrt(-2.0 * std::log(u1));
    double ang = 6.283185307179586476925286766559 * u2;
    spare_ = rad * std::sin(ang);
    have_spare_ = true;
    return rad * std::cos(ang);
  }

  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  void refill() {
    std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(ctr_), static_cast<std::uint32_t>(ctr_ >> 32),
        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    std::uint32_t k0 = key_[0];
    std::uint32_t k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
      std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      std::array<std::uint32_t, 4> next = {
          static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ k0,
          static_cast<std::uint32_t>(p1),
          static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ k1,
          static_cast<std::uint32_t>(p0)};
      ctr = next;
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    block_ = ctr;
    avail_ = 4;
    ++ctr_;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_ = 0;
  std::uint64_t ctr_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int avail_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ll
