#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace uap {

// splitmix64 step; used for seeding and seed derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Derives a child seed from an ordered tuple of words, e.g.
// sub_seed({master, round, client_id}). Order-sensitive.
inline std::uint64_t sub_seed(std::initializer_list<std::uint64_t> words) {
  std::uint64_t state = 0x6a09e667f3bcc909ull;
  std::uint64_t out = 0;
  for (std::uint64_t w : words) {
    state ^= w;
    out = splitmix64(state);
  }
  return out;
}

// xoshiro256++ with a hand-rolled normal sampler. The standard library's
// distributions are implementation-defined, so every draw here goes through
// our own code to keep runs bit-identical across compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller. No spare caching: two uniforms per draw
  // keeps the stream position a pure function of the draw count.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1], log-safe
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  // Unbiased integer in [0, n). Lemire's multiply-with-rejection.
  std::size_t index(std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      const unsigned __int128 m =
          static_cast<unsigned __int128>(next_u64()) * bound;
      if (static_cast<std::uint64_t>(m) >= threshold)
        return static_cast<std::size_t>(m >> 64);
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t state_[4];
};

}  // namespace uap
