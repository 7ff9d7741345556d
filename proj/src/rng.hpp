#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace trc {

constexpr uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Every randomized task derives its own stream from (master seed, stage tag,
// task index), so results do not depend on scheduling or worker count.
constexpr uint64_t derive_seed(uint64_t master, std::string_view tag, uint64_t index = 0) {
  return splitmix64(splitmix64(master ^ fnv1a64(tag)) + 0x9e3779b97f4a7c15ull * (index + 1));
}

// mt19937_64 output is specified by the standard; the std:: distribution
// adaptors are not. All transforms below are pinned so that identical seeds
// give identical streams on any platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next() { return gen_(); }

  // Uniform on [0, n). Multiply-shift; bias is < n / 2^64.
  uint64_t index(uint64_t n) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(next()) * n) >> 64);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // P(X = k) = (1 - p) p^k for k = 0, 1, 2, ...; mean p / (1 - p).
  uint64_t geometric(double p) {
    if (p <= 0.0) return 0;
    double u = real01();  // 1 - u is in (0, 1]
    return static_cast<uint64_t>(std::log1p(-u) / std::log(p));
  }

  // Standard normal via Box-Muller (second variate discarded).
  double normal() {
    double u1 = 1.0 - real01();
    double u2 = real01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct values from [0, n), in selection order.
  std::vector<uint32_t> sample_indices(uint32_t n, uint32_t k) {
    std::vector<uint32_t> pool(n);
    for (uint32_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<uint32_t> out;
    out.reserve(k);
    for (uint32_t i = 0; i < k && i < n; ++i) {
      uint32_t j = i + static_cast<uint32_t>(index(n - i));
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace trc
