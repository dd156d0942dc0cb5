#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace albscreen {

/// SplitMix64 finalizer. Used to derive independent substream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based seed derivation: the same (master, keys...) always yields the
/// same substream seed, independent of the order streams are created in.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) noexcept
{
  std::uint64_t s = mix64(master);
  for (auto k : keys)
    s = mix64(s ^ mix64(k + 0x632be59bd9b4e019ULL));
  return s;
}

// Stream tags keep substreams of different purposes apart.
namespace stream {
inline constexpr std::uint64_t mask = 1;
inline constexpr std::uint64_t column = 2;
inline constexpr std::uint64_t covariate_pick = 3;
inline constexpr std::uint64_t permutation = 4;
inline constexpr std::uint64_t split = 5;
inline constexpr std::uint64_t replication = 6;
}  // namespace stream

/// Seeded generator with fixed, library-independent sampling algorithms.
///
/// std::*_distribution results differ between standard libraries, so every
/// transform here is spelled out: uniforms take the top 53 bits, normals use
/// the Marsaglia polar method, integers use rejection sampling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound)
  {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  bool bernoulli(double prob) { return uniform() < prob; }

  double normal()
  {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Student-t with integer degrees of freedom: Z / sqrt(chi2_df / df), with
  /// chi2_df built as a sum of df squared standard normals.
  double student_t(int df)
  {
    const double z = normal();
    double chi2 = 0.0;
    for (int k = 0; k < df; ++k) {
      const double w = normal();
      chi2 += w * w;
    }
    return z / std::sqrt(chi2 / df);
  }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::span<T> items)
  {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  /// k distinct indices from [0, n) in draw order (partial Fisher-Yates).
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k)
  {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i)
      pool[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
      const auto j = i + static_cast<std::size_t>(below(n - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace albscreen
