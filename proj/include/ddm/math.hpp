#pragma once

// Scalar numeric kernel: stable logistic transforms, normal cdf/quantile,
// and the deterministic RNG primitives every other module builds on.

#include <cstdint>
#include <random>

namespace ddm {

// Phi(x), standard normal cdf.
double normal_cdf(double x);

// Phi^{-1}(p) for p in (0,1); throws std::domain_error outside.
double normal_quantile(double p);

// log(1 + exp(x)) without overflow or cancellation (branch thresholds
// follow Maechler's classic accuracy analysis).
double log1pexp(double x);

// 1 / (1 + exp(-x)); saturates cleanly to 0.0 / 1.0 for |x| large.
double sigmoid(double x);

// log sigmoid(x) = -log1pexp(-x); finite branch even when sigmoid(x) == 1.
double log_sigmoid(double x);

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

// k-th output of a SplitMix64 stream seeded at `base`: mix64(base + (k+1)*gamma).
// This is the documented splittable hash used for replication / purpose seeds,
// so concurrent schedules cannot change any random stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// Deterministic draw source. Uniforms map the top 53 bits of mt19937_64
// into (0,1); normals go through the inverse cdf. No libstdc++
// distribution objects are involved, so the stream depends only on the
// seed, never on the standard-library version.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // open-interval (0,1)
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() { return normal_quantile(uniform()); }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ddm
