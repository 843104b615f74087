#pragma once

// Data-driven credible balls B(theta_hat, r) around the measure's mean:
// quantile-based radius (Monte Carlo inversion of the norm law) and plug-in
// radius r^2 = |S_hat| log(en / |S_hat|), with their inflation factors.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ddm/core.hpp"

namespace ddm {

enum class BallMethod { kQuantile, kPlugIn };

struct CredibleBall {
  std::vector<double> center;  // posterior mean
  double raw_radius = 0.0;
  double inflated_radius = 0.0;  // inflation_M * g_n * raw_radius
  BallMethod method = BallMethod::kPlugIn;
  double zeta = 0.05;
  double inflation_M = 1.0;
  double g_n = 1.0;  // log(en) for Quantile, 1 for PlugIn
  std::optional<std::size_t> mc_samples;
  std::optional<std::uint64_t> seed;
};

// Upper nearest-rank (1-zeta)-quantile of ||theta - theta_hat|| over m
// Monte Carlo draws (rank = ceil((1-zeta) m)), so the empirical mass of the
// returned ball among the generating draws is >= 1-zeta by construction.
// Consumes the same draw stream as sample(params, m, seed). zeta in (0,1/2),
// m >= 100.
double quantile_radius(const DDMParams& params, double zeta, std::size_t m,
                       std::uint64_t seed);

// s log(en/s) at s = max(|S_hat(0.5)|, 1); the empty selection is floored to
// s = 1 because the formula degenerates at 0.
double plug_in_radius_squared(const DDMParams& params);
double plug_in_radius(const DDMParams& params);

// m and seed are ignored for the plug-in method.
CredibleBall build_ball(const DDMParams& params, BallMethod method,
                        double zeta, double M, std::size_t m,
                        std::uint64_t seed);

// ||theta - center|| <= inflated_radius (boundary included).
bool contains(const CredibleBall& ball, std::span<const double> theta);

}  // namespace ddm
