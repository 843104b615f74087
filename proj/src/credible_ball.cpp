#include "ddm/credible_ball.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ddm/inference.hpp"
#include "ddm/math.hpp"

namespace ddm {

double quantile_radius(const DDMParams& params, double zeta, std::size_t m,
                       std::uint64_t seed) {
  if (!(zeta > 0.0 && zeta < 0.5)) {
    throw ConfigError("quantile_radius: zeta must lie in (0, 1/2)");
  }
  if (m < 100) {
    throw ConfigError("quantile_radius: need at least 100 Monte Carlo draws");
  }
  const std::size_t n = params.n();
  const std::vector<double> center = posterior_mean(params);
  const double tau = params.tau();

  // Same stream as sample(params, m, seed); norms accumulated draw by draw
  // instead of materializing the m x n matrix.
  Rng rng(seed);
  std::vector<double> norms(m);
  for (std::size_t j = 0; j < m; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = rng.uniform();
      double coord = 0.0;
      if (u < params.phi[i]) {
        coord = params.mu[i] + tau * rng.normal();
      }
      const double d = coord - center[i];
      acc += d * d;
    }
    norms[j] = std::sqrt(acc);
  }

  std::size_t rank = static_cast<std::size_t>(
      std::ceil((1.0 - zeta) * static_cast<double>(m)));
  rank = std::clamp<std::size_t>(rank, 1, m);
  std::nth_element(norms.begin(), norms.begin() + (rank - 1), norms.end());
  return norms[rank - 1];
}

double plug_in_radius_squared(const DDMParams& params) {
  const std::size_t shat = select(params, 0.5).selected.size();
  return minimax_rate(params.n(), std::max<std::size_t>(shat, 1));
}

double plug_in_radius(const DDMParams& params) {
  return std::sqrt(plug_in_radius_squared(params));
}

CredibleBall build_ball(const DDMParams& params, BallMethod method,
                        double zeta, double M, std::size_t m,
                        std::uint64_t seed) {
  if (!(zeta > 0.0 && zeta < 0.5)) {
    throw ConfigError("build_ball: zeta must lie in (0, 1/2)");
  }
  if (!(M > 0.0)) throw ConfigError("build_ball: M must be positive");

  CredibleBall ball;
  ball.center = posterior_mean(params);
  ball.method = method;
  ball.zeta = zeta;
  ball.inflation_M = M;
  if (method == BallMethod::kQuantile) {
    ball.raw_radius = quantile_radius(params, zeta, m, seed);
    ball.g_n = 1.0 + std::log(static_cast<double>(params.n()));
    ball.mc_samples = m;
    ball.seed = seed;
  } else {
    ball.raw_radius = plug_in_radius(params);
    ball.g_n = 1.0;
  }
  ball.inflated_radius = M * ball.g_n * ball.raw_radius;
  return ball;
}

bool contains(const CredibleBall& ball, std::span<const double> theta) {
  if (theta.size() != ball.center.size()) {
    throw std::invalid_argument(
        "contains: theta has dimension " + std::to_string(theta.size()) +
        " but the ball lives in dimension " +
        std::to_string(ball.center.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double d = theta[i] - ball.center[i];
    acc += d * d;
  }
  return std::sqrt(acc) <= ball.inflated_radius;
}

}  // namespace ddm
