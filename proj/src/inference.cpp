#include "ddm/inference.hpp"

#include <cmath>
#include <string>

namespace ddm {

std::vector<double> posterior_mean(const DDMParams& params) {
  const std::size_t n = params.n();
  std::vector<double> mean(n);
  for (std::size_t i = 0; i < n; ++i) {
    mean[i] = params.phi[i] * params.mu[i];
  }
  return mean;
}

SelectionResult select(const DDMParams& params, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ConfigError("select: threshold must lie in (0,1)");
  }
  SelectionResult result;
  result.threshold = threshold;
  result.phi = params.phi;
  double dim = 0.0;
  for (std::size_t i = 0; i < params.n(); ++i) {
    dim += params.phi[i];
    if (params.phi[i] > threshold) result.selected.push_back(i);
  }
  result.expected_dim = dim;
  return result;
}

Interval marginal_interval(const DDMParams& params, std::size_t i,
                           double zeta) {
  if (!(zeta > 0.0 && zeta < 0.5)) {
    throw ConfigError("marginal_interval: zeta must lie in (0, 1/2)");
  }
  Interval interval;
  interval.lower = marginal_quantile(params, i, zeta / 2.0);
  interval.upper = marginal_quantile(params, i, 1.0 - zeta / 2.0);
  interval.contains_atom_at_zero =
      interval.lower <= 0.0 && 0.0 <= interval.upper && params.phi[i] < 1.0;
  return interval;
}

double minimax_rate(std::size_t n, std::size_t s) {
  if (n < 1) throw ConfigError("minimax_rate: n must be >= 1");
  if (s > n) {
    throw ConfigError("minimax_rate: s = " + std::to_string(s) +
                      " exceeds n = " + std::to_string(n));
  }
  if (s == 0) return 0.0;
  const double sd = static_cast<double>(s);
  return sd * (1.0 + std::log(static_cast<double>(n) / sd));
}

double beta_min(double n, double sigma, double alpha, double a, double K) {
  if (!(n >= 1.0)) throw ConfigError("beta_min: n must be >= 1");
  if (!(sigma > 0.0) || !(alpha > 0.0) || !(a > 0.0)) {
    throw ConfigError("beta_min: sigma, alpha, a must be positive");
  }
  if (!(K > 2.0 + a)) {
    throw ConfigError("beta_min: K must exceed 2 + a (theorem hypothesis); "
                      "got K = " + std::to_string(K) +
                      ", 2 + a = " + std::to_string(2.0 + a));
  }
  return sigma * std::sqrt(2.0 * K * std::log(n) / alpha);
}

double beta_min(const ModelConfig& config, double K) {
  config.validate();
  return beta_min(static_cast<double>(config.n), config.sigma, config.alpha,
                  config.a, K);
}

}  // namespace ddm
