#include "ddm/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ddm/math.hpp"
#include "ddm/parallel.hpp"

namespace ddm {

void ModelConfig::validate() const {
  if (n < 1) throw ConfigError("ModelConfig: n must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw ConfigError("ModelConfig: sigma must be a positive real");
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw ConfigError("ModelConfig: gamma must be a positive real");
  if (!(a > 0.0) || !std::isfinite(a))
    throw ConfigError("ModelConfig: a must be a positive real");
  if (!(T > 0.0 && T <= 0.5))
    throw ConfigError("ModelConfig: T must lie in (0, 1/2]");
  if (!(alpha > 0.0 && alpha < 2.0 * T))
    throw ConfigError("ModelConfig: alpha must lie in (0, 2T); got alpha=" +
                      std::to_string(alpha) + ", 2T=" + std::to_string(2 * T));
}

double prior_inclusion(std::size_t n, double a) {
  if (n < 1) throw ConfigError("prior_inclusion: n must be >= 1");
  if (!(a > 0.0)) throw ConfigError("prior_inclusion: a must be positive");
  return std::pow(static_cast<double>(n), -(1.0 + a));
}

double DDMParams::tau() const { return std::sqrt(tau2); }

namespace {

double logit(double p) { return std::log(p) - std::log1p(-p); }

DDMParams make_params_shell(const ModelConfig& config) {
  config.validate();
  DDMParams params;
  params.config = config;
  params.tau2 = config.tau2();
  params.lambda_n = prior_inclusion(config.n, config.a);
  return params;
}

}  // namespace

DDMParams fit(std::span<const double> y, const ModelConfig& config) {
  DDMParams params = make_params_shell(config);
  if (y.size() != config.n) {
    throw std::invalid_argument("fit: y has length " +
                                std::to_string(y.size()) + " but config.n = " +
                                std::to_string(config.n));
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i])) {
      throw std::invalid_argument("fit: non-finite entry at index " +
                                  std::to_string(i));
    }
  }

  const double offset =
      logit(params.lambda_n) +
      0.5 * std::log(config.gamma / (config.alpha + config.gamma));
  const double slope = config.alpha / (2.0 * config.sigma * config.sigma);

  const std::size_t n = config.n;
  params.mu.assign(y.begin(), y.end());
  params.phi.resize(n);
  params.logit_phi.resize(n);
  parallel_for(n, 1 << 15, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double lg = offset + slope * y[i] * y[i];
      params.logit_phi[i] = lg;
      params.phi[i] = sigmoid(lg);
    }
  });
  return params;
}

DDMParams params_from_weights(ModelConfig config, std::vector<double> mu,
                              std::vector<double> phi) {
  DDMParams params = make_params_shell(config);
  if (mu.size() != config.n || phi.size() != config.n) {
    throw std::invalid_argument(
        "params_from_weights: mu/phi length must equal config.n");
  }
  params.logit_phi.resize(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    if (!std::isfinite(mu[i])) {
      throw std::invalid_argument("params_from_weights: non-finite mu");
    }
    if (!(phi[i] >= 0.0 && phi[i] <= 1.0)) {
      throw std::invalid_argument(
          "params_from_weights: phi entries must lie in [0,1]");
    }
    params.logit_phi[i] = logit(phi[i]);  // +-inf at the endpoints
  }
  params.mu = std::move(mu);
  params.phi = std::move(phi);
  return params;
}

double mixture_cdf(double phi, double mu, double tau, double t) {
  const double slab = phi > 0.0 ? phi * normal_cdf((t - mu) / tau) : 0.0;
  return slab + (t >= 0.0 ? 1.0 - phi : 0.0);
}

double mixture_quantile(double phi, double mu, double tau, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("mixture_quantile: p must lie in (0,1)");
  }
  if (phi <= 0.0) return 0.0;  // point mass at the origin

  const double below_zero = phi * normal_cdf(-mu / tau);  // F(0-)
  if (p < below_zero) {
    return mu + tau * normal_quantile(p / phi);
  }
  if (p <= below_zero + (1.0 - phi)) {
    return 0.0;  // p lands in the jump; the atom is the quantile
  }
  return mu + tau * normal_quantile((p - (1.0 - phi)) / phi);
}

namespace {

void check_index(const DDMParams& params, std::size_t i) {
  if (i >= params.n()) {
    throw std::out_of_range("coordinate index " + std::to_string(i) +
                            " out of range for n = " +
                            std::to_string(params.n()));
  }
}

}  // namespace

double marginal_cdf(const DDMParams& params, std::size_t i, double t) {
  check_index(params, i);
  return mixture_cdf(params.phi[i], params.mu[i], params.tau(), t);
}

double marginal_quantile(const DDMParams& params, std::size_t i, double p) {
  check_index(params, i);
  return mixture_quantile(params.phi[i], params.mu[i], params.tau(), p);
}

Draws sample(const DDMParams& params, std::size_t m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("sample: m must be >= 1");
  const std::size_t n = params.n();
  Draws out;
  out.draws = m;
  out.dim = n;
  out.values.assign(m * n, 0.0);

  Rng rng(seed);
  const double tau = params.tau();
  for (std::size_t j = 0; j < m; ++j) {
    double* row = out.values.data() + j * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = rng.uniform();
      if (u < params.phi[i]) {
        row[i] = params.mu[i] + tau * rng.normal();
      }
    }
  }
  return out;
}

double log_config_mass(const DDMParams& params,
                       std::span<const std::size_t> S) {
  const std::size_t n = params.n();
  std::vector<char> in_set(n, 0);
  for (std::size_t idx : S) {
    if (idx >= n) {
      throw std::out_of_range("log_config_mass: index " + std::to_string(idx) +
                              " out of range");
    }
    if (in_set[idx]) {
      throw std::invalid_argument("log_config_mass: duplicate index " +
                                  std::to_string(idx));
    }
    in_set[idx] = 1;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // log phi = log_sigmoid(logit), log(1-phi) = log_sigmoid(-logit)
    total += log_sigmoid(in_set[i] ? params.logit_phi[i] : -params.logit_phi[i]);
  }
  return total;
}

}  // namespace ddm
