#pragma once

// Data-dependent measure for the sparse sequence model Y_i = theta_i + Z_i:
// a product over coordinates of
//
//   phi_i * N(mu_i, tau^2) + (1 - phi_i) * delta_0
//
// with closed-form parameters
//
//   mu_i        = y_i
//   tau^2       = sigma^2 / (alpha + gamma)
//   logit phi_i = logit(lambda_n) + (1/2) log{gamma/(alpha+gamma)}
//                 + alpha y_i^2 / (2 sigma^2),     lambda_n = n^{-(1+a)}.
//
// Fitting is a single O(n) pass; no sampling or optimization is involved.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ddm/errors.hpp"

namespace ddm {

// All fixed knobs of the measure. sigma is the (known) subgaussian variance
// proxy of the error law; T is the upper endpoint of the MGF window of
// (Z/sigma)^2 (1/4 covers every subgaussian law, 1/2 is exact for Gaussian);
// alpha must stay below 2T.
struct ModelConfig {
  std::size_t n = 0;
  double sigma = 1.0;
  double alpha = 0.49;
  double gamma = 1.0;
  double a = 1.0;
  double T = 0.25;
  std::uint64_t rng_seed = 0;

  double tau2() const { return sigma * sigma / (alpha + gamma); }

  // Throws ConfigError on any violated invariant.
  void validate() const;
};

// Prior inclusion probability lambda_n = n^{-(1+a)}.
double prior_inclusion(std::size_t n, double a);

// The fitted measure. Immutable after construction; safe to share across
// threads. logit_phi is kept alongside phi because the y_i^2 term reaches
// ~1e12 at the target scale and products of (1-phi_i) need the stable
// -log1pexp(logit) form.
struct DDMParams {
  ModelConfig config;
  std::vector<double> mu;
  std::vector<double> phi;
  std::vector<double> logit_phi;
  double tau2 = 0.0;
  double lambda_n = 0.0;

  std::size_t n() const { return mu.size(); }
  double tau() const;
};

// Closed-form fit. Parallel over coordinates for large n; the result is
// a pure function of (y, config).
DDMParams fit(std::span<const double> y, const ModelConfig& config);

// Assembles params from explicit slab weights (tests, deserialization).
// tau2 and lambda_n are always recomputed from config; logit_phi from phi.
DDMParams params_from_weights(ModelConfig config, std::vector<double> mu,
                              std::vector<double> phi);

// Marginal credible interval carrier.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool contains_atom_at_zero = false;

  double length() const { return upper - lower; }
};

// cdf / quantile of the scalar two-point mixture phi*N(mu,tau^2)+(1-phi)*delta_0.
double mixture_cdf(double phi, double mu, double tau, double t);
// inf{t : F(t) >= p}; returns exactly 0 whenever p lands in the atom's jump.
double mixture_quantile(double phi, double mu, double tau, double p);

// Coordinate marginal cdf at t; right-continuous with an atom at 0.
double marginal_cdf(const DDMParams& params, std::size_t i, double t);

// Coordinate marginal quantile, p in (0,1).
double marginal_quantile(const DDMParams& params, std::size_t i, double p);

// m independent draws from the measure, row-major m x n.
struct Draws {
  std::size_t draws = 0;
  std::size_t dim = 0;
  std::vector<double> values;

  std::span<const double> row(std::size_t j) const {
    return {values.data() + j * dim, dim};
  }
};

// theta_i = B_i (mu_i + tau G_i), B_i ~ Bernoulli(phi_i) independently.
// Draw scheme (part of the determinism contract): coordinate-major within
// each draw, one uniform per coordinate, one further uniform for the slab
// normal only when the Bernoulli fires. Same seed => bit-identical output.
Draws sample(const DDMParams& params, std::size_t m, std::uint64_t seed);

// log of the configuration mass delta^n(S) = prod_{i in S} phi_i *
// prod_{i not in S} (1 - phi_i); -inf when any factor vanishes.
double log_config_mass(const DDMParams& params,
                       std::span<const std::size_t> S);

}  // namespace ddm
