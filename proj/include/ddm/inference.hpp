#pragma once

// Point estimation, structure selection, marginal credible intervals, and
// the benchmark quantities (minimax rate, beta-min threshold).

#include <cstddef>
#include <vector>

#include "ddm/core.hpp"

namespace ddm {

// Estimated configuration S-hat = {i : phi_i > threshold} (strict; ties at
// the threshold are excluded) plus the measure's expected dimension sum phi_i.
struct SelectionResult {
  std::vector<std::size_t> selected;  // sorted
  std::vector<double> phi;            // copy of the weights
  double threshold = 0.5;
  double expected_dim = 0.0;
};

// Mean vector: theta_hat_i = phi_i * mu_i.
std::vector<double> posterior_mean(const DDMParams& params);

SelectionResult select(const DDMParams& params, double threshold = 0.5);

// Equal-tailed interval [Q(zeta/2), Q(1 - zeta/2)] of the coordinate
// marginal; zeta in (0, 1/2). contains_atom_at_zero flags intervals whose
// mass includes the point mass at the origin.
Interval marginal_interval(const DDMParams& params, std::size_t i,
                           double zeta);

// eps_n^2(s) = s log(en/s), the minimax squared l2 rate; 0 at s = 0 by
// continuity. Requires s <= n. Increasing in s on [0, n].
double minimax_rate(std::size_t n, std::size_t s);

// Beta-min threshold H = sigma sqrt(2 K log(n) / alpha); requires K > 2 + a.
// The real-n overload exists because H only depends on n through log(n).
double beta_min(double n, double sigma, double alpha, double a, double K);
double beta_min(const ModelConfig& config, double K);

}  // namespace ddm
