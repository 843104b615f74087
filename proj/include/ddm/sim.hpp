#pragma once

// Replicated synthetic experiments under Y = theta_star + Z: coverage,
// interval length, squared-error rate, selection and credible-ball
// statistics, aggregated over independent seeded replications.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "ddm/core.hpp"
#include "ddm/credible_ball.hpp"

namespace ddm {

// theta_star = (7,7,7,7,7, 2,2,2,2,2, theta11, 0, ..., 0); needs n >= 11.
struct Section4Truth {
  double theta11 = 0.0;
};

// s signals of the given magnitude at coordinates 0..s-1, the rest zero.
// (Signal positions are exchangeable for every statistic reported here, so
// the placement is fixed for reproducibility.)
struct SparseRandomTruth {
  std::size_t s = 0;
  double magnitude = 0.0;
};

struct ExplicitTruth {
  std::vector<double> values;
};

struct TruthSpec {
  std::size_t n = 0;
  std::variant<Section4Truth, SparseRandomTruth, ExplicitTruth> pattern;

  void validate() const;
  std::vector<double> expand() const;
  std::vector<std::size_t> support() const;  // sorted nonzero coordinates
};

// Subgaussian error menu; each law carries its analytic variance proxy
// (Gaussian: sigma; Uniform[-b,b]: b; Rademacher*c: c), which dominates the
// law's standard deviation as the subgaussian MGF bound requires. Zero scale
// is allowed and yields noiseless data.
struct GaussianError {
  double sigma = 1.0;
};
struct UniformError {
  double half_width = 1.0;
};
struct RademacherError {
  double scale = 1.0;
};

struct ErrorSpec {
  std::variant<GaussianError, UniformError, RademacherError> law;

  void validate() const;
  double variance_proxy() const;
  double variance() const;
};

struct ExperimentSpec {
  TruthSpec truth;
  ErrorSpec errors;
  ModelConfig model;
  std::size_t replications = 1;
  double zeta = 0.05;
  std::optional<std::size_t> target_index;  // default: 10 for Section4, else 0
  std::uint64_t seed = 0;
  BallMethod ball_method = BallMethod::kPlugIn;
  double ball_M = 1.0;
  double ball_L = 2.0;  // radius-efficiency factor in the L*eps_n^2 bound
  std::size_t mc_samples = 10000;
  double threshold = 0.5;

  void validate() const;
  std::size_t effective_target() const;
};

struct ExperimentResult {
  std::size_t replications = 0;
  double coverage_marginal = 0.0;     // target-coordinate interval covers
  double coverage_marginal_se = 0.0;  // binomial standard error
  double mean_length = 0.0;           // mean target-interval length
  double coverage_ball = 0.0;         // inflated ball contains theta_star
  double mean_radius = 0.0;           // mean inflated radius
  double mean_sq_error_ratio = 0.0;   // E||theta_hat-theta_star||^2/eps_n^2
  double selection_exact_rate = 0.0;  // fraction of reps with S_hat == S_star
  double mean_expected_dim = 0.0;     // mean sum phi_i
  double mean_null_phi = 0.0;         // mean phi_i over i outside S_star
  double radius_bound_rate = 0.0;     // fraction with raw^2 <= L * eps_n^2
};

// Y = theta_star + Z, iid Z per ErrorSpec; deterministic given seed.
std::vector<double> gen_data(const TruthSpec& truth, const ErrorSpec& errors,
                             std::uint64_t seed);

// Runs spec.replications independent replications (replication r uses the
// SplitMix64-derived seeds documented in math.hpp) and aggregates. The
// replication loop is parallel; per-replication records land in fixed slots
// and are reduced sequentially, so the result is bit-identical for every
// thread count. For a null truth the squared-error denominator is floored
// to eps_n^2(1), mirroring the plug-in radius convention.
ExperimentResult run_experiment(const ExperimentSpec& spec);

struct CurveRow {
  double theta11 = 0.0;
  double coverage = 0.0;
  double se = 0.0;
  double mean_length = 0.0;
};

// One run_experiment per grid value of theta11; base.truth must be Section4.
std::vector<CurveRow> coverage_curve(const ExperimentSpec& base,
                                     std::span<const double> grid);

}  // namespace ddm
