#include "ddm/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ddm/inference.hpp"
#include "ddm/math.hpp"
#include "ddm/parallel.hpp"

namespace ddm {

void TruthSpec::validate() const {
  if (n < 1) throw ConfigError("TruthSpec: n must be >= 1");
  if (const auto* s4 = std::get_if<Section4Truth>(&pattern)) {
    (void)s4;
    if (n < 11) throw ConfigError("TruthSpec: the Section4 pattern needs n >= 11");
  } else if (const auto* sr = std::get_if<SparseRandomTruth>(&pattern)) {
    if (sr->s > n) throw ConfigError("TruthSpec: s exceeds n");
    if (!std::isfinite(sr->magnitude)) {
      throw ConfigError("TruthSpec: magnitude must be finite");
    }
  } else {
    const auto& ex = std::get<ExplicitTruth>(pattern);
    if (ex.values.size() != n) {
      throw ConfigError("TruthSpec: explicit values length must equal n");
    }
    for (double v : ex.values) {
      if (!std::isfinite(v)) throw ConfigError("TruthSpec: non-finite value");
    }
  }
}

std::vector<double> TruthSpec::expand() const {
  validate();
  std::vector<double> theta(n, 0.0);
  if (const auto* s4 = std::get_if<Section4Truth>(&pattern)) {
    for (std::size_t i = 0; i < 5; ++i) theta[i] = 7.0;
    for (std::size_t i = 5; i < 10; ++i) theta[i] = 2.0;
    theta[10] = s4->theta11;
  } else if (const auto* sr = std::get_if<SparseRandomTruth>(&pattern)) {
    for (std::size_t i = 0; i < sr->s; ++i) theta[i] = sr->magnitude;
  } else {
    theta = std::get<ExplicitTruth>(pattern).values;
  }
  return theta;
}

std::vector<std::size_t> TruthSpec::support() const {
  const std::vector<double> theta = expand();
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (theta[i] != 0.0) idx.push_back(i);
  }
  return idx;
}

void ErrorSpec::validate() const {
  const double proxy = variance_proxy();
  if (!(proxy >= 0.0) || !std::isfinite(proxy)) {
    throw ConfigError("ErrorSpec: scale must be a nonnegative real");
  }
}

double ErrorSpec::variance_proxy() const {
  if (const auto* g = std::get_if<GaussianError>(&law)) return g->sigma;
  if (const auto* u = std::get_if<UniformError>(&law)) return u->half_width;
  return std::get<RademacherError>(law).scale;
}

double ErrorSpec::variance() const {
  if (const auto* g = std::get_if<GaussianError>(&law)) {
    return g->sigma * g->sigma;
  }
  if (const auto* u = std::get_if<UniformError>(&law)) {
    return u->half_width * u->half_width / 3.0;
  }
  const double c = std::get<RademacherError>(law).scale;
  return c * c;
}

void ExperimentSpec::validate() const {
  truth.validate();
  errors.validate();
  model.validate();
  if (model.n != truth.n) {
    throw ConfigError("ExperimentSpec: model.n must equal truth.n");
  }
  if (replications < 1) {
    throw ConfigError("ExperimentSpec: replications must be >= 1");
  }
  if (!(zeta > 0.0 && zeta < 0.5)) {
    throw ConfigError("ExperimentSpec: zeta must lie in (0, 1/2)");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ConfigError("ExperimentSpec: threshold must lie in (0,1)");
  }
  if (!(ball_M > 0.0) || !(ball_L > 0.0)) {
    throw ConfigError("ExperimentSpec: ball_M and ball_L must be positive");
  }
  if (target_index && *target_index >= truth.n) {
    throw ConfigError("ExperimentSpec: target_index out of range");
  }
}

std::size_t ExperimentSpec::effective_target() const {
  if (target_index) return *target_index;
  return std::holds_alternative<Section4Truth>(truth.pattern) ? 10 : 0;
}

std::vector<double> gen_data(const TruthSpec& truth, const ErrorSpec& errors,
                             std::uint64_t seed) {
  truth.validate();
  errors.validate();
  std::vector<double> y = truth.expand();
  Rng rng(seed);
  if (const auto* g = std::get_if<GaussianError>(&errors.law)) {
    for (double& v : y) v += g->sigma * rng.normal();
  } else if (const auto* u = std::get_if<UniformError>(&errors.law)) {
    for (double& v : y) v += u->half_width * (2.0 * rng.uniform() - 1.0);
  } else {
    const double c = std::get<RademacherError>(errors.law).scale;
    for (double& v : y) v += rng.uniform() < 0.5 ? -c : c;
  }
  return y;
}

namespace {

// Everything recorded for one replication; slot-indexed by rep.
struct RepRecord {
  bool covered = false;
  double length = 0.0;
  bool ball_covered = false;
  double radius = 0.0;
  double sq_error_ratio = 0.0;
  bool exact = false;
  double expected_dim = 0.0;
  double null_phi = 0.0;
  bool radius_ok = false;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const std::vector<double> theta_star = spec.truth.expand();
  const std::vector<std::size_t> s_star = spec.truth.support();
  const std::size_t n = spec.truth.n;
  const std::size_t target = spec.effective_target();
  if (target >= n) throw ConfigError("run_experiment: target out of range");
  const double eps2 =
      minimax_rate(n, std::max<std::size_t>(s_star.size(), 1));

  std::vector<char> is_signal(n, 0);
  for (std::size_t i : s_star) is_signal[i] = 1;
  const std::size_t null_count = n - s_star.size();

  std::vector<RepRecord> records(spec.replications);
  parallel_for(spec.replications, 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const std::uint64_t rep_base = derive_seed(spec.seed, r);
      const std::uint64_t data_seed = derive_seed(rep_base, 0);
      const std::uint64_t ball_seed = derive_seed(rep_base, 1);

      const std::vector<double> y =
          gen_data(spec.truth, spec.errors, data_seed);
      const DDMParams params = fit(y, spec.model);
      const SelectionResult sel = select(params, spec.threshold);
      const std::vector<double> theta_hat = posterior_mean(params);

      RepRecord rec;
      const Interval ci = marginal_interval(params, target, spec.zeta);
      rec.covered =
          ci.lower <= theta_star[target] && theta_star[target] <= ci.upper;
      rec.length = ci.length();

      const CredibleBall ball =
          build_ball(params, spec.ball_method, spec.zeta, spec.ball_M,
                     spec.mc_samples, ball_seed);
      rec.ball_covered = contains(ball, theta_star);
      rec.radius = ball.inflated_radius;
      rec.radius_ok =
          ball.raw_radius * ball.raw_radius <= spec.ball_L * eps2;

      double err2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = theta_hat[i] - theta_star[i];
        err2 += d * d;
      }
      rec.sq_error_ratio = err2 / eps2;
      rec.exact = sel.selected == s_star;
      rec.expected_dim = sel.expected_dim;
      if (null_count > 0) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (!is_signal[i]) acc += params.phi[i];
        }
        rec.null_phi = acc / static_cast<double>(null_count);
      }
      records[r] = rec;
    }
  });

  const double R = static_cast<double>(spec.replications);
  ExperimentResult out;
  out.replications = spec.replications;
  for (const RepRecord& rec : records) {
    out.coverage_marginal += rec.covered;
    out.mean_length += rec.length;
    out.coverage_ball += rec.ball_covered;
    out.mean_radius += rec.radius;
    out.mean_sq_error_ratio += rec.sq_error_ratio;
    out.selection_exact_rate += rec.exact;
    out.mean_expected_dim += rec.expected_dim;
    out.mean_null_phi += rec.null_phi;
    out.radius_bound_rate += rec.radius_ok;
  }
  out.coverage_marginal /= R;
  out.mean_length /= R;
  out.coverage_ball /= R;
  out.mean_radius /= R;
  out.mean_sq_error_ratio /= R;
  out.selection_exact_rate /= R;
  out.mean_expected_dim /= R;
  out.mean_null_phi /= R;
  out.radius_bound_rate /= R;
  out.coverage_marginal_se =
      std::sqrt(out.coverage_marginal * (1.0 - out.coverage_marginal) / R);
  return out;
}

std::vector<CurveRow> coverage_curve(const ExperimentSpec& base,
                                     std::span<const double> grid) {
  if (!std::holds_alternative<Section4Truth>(base.truth.pattern)) {
    throw ConfigError("coverage_curve: base truth must use the Section4 pattern");
  }
  std::vector<CurveRow> rows;
  rows.reserve(grid.size());
  for (double theta11 : grid) {
    ExperimentSpec spec = base;
    spec.truth.pattern = Section4Truth{theta11};
    const ExperimentResult res = run_experiment(spec);
    rows.push_back({theta11, res.coverage_marginal, res.coverage_marginal_se,
                    res.mean_length});
  }
  return rows;
}

}  // namespace ddm
