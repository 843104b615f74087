#include "ddm/io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace ddm {

namespace {

using nlohmann::json;

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ParseError(std::string("missing or non-numeric field '") + key +
                     "'");
  }
  return j.at(key).get<double>();
}

std::uint64_t require_uint(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned()) {
    throw ParseError(std::string("missing or non-unsigned field '") + key +
                     "'");
  }
  return j.at(key).get<std::uint64_t>();
}

std::size_t require_size(const json& j, const char* key) {
  return static_cast<std::size_t>(require_uint(j, key));
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json config_to_json(const ModelConfig& config) {
  return json{{"n", config.n},         {"sigma", config.sigma},
              {"alpha", config.alpha}, {"gamma", config.gamma},
              {"a", config.a},         {"T", config.T},
              {"rng_seed", config.rng_seed}};
}

ModelConfig config_from_json(const json& j) {
  ModelConfig config;
  config.n = require_size(j, "n");
  config.sigma = require_number(j, "sigma");
  config.alpha = require_number(j, "alpha");
  config.gamma = require_number(j, "gamma");
  config.a = require_number(j, "a");
  if (j.contains("T")) config.T = require_number(j, "T");
  if (j.contains("rng_seed")) config.rng_seed = require_uint(j, "rng_seed");
  config.validate();
  return config;
}

json params_record(const DDMParams& params) {
  return json{{"n", params.config.n},
              {"sigma", params.config.sigma},
              {"alpha", params.config.alpha},
              {"gamma", params.config.gamma},
              {"a", params.config.a},
              {"tau2", params.tau2},
              {"lambda_n", params.lambda_n},
              {"mu", params.mu},
              {"phi", params.phi}};
}

DDMParams params_from_record(const json& j) {
  ModelConfig config;
  config.n = require_size(j, "n");
  config.sigma = require_number(j, "sigma");
  config.alpha = require_number(j, "alpha");
  config.gamma = require_number(j, "gamma");
  config.a = require_number(j, "a");
  config.T = config.alpha < 0.5 ? 0.25 : 0.5;
  if (!j.contains("mu") || !j.at("mu").is_array() || !j.contains("phi") ||
      !j.at("phi").is_array()) {
    throw ParseError("params record: 'mu' and 'phi' arrays are required");
  }
  auto mu = j.at("mu").get<std::vector<double>>();
  auto phi = j.at("phi").get<std::vector<double>>();
  DDMParams params =
      params_from_weights(config, std::move(mu), std::move(phi));

  const double tau2 = require_number(j, "tau2");
  const double lambda_n = require_number(j, "lambda_n");
  if (std::abs(tau2 - params.tau2) > 1e-12 * std::max(1.0, params.tau2) ||
      std::abs(lambda_n - params.lambda_n) >
          1e-12 * std::max(1.0, params.lambda_n)) {
    throw ParseError(
        "params record: stored tau2/lambda_n disagree with the config fields");
  }
  return params;
}

std::string ball_method_name(BallMethod method) {
  return method == BallMethod::kQuantile ? "quantile" : "plug_in";
}

BallMethod ball_method_from_name(const std::string& name) {
  if (name == "quantile") return BallMethod::kQuantile;
  if (name == "plug_in") return BallMethod::kPlugIn;
  throw ParseError("unknown ball method '" + name +
                   "' (expected 'quantile' or 'plug_in')");
}

json ball_to_json(const CredibleBall& ball) {
  json j{{"method", ball_method_name(ball.method)},
         {"zeta", ball.zeta},
         {"M", ball.inflation_M},
         {"g_n", ball.g_n},
         {"raw_radius", ball.raw_radius},
         {"inflated_radius", ball.inflated_radius}};
  if (ball.mc_samples) j["mc_samples"] = *ball.mc_samples;
  if (ball.seed) j["seed"] = *ball.seed;
  return j;
}

json experiment_to_json(const ExperimentSpec& spec) {
  json truth{{"n", spec.truth.n}};
  if (const auto* s4 = std::get_if<Section4Truth>(&spec.truth.pattern)) {
    truth["pattern"] = json{{"type", "section4"}, {"theta11", s4->theta11}};
  } else if (const auto* sr =
                 std::get_if<SparseRandomTruth>(&spec.truth.pattern)) {
    truth["pattern"] = json{
        {"type", "sparse_random"}, {"s", sr->s}, {"magnitude", sr->magnitude}};
  } else {
    truth["pattern"] = json{
        {"type", "explicit"},
        {"values", std::get<ExplicitTruth>(spec.truth.pattern).values}};
  }

  json errors;
  if (const auto* g = std::get_if<GaussianError>(&spec.errors.law)) {
    errors = json{{"law", "gaussian"}, {"sigma", g->sigma}};
  } else if (const auto* u = std::get_if<UniformError>(&spec.errors.law)) {
    errors = json{{"law", "uniform"}, {"half_width", u->half_width}};
  } else {
    errors = json{{"law", "rademacher"},
                  {"scale", std::get<RademacherError>(spec.errors.law).scale}};
  }

  json j{{"truth", truth},
         {"errors", errors},
         {"model", config_to_json(spec.model)},
         {"replications", spec.replications},
         {"zeta", spec.zeta},
         {"seed", spec.seed},
         {"ball_method", ball_method_name(spec.ball_method)},
         {"ball_M", spec.ball_M},
         {"ball_L", spec.ball_L},
         {"mc_samples", spec.mc_samples},
         {"threshold", spec.threshold}};
  if (spec.target_index) j["target_index"] = *spec.target_index;
  return j;
}

ExperimentSpec experiment_from_json(const json& j) {
  ExperimentSpec spec;
  if (!j.contains("truth") || !j.contains("errors") || !j.contains("model")) {
    throw ParseError("experiment spec: 'truth', 'errors', 'model' are required");
  }

  const json& truth = j.at("truth");
  spec.truth.n = require_size(truth, "n");
  if (!truth.contains("pattern") || !truth.at("pattern").contains("type")) {
    throw ParseError("experiment spec: truth.pattern.type is required");
  }
  const json& pattern = truth.at("pattern");
  const std::string type = pattern.at("type").get<std::string>();
  if (type == "section4") {
    spec.truth.pattern = Section4Truth{require_number(pattern, "theta11")};
  } else if (type == "sparse_random") {
    spec.truth.pattern = SparseRandomTruth{
        require_size(pattern, "s"), require_number(pattern, "magnitude")};
  } else if (type == "explicit") {
    if (!pattern.contains("values") || !pattern.at("values").is_array()) {
      throw ParseError("experiment spec: explicit pattern needs 'values'");
    }
    spec.truth.pattern =
        ExplicitTruth{pattern.at("values").get<std::vector<double>>()};
  } else {
    throw ParseError("experiment spec: unknown truth pattern '" + type + "'");
  }

  const json& errors = j.at("errors");
  const std::string law = errors.value("law", std::string{});
  if (law == "gaussian") {
    spec.errors.law = GaussianError{require_number(errors, "sigma")};
  } else if (law == "uniform") {
    spec.errors.law = UniformError{require_number(errors, "half_width")};
  } else if (law == "rademacher") {
    spec.errors.law = RademacherError{require_number(errors, "scale")};
  } else {
    throw ParseError("experiment spec: unknown error law '" + law + "'");
  }

  spec.model = config_from_json(j.at("model"));
  spec.replications = require_size(j, "replications");
  spec.zeta = require_number(j, "zeta");
  if (j.contains("target_index")) {
    spec.target_index = require_size(j, "target_index");
  }
  spec.seed = require_uint(j, "seed");
  if (j.contains("ball_method")) {
    spec.ball_method =
        ball_method_from_name(j.at("ball_method").get<std::string>());
  }
  if (j.contains("ball_M")) spec.ball_M = require_number(j, "ball_M");
  if (j.contains("ball_L")) spec.ball_L = require_number(j, "ball_L");
  if (j.contains("mc_samples")) spec.mc_samples = require_size(j, "mc_samples");
  if (j.contains("threshold")) spec.threshold = require_number(j, "threshold");
  spec.validate();
  return spec;
}

json result_to_json(const ExperimentResult& result) {
  return json{{"replications", result.replications},
              {"coverage_marginal", result.coverage_marginal},
              {"coverage_marginal_se", result.coverage_marginal_se},
              {"mean_length", result.mean_length},
              {"coverage_ball", result.coverage_ball},
              {"mean_radius", result.mean_radius},
              {"mean_sq_error_ratio", result.mean_sq_error_ratio},
              {"selection_exact_rate", result.selection_exact_rate},
              {"mean_expected_dim", result.mean_expected_dim},
              {"mean_null_phi", result.mean_null_phi},
              {"radius_bound_rate", result.radius_bound_rate}};
}

std::string result_csv_header() {
  return "replications,coverage_marginal,coverage_marginal_se,mean_length,"
         "coverage_ball,mean_radius,mean_sq_error_ratio,selection_exact_rate,"
         "mean_expected_dim,mean_null_phi,radius_bound_rate";
}

std::string result_csv_row(const ExperimentResult& r) {
  std::ostringstream out;
  out << r.replications << ',' << format_double(r.coverage_marginal) << ','
      << format_double(r.coverage_marginal_se) << ','
      << format_double(r.mean_length) << ',' << format_double(r.coverage_ball)
      << ',' << format_double(r.mean_radius) << ','
      << format_double(r.mean_sq_error_ratio) << ','
      << format_double(r.selection_exact_rate) << ','
      << format_double(r.mean_expected_dim) << ','
      << format_double(r.mean_null_phi) << ','
      << format_double(r.radius_bound_rate);
  return out.str();
}

std::string curve_csv_header() { return "theta11,coverage,se,mean_length"; }

std::string curve_csv_row(const CurveRow& row) {
  std::ostringstream out;
  out << format_double(row.theta11) << ',' << format_double(row.coverage)
      << ',' << format_double(row.se) << ','
      << format_double(row.mean_length);
  return out.str();
}

std::vector<double> read_column(std::istream& in, const std::string& name) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool pending_blank = false;
  std::size_t blank_line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) {
      // Blank lines are only tolerated at the end of the file.
      if (!pending_blank) {
        pending_blank = true;
        blank_line_no = line_no;
      }
      continue;
    }
    if (pending_blank) {
      throw ParseError(name + ":" + std::to_string(blank_line_no) +
                       ": blank line inside the data column");
    }
    const auto last = line.find_last_not_of(" \t");
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
      if (line_no == 1 && values.empty()) continue;  // header line
      throw ParseError(name + ":" + std::to_string(line_no) +
                       ": cannot parse '" + line.substr(first, last - first + 1) +
                       "' as a finite real");
    }
    values.push_back(value);
  }
  if (values.empty()) {
    throw ParseError(name + ": no data rows found");
  }
  return values;
}

std::vector<double> read_column_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open input file '" + path.string() + "'");
  }
  return read_column(in, path.filename().string());
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open '" + tmp.string() +
                               "' for writing");
    }
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw std::runtime_error("short write to '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw std::runtime_error("cannot move '" + tmp.string() + "' into place: " +
                             ec.message());
  }
}

}  // namespace ddm
