#pragma once

// Serialization: JSON records for params / balls / experiment specs and
// results, CSV emitters, the single-column data reader, atomic file writes.
// Numbers round-trip exactly (shortest-representation doubles in JSON,
// %.17g in CSV); CSV uses '.' decimals, ',' separators, '\n' line ends.

#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ddm/core.hpp"
#include "ddm/credible_ball.hpp"
#include "ddm/sim.hpp"

namespace ddm {

std::string format_double(double v);  // %.17g

nlohmann::json config_to_json(const ModelConfig& config);
ModelConfig config_from_json(const nlohmann::json& j);

// {n, sigma, alpha, gamma, a, tau2, lambda_n, mu: [...], phi: [...]}
nlohmann::json params_record(const DDMParams& params);
// Rebuilds params from the record; tau2/lambda_n are recomputed from the
// config fields and cross-checked against the stored values. The record
// carries no MGF window, so T is restored as 1/4 when alpha < 1/2 and 1/2
// otherwise (any stored alpha is < 1, so this always validates).
DDMParams params_from_record(const nlohmann::json& j);

// {method, zeta, M, g_n, raw_radius, inflated_radius, mc_samples, seed}
nlohmann::json ball_to_json(const CredibleBall& ball);

std::string ball_method_name(BallMethod method);
BallMethod ball_method_from_name(const std::string& name);

nlohmann::json experiment_to_json(const ExperimentSpec& spec);
ExperimentSpec experiment_from_json(const nlohmann::json& j);

nlohmann::json result_to_json(const ExperimentResult& result);

// Fixed, documented header naming every ExperimentResult field.
std::string result_csv_header();
std::string result_csv_row(const ExperimentResult& result);

std::string curve_csv_header();  // theta11,coverage,se,mean_length
std::string curve_csv_row(const CurveRow& row);

// One real per line; an optional single non-numeric header line is allowed
// at the top. Parse failures raise ParseError with the line number; an
// empty file (no data rows) is an error.
std::vector<double> read_column(std::istream& in, const std::string& name);
std::vector<double> read_column_file(const std::filesystem::path& path);

// Writes via a temp file in the same directory plus rename.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

}  // namespace ddm
