// Copyright 2026 The chimpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chimpe/circuit.hpp"
#include "chimpe/measures.hpp"

namespace chimpe {

/// Linearity threshold on R^2 for calling E_chi(F) linear.
inline constexpr double kLinearR2Threshold = 0.999;

std::vector<double> log_grid(double lo, double hi, std::size_t count);
std::vector<double> linear_grid(double lo, double hi, std::size_t count);
/// "log:LO:HI:COUNT", "lin:LO:HI:COUNT" or a comma-separated list.
std::vector<double> parse_sigma_grid(std::string_view spec);
/// Comma-separated positive integers, e.g. "1,2,3".
std::vector<std::size_t> parse_index_list(std::string_view spec);

struct ScanConfig {
  std::size_t n_qubits = 12;
  std::vector<std::size_t> depths{1};
  std::vector<std::size_t> chis{1, 2, 3, 4, 5};
  std::vector<double> sigmas = log_grid(0.25, 16.0, 16);
  double mu = 5.0;
  std::size_t seeds = 3;
  std::uint64_t base_seed = 0;
  MpeOptions mpe{};
  FitOptions fit{};
};

/// Throws std::invalid_argument on an unusable configuration.
void validate(const ScanConfig& config);

/// One (D, chi, sigma, seed) observation. `seed` drives the random state and
/// both optimizers; nullopt distances are orthogonal outcomes.
struct ScalingRecord {
  std::size_t depth = 1;
  std::size_t chi = 1;
  double sigma = 0.0;
  double mu = 0.0;
  std::uint64_t seed = 0;
  std::optional<double> f_bits;
  std::optional<double> e_bits;
  bool f_converged = false;
  bool e_converged = false;
};

using ProgressFn = std::function<void(const std::string&)>;

/// For every (sigma, seed): one RPS, E_chi for each chi (independent of D),
/// and F for each depth. Records come back sorted by (D, sigma, seed, chi).
std::vector<ScalingRecord> scan_scaling(const ScanConfig& config, const ProgressFn& progress = {});

enum class Scaling { kSuperLinear, kLinear, kSubLinear };
const char* to_string(Scaling s);

struct FitReport {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_through_origin = 0.0;
  std::size_t n_points = 0;
  std::size_t chi = 0;
  std::size_t depth = 0;
  Scaling classification = Scaling::kLinear;
};

using FePoint = std::pair<double, double>;  // (F, E)

/// OLS with intercept of E on F. Linear when R^2 > threshold, otherwise the
/// majority sign of the top third of points by F, measured against the line
/// fitted to the other two thirds, decides (positive: super-linear, negative:
/// sub-linear). Needs >= 3 points with
/// distinct F values; throws DegenerateFitError otherwise.
FitReport linear_fit_r2(std::span<const FePoint> points, double threshold = kLinearR2Threshold);

/// One FitReport per (depth, chi) present in `records`, orthogonal records
/// skipped, sorted by (depth, chi).
std::vector<FitReport> fit_records(std::span<const ScalingRecord> records,
                                   double threshold = kLinearR2Threshold);

struct DepthChiRow {
  std::size_t depth = 0;
  std::vector<std::size_t> linear_chis;  // R^2 > threshold
  std::size_t argmax_chi = 0;
  double argmax_r_squared = 0.0;
};

std::vector<DepthChiRow> depth_chi_table(std::span<const FitReport> reports,
                                         double threshold = kLinearR2Threshold);

struct TableRun {
  std::vector<ScalingRecord> records;
  std::vector<FitReport> reports;
  std::vector<DepthChiRow> rows;
};

/// Scan over depths 1..max_depth and chi 1..max_chi, then tabulate.
TableRun run_depth_chi_table(ScanConfig config, std::size_t max_depth, std::size_t max_chi,
                             double threshold = kLinearR2Threshold,
                             const ProgressFn& progress = {});

inline constexpr std::string_view kCsvHeader =
    "depth,chi,sigma,mu,seed,F_bits,E_bits,f_converged,e_converged";

std::string records_to_csv(std::span<const ScalingRecord> records);
std::vector<ScalingRecord> records_from_csv(std::string_view text);

/// JSON report with config echo, fits, optional table, library version and
/// the conventions the numbers depend on. `timestamp` is the only
/// non-deterministic field.
nlohmann::json build_report(const ScanConfig& config, std::span<const FitReport> reports,
                            std::span<const DepthChiRow> rows, const std::string& timestamp);

std::string library_version();
std::string utc_timestamp();

/// Writes the CSV and the JSON report; IoError names the failing path.
void emit_results(std::span<const ScalingRecord> records, std::span<const FitReport> reports,
                  std::span<const DepthChiRow> rows, const ScanConfig& config,
                  const std::filesystem::path& csv_path,
                  const std::optional<std::filesystem::path>& report_path);

}  // namespace chimpe
