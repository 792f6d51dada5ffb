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

#include "chimpe/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <map>
#include <sstream>

#include "chimpe/error.hpp"
#include "chimpe/io.hpp"
#include "chimpe/random_states.hpp"

#ifndef CHIMPE_VERSION
#define CHIMPE_VERSION "0.0.0"
#endif

namespace chimpe {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a non-negative integer: '" + std::string(s) + "'");
  }
  return v;
}

// Shortest representation that parses back to the same double.
void append_double(std::string& out, double v) {
  if (std::isinf(v)) {
    out += v > 0 ? "inf" : "-inf";
    return;
  }
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

std::optional<double> optional_distance(std::string_view s) {
  const double v = parse_double(s);
  if (std::isinf(v)) return std::nullopt;
  return v;
}

// (slope, intercept); nullopt when F has no spread.
std::optional<std::pair<double, double>> ols(std::span<const FePoint> points) {
  const auto n = static_cast<double>(points.size());
  double mf = 0.0;
  double me = 0.0;
  for (const auto& [f, e] : points) {
    mf += f;
    me += e;
  }
  mf /= n;
  me /= n;
  double sff = 0.0;
  double sfe = 0.0;
  for (const auto& [f, e] : points) {
    sff += (f - mf) * (f - mf);
    sfe += (f - mf) * (e - me);
  }
  if (!(sff > 0.0)) return std::nullopt;
  const double k = sfe / sff;
  return std::pair{k, me - k * mf};
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) {
    throw std::invalid_argument("log grid needs 0 < lo <= hi and count >= 1");
  }
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    out[i] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
  }
  out.back() = hi;
  return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (!(hi >= lo) || count == 0) throw std::invalid_argument("linear grid needs lo <= hi");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    out[i] = lo + t * (hi - lo);
  }
  return out;
}

std::vector<double> parse_sigma_grid(std::string_view spec) {
  spec = trim(spec);
  if (spec.starts_with("log:") || spec.starts_with("lin:")) {
    const auto parts = split(spec.substr(4), ':');
    if (parts.size() != 3) throw std::invalid_argument("grid spec must be KIND:LO:HI:COUNT");
    const double lo = parse_double(parts[0]);
    const double hi = parse_double(parts[1]);
    const auto count = static_cast<std::size_t>(parse_unsigned(parts[2]));
    return spec.starts_with("log:") ? log_grid(lo, hi, count) : linear_grid(lo, hi, count);
  }
  std::vector<double> out;
  for (auto part : split(spec, ',')) {
    const double v = parse_double(part);
    if (!(v >= 0.0)) throw std::invalid_argument("sigma values must be >= 0");
    out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> parse_index_list(std::string_view spec) {
  std::vector<std::size_t> out;
  for (auto part : split(trim(spec), ',')) {
    const auto v = static_cast<std::size_t>(parse_unsigned(part));
    if (v == 0) throw std::invalid_argument("list entries must be positive");
    out.push_back(v);
  }
  return out;
}

void validate(const ScanConfig& c) {
  if (c.n_qubits < 2 || c.n_qubits > kDefaultDenseCap) {
    throw std::invalid_argument("scan qubit count must be in [2, " +
                                std::to_string(kDefaultDenseCap) + "]");
  }
  if (c.depths.empty() || c.chis.empty() || c.sigmas.empty() || c.seeds == 0) {
    throw std::invalid_argument("scan needs depths, chis, sigmas and at least one seed");
  }
  for (auto d : c.depths) {
    if (d == 0) throw std::invalid_argument("depths must be positive");
  }
  for (auto chi : c.chis) {
    if (chi == 0) throw std::invalid_argument("chi values must be positive");
  }
  for (double s : c.sigmas) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("sigma values must be >= 0");
    if (s == 0.0 && c.mu == 0.0) throw std::invalid_argument("sigma = 0 requires mu != 0");
  }
  if (c.mpe.restarts < 1 || c.fit.restarts < 1) {
    throw std::invalid_argument("restart counts must be positive");
  }
}

std::vector<ScalingRecord> scan_scaling(const ScanConfig& config, const ProgressFn& progress) {
  validate(config);
  std::vector<std::size_t> depths = config.depths;
  std::vector<std::size_t> chis = config.chis;
  std::sort(depths.begin(), depths.end());
  depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
  std::sort(chis.begin(), chis.end());
  chis.erase(std::unique(chis.begin(), chis.end()), chis.end());

  std::vector<ScalingRecord> records;
  for (std::size_t si = 0; si < config.sigmas.size(); ++si) {
    const double sigma = config.sigmas[si];
    for (std::size_t k = 0; k < config.seeds; ++k) {
      const std::uint64_t seed = config.base_seed + k;
      const DenseState psi = generalized_rps({config.n_qubits, config.mu, sigma, seed});

      std::vector<MpeResult> mpe;
      for (std::size_t chi : chis) {
        MpeOptions opt = config.mpe;
        opt.seed = seed;
        mpe.push_back(chi_mpe(psi, chi, opt));
      }
      for (std::size_t depth : depths) {
        FitOptions opt = config.fit;
        opt.seed = seed;
        opt.initial.reset();
        const FitResult fit = fit_circuit(psi, depth, opt);
        for (std::size_t c = 0; c < chis.size(); ++c) {
          records.push_back({depth, chis[c], sigma, config.mu, seed, fit.f_bits,
                             mpe[c].value_bits, fit.converged, mpe[c].converged});
        }
        if (progress) {
          std::ostringstream msg;
          msg << "sigma=" << sigma << " seed=" << seed << " D=" << depth
              << " F=" << fit.f_bits.value_or(kInf);
          progress(msg.str());
        }
      }
    }
  }
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    if (a.depth != b.depth) return a.depth < b.depth;
    if (a.sigma != b.sigma) return a.sigma < b.sigma;
    if (a.seed != b.seed) return a.seed < b.seed;
    return a.chi < b.chi;
  });
  return records;
}

const char* to_string(Scaling s) {
  switch (s) {
    case Scaling::kSuperLinear:
      return "super-linear";
    case Scaling::kLinear:
      return "linear";
    case Scaling::kSubLinear:
      return "sub-linear";
  }
  return "unknown";
}

FitReport linear_fit_r2(std::span<const FePoint> points, double threshold) {
  const std::size_t n = points.size();
  if (n < 3) throw DegenerateFitError("a linear fit needs at least 3 points");
  const auto full = ols(points);
  if (!full) throw DegenerateFitError("all F values are identical");

  FitReport r;
  r.n_points = n;
  r.slope = full->first;
  r.intercept = full->second;
  double me = 0.0;
  double s_ff = 0.0;
  double s_fe = 0.0;
  for (const auto& [f, e] : points) {
    me += e;
    s_ff += f * f;
    s_fe += f * e;
  }
  me /= static_cast<double>(n);
  r.slope_through_origin = s_fe / s_ff;
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (const auto& [f, e] : points) {
    const double d = e - (r.slope * f + r.intercept);
    ss_res += d * d;
    ss_tot += (e - me) * (e - me);
  }
  r.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;

  if (r.r_squared > threshold) {
    r.classification = Scaling::kLinear;
    return r;
  }
  // Residuals of the upper F-tercile against the line through the lower two
  // terciles. Any strictly convex curve lies above that line past its last
  // crossing, so the sign is set by the bow whatever the F spacing.
  std::vector<FePoint> sorted(points.begin(), points.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  const std::size_t top = (n + 2) / 3;
  const auto lower = ols(std::span<const FePoint>(sorted).first(n - top));
  const auto [k, b] = lower.value_or(*full);
  int positive = 0;
  int negative = 0;
  double mean = 0.0;
  for (std::size_t i = n - top; i < n; ++i) {
    const double d = sorted[i].second - (k * sorted[i].first + b);
    positive += d > 0.0;
    negative += d < 0.0;
    mean += d;
  }
  const bool convex = positive != negative ? positive > negative : mean > 0.0;
  r.classification = convex ? Scaling::kSuperLinear : Scaling::kSubLinear;
  return r;
}

std::vector<FitReport> fit_records(std::span<const ScalingRecord> records, double threshold) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<FePoint>> groups;
  for (const auto& rec : records) {
    auto& pts = groups[{rec.depth, rec.chi}];
    if (rec.f_bits && rec.e_bits) pts.emplace_back(*rec.f_bits, *rec.e_bits);
  }
  std::vector<FitReport> out;
  for (const auto& [key, pts] : groups) {
    FitReport r = linear_fit_r2(pts, threshold);
    r.depth = key.first;
    r.chi = key.second;
    out.push_back(r);
  }
  return out;
}

std::vector<DepthChiRow> depth_chi_table(std::span<const FitReport> reports, double threshold) {
  std::map<std::size_t, DepthChiRow> rows;
  for (const auto& r : reports) {
    auto& row = rows[r.depth];
    row.depth = r.depth;
    if (r.r_squared > threshold) row.linear_chis.push_back(r.chi);
    // Strict comparison keeps the smallest chi on ties.
    if (row.argmax_chi == 0 || r.r_squared > row.argmax_r_squared) {
      row.argmax_chi = r.chi;
      row.argmax_r_squared = r.r_squared;
    }
  }
  std::vector<DepthChiRow> out;
  for (auto& [d, row] : rows) {
    std::sort(row.linear_chis.begin(), row.linear_chis.end());
    out.push_back(std::move(row));
  }
  return out;
}

TableRun run_depth_chi_table(ScanConfig config, std::size_t max_depth, std::size_t max_chi,
                             double threshold, const ProgressFn& progress) {
  if (max_depth < 1 || max_chi < 1) throw std::invalid_argument("table bounds must be positive");
  config.depths.clear();
  config.chis.clear();
  for (std::size_t d = 1; d <= max_depth; ++d) config.depths.push_back(d);
  for (std::size_t c = 1; c <= max_chi; ++c) config.chis.push_back(c);
  TableRun run;
  run.records = scan_scaling(config, progress);
  run.reports = fit_records(run.records, threshold);
  run.rows = depth_chi_table(run.reports, threshold);
  return run;
}

std::string records_to_csv(std::span<const ScalingRecord> records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.depth) + ',' + std::to_string(r.chi) + ',';
    append_double(out, r.sigma);
    out += ',';
    append_double(out, r.mu);
    out += ',' + std::to_string(r.seed) + ',';
    append_double(out, r.f_bits.value_or(kInf));
    out += ',';
    append_double(out, r.e_bits.value_or(kInf));
    out += r.f_converged ? ",1" : ",0";
    out += r.e_converged ? ",1" : ",0";
    out += '\n';
  }
  return out;
}

std::vector<ScalingRecord> records_from_csv(std::string_view text) {
  auto lines = split(text, '\n');
  if (lines.empty() || trim(lines.front()) != kCsvHeader) {
    throw std::invalid_argument("CSV header mismatch");
  }
  std::vector<ScalingRecord> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9) throw std::invalid_argument("CSV row " + std::to_string(i) + " has wrong arity");
    ScalingRecord r;
    r.depth = static_cast<std::size_t>(parse_unsigned(f[0]));
    r.chi = static_cast<std::size_t>(parse_unsigned(f[1]));
    r.sigma = parse_double(f[2]);
    r.mu = parse_double(f[3]);
    r.seed = parse_unsigned(f[4]);
    r.f_bits = optional_distance(f[5]);
    r.e_bits = optional_distance(f[6]);
    r.f_converged = parse_unsigned(f[7]) != 0;
    r.e_converged = parse_unsigned(f[8]) != 0;
    out.push_back(r);
  }
  return out;
}

std::string library_version() { return CHIMPE_VERSION; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json build_report(const ScanConfig& config, std::span<const FitReport> reports,
                            std::span<const DepthChiRow> rows, const std::string& timestamp) {
  using nlohmann::json;
  json j;
  j["library"] = {{"name", "chimpe"}, {"version", library_version()}};
  j["generated_at"] = timestamp;
  j["config"] = {
      {"n", config.n_qubits},
      {"depths", config.depths},
      {"chis", config.chis},
      {"sigmas", config.sigmas},
      {"mu", config.mu},
      {"seeds", config.seeds},
      {"base_seed", config.base_seed},
      {"mpe", {{"restarts", config.mpe.restarts},
               {"max_sweeps", config.mpe.max_sweeps},
               {"tol_bits", config.mpe.tol_bits}}},
      {"fit", {{"restarts", config.fit.restarts},
               {"max_sweeps", config.fit.max_sweeps},
               {"tol_bits", config.fit.tol_bits}}},
  };
  j["conventions"] = {
      {"log_base", 2},
      {"units", "bits"},
      {"entropy_bound", "S <= log2(chi)"},
      {"rps_amplitudes", "complex; real and imaginary parts iid N(mu, sigma), then normalized"},
      {"circuit_layout", "every layer is the same ascending staircase on qubits (p, p+1)"},
      {"gate_convention", "4x4 row-major in |q_p q_{p+1}>, column = input"},
      {"chi_mpe_optimizer",
       "single-site environment sweeps in mixed-canonical gauge, best of restarts"},
      {"circuit_optimizer", "gate-by-gate polar (environment) updates, best of restarts"},
      {"linear_threshold_r2", kLinearR2Threshold},
  };
  json fits = json::array();
  for (const auto& r : reports) {
    fits.push_back({{"depth", r.depth},
                    {"chi", r.chi},
                    {"slope", r.slope},
                    {"intercept", r.intercept},
                    {"r_squared", r.r_squared},
                    {"slope_through_origin", r.slope_through_origin},
                    {"n_points", r.n_points},
                    {"classification", to_string(r.classification)}});
  }
  j["fits"] = std::move(fits);
  if (!rows.empty()) {
    json table = json::array();
    for (const auto& row : rows) {
      table.push_back({{"depth", row.depth},
                       {"linear_chis", row.linear_chis},
                       {"argmax_chi", row.argmax_chi},
                       {"argmax_r_squared", row.argmax_r_squared}});
    }
    j["table"] = std::move(table);
  }
  return j;
}

void emit_results(std::span<const ScalingRecord> records, std::span<const FitReport> reports,
                  std::span<const DepthChiRow> rows, const ScanConfig& config,
                  const std::filesystem::path& csv_path,
                  const std::optional<std::filesystem::path>& report_path) {
  write_text_file(csv_path, records_to_csv(records));
  if (report_path) write_json_file(*report_path, build_report(config, reports, rows, utc_timestamp()));
}

}  // namespace chimpe
