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

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "chimpe/circuit.hpp"
#include "chimpe/equivalence.hpp"
#include "chimpe/error.hpp"
#include "chimpe/experiment.hpp"
#include "chimpe/io.hpp"
#include "chimpe/measures.hpp"
#include "chimpe/random_states.hpp"

namespace {

using namespace chimpe;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

DenseState load_state(const std::string& path) {
  const DenseState raw = dense_state_from_json(read_json_file(path));
  if (raw.norm() == 0.0) throw std::invalid_argument("state in " + path + " is the zero vector");
  return raw.scaled(1.0 / raw.norm());
}

void print_bits(const std::optional<double>& bits) {
  if (bits) {
    std::printf("%.12g\n", *bits);
  } else {
    std::printf("inf\n");
  }
}

struct SweepFlags {
  int restarts = 0;
  std::uint64_t seed = 0;
  int max_sweeps = 0;
  double tol = 0.0;
};

void add_sweep_flags(CLI::App* app, SweepFlags& f) {
  app->add_option("--restarts", f.restarts, "Number of optimizer restarts")->capture_default_str();
  app->add_option("--seed", f.seed, "Base seed for random restarts")->capture_default_str();
  app->add_option("--max-sweeps", f.max_sweeps, "Sweep cap per restart")->capture_default_str();
  app->add_option("--tol", f.tol, "Convergence tolerance in bits")->capture_default_str();
}

struct GridFlags {
  std::size_t n = 12;
  std::string sigma_grid = "log:0.25:16:16";
  double mu = 5.0;
  std::size_t seeds = 3;
  std::uint64_t base_seed = 0;
  int fit_restarts = FitOptions{}.restarts;
  int mpe_restarts = MpeOptions{}.restarts;
  std::string out_csv = "scan.csv";
  std::string out_report;
  bool quiet = false;
};

void add_grid_flags(CLI::App* app, GridFlags& g) {
  app->add_option("--n", g.n, "Number of qubits")->capture_default_str();
  app->add_option("--sigma-grid", g.sigma_grid, "log:LO:HI:COUNT, lin:LO:HI:COUNT or a list")
      ->capture_default_str();
  app->add_option("--mu", g.mu, "Amplitude mean")->capture_default_str();
  app->add_option("--seeds", g.seeds, "Random states per sigma")->capture_default_str();
  app->add_option("--base-seed", g.base_seed, "Seed of the first state")->capture_default_str();
  app->add_option("--fit-restarts", g.fit_restarts, "Circuit fit restarts")->capture_default_str();
  app->add_option("--mpe-restarts", g.mpe_restarts, "chi-MPE restarts")->capture_default_str();
  app->add_option("--out-csv", g.out_csv, "Record CSV path")->capture_default_str();
  app->add_option("--out-report", g.out_report, "JSON report path");
  app->add_flag("--quiet", g.quiet, "No progress on stderr");
}

ScanConfig make_config(const GridFlags& g) {
  ScanConfig c;
  c.n_qubits = g.n;
  c.sigmas = parse_sigma_grid(g.sigma_grid);
  c.mu = g.mu;
  c.seeds = g.seeds;
  c.base_seed = g.base_seed;
  c.fit.restarts = g.fit_restarts;
  c.mpe.restarts = g.mpe_restarts;
  return c;
}

ProgressFn progress_for(const GridFlags& g) {
  if (g.quiet) return {};
  return [](const std::string& line) { std::cerr << line << '\n'; };
}

std::optional<std::filesystem::path> report_path(const GridFlags& g) {
  if (g.out_report.empty()) return std::nullopt;
  return std::filesystem::path(g.out_report);
}

bool any_orthogonal(std::span<const ScalingRecord> records) {
  for (const auto& r : records) {
    if (!r.f_bits || !r.e_bits) return true;
  }
  return false;
}

void print_reports(std::span<const FitReport> reports) {
  std::printf("depth,chi,slope,intercept,r_squared,classification\n");
  for (const auto& r : reports) {
    std::printf("%zu,%zu,%.6f,%.6f,%.8f,%s\n", r.depth, r.chi, r.slope, r.intercept, r.r_squared,
                to_string(r.classification));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chi-specified matrix product entanglement and staircase circuits"};
  app.set_version_flag("--version", library_version());
  app.require_subcommand(1);

  // mpe
  std::string state_path;
  std::size_t chi = 2;
  std::string mps_out;
  MpeOptions mpe_defaults;
  SweepFlags mpe_flags{mpe_defaults.restarts, 0, mpe_defaults.max_sweeps, mpe_defaults.tol_bits};
  auto* mpe = app.add_subcommand("mpe", "chi-MPE of a state in bits");
  mpe->add_option("--state", state_path, "DenseState JSON")->required();
  mpe->add_option("--chi", chi, "Bond dimension")->required();
  mpe->add_option("--out", mps_out, "Write the closest MPS here");
  add_sweep_flags(mpe, mpe_flags);

  // fit-circuit
  std::size_t depth = 1;
  std::string circuit_out;
  FitOptions fit_defaults;
  SweepFlags fit_flags{fit_defaults.restarts, 0, fit_defaults.max_sweeps, fit_defaults.tol_bits};
  auto* fit = app.add_subcommand("fit-circuit", "Fit a staircase circuit, print F in bits");
  fit->add_option("--state", state_path, "DenseState JSON")->required();
  fit->add_option("--depth", depth, "Number of layers")->required();
  fit->add_option("--out", circuit_out, "Write the fitted circuit here");
  add_sweep_flags(fit, fit_flags);

  // to-mps / to-circuit
  std::string in_path;
  std::string out_path;
  auto* to_mps = app.add_subcommand("to-mps", "Single-layer circuit to a bond-2 MPS");
  to_mps->add_option("--circuit", in_path, "Circuit JSON")->required();
  to_mps->add_option("--out", out_path, "MPS JSON")->required();
  auto* to_circ = app.add_subcommand("to-circuit", "Bond-2 MPS to a single-layer circuit");
  to_circ->add_option("--mps", in_path, "MPS JSON")->required();
  to_circ->add_option("--out", out_path, "Circuit JSON")->required();

  // rps
  RpsSpec rps_spec;
  auto* rps = app.add_subcommand("rps", "Generalized random pure state");
  rps->add_option("--n", rps_spec.n_qubits, "Number of qubits")->capture_default_str();
  rps->add_option("--mu", rps_spec.mu, "Amplitude mean")->capture_default_str();
  rps->add_option("--sigma", rps_spec.sigma, "Amplitude standard deviation")->capture_default_str();
  rps->add_option("--seed", rps_spec.seed, "Seed")->capture_default_str();
  rps->add_option("--out", out_path, "DenseState JSON")->required();

  // scan
  GridFlags scan_grid;
  std::string depths = "1";
  std::string chis = "1,2,3,4,5";
  auto* scan = app.add_subcommand("scan", "E_chi versus F over a sigma grid");
  add_grid_flags(scan, scan_grid);
  scan->add_option("--depths", depths, "Circuit depths")->capture_default_str();
  scan->add_option("--chis", chis, "Bond dimensions")->capture_default_str();

  // table
  GridFlags table_grid;
  std::size_t max_depth = 6;
  std::size_t max_chi = 9;
  double threshold = kLinearR2Threshold;
  auto* table = app.add_subcommand("table", "Depth versus linear chi table");
  add_grid_flags(table, table_grid);
  table->add_option("--max-depth", max_depth, "Largest depth")->capture_default_str();
  table->add_option("--max-chi", max_chi, "Largest chi")->capture_default_str();
  table->add_option("--r2-threshold", threshold, "R^2 above which a fit is linear")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*mpe) {
      MpeOptions o{mpe_flags.restarts, mpe_flags.seed, mpe_flags.max_sweeps, mpe_flags.tol};
      const MpeResult r = chi_mpe(load_state(state_path), chi, o);
      if (!mps_out.empty()) write_json_file(mps_out, to_json(r.best_mps));
      print_bits(r.value_bits);
      return r.value_bits ? kExitOk : kExitNumerical;
    }
    if (*fit) {
      FitOptions o;
      o.restarts = fit_flags.restarts;
      o.seed = fit_flags.seed;
      o.max_sweeps = fit_flags.max_sweeps;
      o.tol_bits = fit_flags.tol;
      const FitResult r = fit_circuit(load_state(state_path), depth, o);
      if (!circuit_out.empty()) write_json_file(circuit_out, to_json(r.circuit));
      print_bits(r.f_bits);
      return r.f_bits ? kExitOk : kExitNumerical;
    }
    if (*to_mps) {
      write_json_file(out_path, to_json(circuit_to_mps(circuit_from_json(read_json_file(in_path)))));
      return kExitOk;
    }
    if (*to_circ) {
      write_json_file(out_path, to_json(mps_to_circuit(mps_from_json(read_json_file(in_path)))));
      return kExitOk;
    }
    if (*rps) {
      write_json_file(out_path, to_json(generalized_rps(rps_spec)));
      return kExitOk;
    }
    if (*scan) {
      ScanConfig c = make_config(scan_grid);
      c.depths = parse_index_list(depths);
      c.chis = parse_index_list(chis);
      const auto records = scan_scaling(c, progress_for(scan_grid));
      std::vector<FitReport> reports;
      try {
        reports = fit_records(records);
      } catch (const DegenerateFitError& e) {
        std::cerr << "fit skipped: " << e.what() << '\n';
      }
      emit_results(records, reports, {}, c, scan_grid.out_csv, report_path(scan_grid));
      print_reports(reports);
      return any_orthogonal(records) ? kExitNumerical : kExitOk;
    }
    if (*table) {
      const TableRun run = run_depth_chi_table(make_config(table_grid), max_depth, max_chi,
                                               threshold, progress_for(table_grid));
      ScanConfig echo = make_config(table_grid);
      echo.depths.clear();
      echo.chis.clear();
      for (std::size_t d = 1; d <= max_depth; ++d) echo.depths.push_back(d);
      for (std::size_t c = 1; c <= max_chi; ++c) echo.chis.push_back(c);
      emit_results(run.records, run.reports, run.rows, echo, table_grid.out_csv,
                   report_path(table_grid));
      print_reports(run.reports);
      std::printf("\ndepth,linear_chis,argmax_chi,argmax_r_squared\n");
      for (const auto& row : run.rows) {
        std::string set;
        for (std::size_t c : row.linear_chis) set += (set.empty() ? "" : " ") + std::to_string(c);
        std::printf("%zu,{%s},%zu,%.8f\n", row.depth, set.c_str(), row.argmax_chi,
                    row.argmax_r_squared);
      }
      return any_orthogonal(run.records) ? kExitNumerical : kExitOk;
    }
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
