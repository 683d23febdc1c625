#pragma once

#include <iosfwd>
#include <string>

#include "holocorr/thermo.hpp"
#include "run_config.hpp"

namespace holocorr::cli {

struct BowenOptions {
  int n_min = 4;
  int n_max = 8;
  int m = 8;
  double tol = 1e-6;
  int cert_cloud = 20000;
  int cert_transient = 50;
  int cert_samples = 4000;
  int curve_points = 64;
  double t_max = 0.0;  // 0: twice the computed t_c

  BowenConfig config(std::uint64_t rng_seed) const;
  io::json echo() const;
};

struct JuliaOptions {
  std::string mode = "random";  // random | tree
  std::size_t count = 100000;
  int transient = 50;
  int depth = 10;
  int width = 800;
  int height = 800;
  std::string cloud_format = "bin";  // bin | csv | none

  io::json echo() const;
};

struct BoxdimOptions {
  std::string input;  // .bin or .csv cloud; empty: sample a backward cloud
  std::size_t count = 1000000;
  int transient = 50;
  int k_min = 2;
  int k_max = 10;
  bool with_bowen = false;

  io::json echo() const;
};

struct ScanOptions {
  double re_min = -2.0;
  double re_max = 2.0;
  double im_min = -2.0;
  double im_max = 2.0;
  int nx = 9;
  int ny = 9;
  int classify_depth = 12;
  int n = 5;  // periodic-orbit depth per cell
  int m = 6;  // transfer-operator depth per cell
  int cert_cloud = 5000;
  int cert_samples = 1000;

  io::json echo() const;
};

struct CentreOptions {
  int depth = 12;

  io::json echo() const;
};

// Each command writes its artifacts under common.output_dir, prints a short
// JSON summary to `out` and returns a process exit code.
int cmd_bowen(const CommonOptions& common, const BowenOptions& opts, std::ostream& out,
              std::ostream& err);
int cmd_pressure_curve(const CommonOptions& common, const BowenOptions& opts, std::ostream& out,
                       std::ostream& err);
int cmd_julia(const CommonOptions& common, const JuliaOptions& opts, std::ostream& out,
              std::ostream& err);
int cmd_boxdim(const CommonOptions& common, const BoxdimOptions& opts, std::ostream& out,
               std::ostream& err);
int cmd_scan(const CommonOptions& common, const ScanOptions& opts, std::ostream& out,
             std::ostream& err);
int cmd_centre_test(const CommonOptions& common, const CentreOptions& opts, std::ostream& out,
                    std::ostream& err);

/// One scan cell, as written to the scan CSV.
struct ScanRow {
  cplx c;
  Verdict verdict = Verdict::undetermined;
  std::optional<double> kappa;
  std::optional<double> t_c;
};

ScanRow scan_cell(int p, int q, cplx c, const ScanOptions& opts, std::uint64_t rng_seed);

}  // namespace holocorr::cli
