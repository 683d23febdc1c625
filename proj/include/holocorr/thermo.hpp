#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holocorr/correspondence.hpp"
#include "holocorr/symbolic.hpp"
#include "holocorr/types.hpp"

namespace holocorr {

enum class PressureMethod { periodic_orbit, transfer_matrix };

const char* to_string(PressureMethod m);

struct PressureSample {
  double t = 0.0;
  double pressure = 0.0;
  PressureMethod method = PressureMethod::periodic_orbit;
  int depth = 0;
};

/// (1/n) log sum over inventory orbits of |multiplier|^{-t}.
PressureSample pressure_po(const Params& params, double t, const OrbitInventory& inventory);

struct PowerIterationConfig {
  double tol = 1e-12;
  int max_iter = 10000;
};

struct TransferSpectrum {
  int depth = 0;
  std::uint64_t state_count = 0;
  double t = 0.0;
  double leading_eigenvalue = 0.0;
  std::vector<double> eigenvector;       // h, normalised so that sum h*nu = 1
  std::vector<double> left_eigenvector;  // nu, normalised to a probability vector
  int iterations = 0;
  double residual = 0.0;
  // Birkhoff sum S_m(phi_c) along each state's representative, copied from
  // the operator so the spectrum is self-contained for Gibbs diagnostics.
  std::vector<double> birkhoff;
};

/// Weighted transition operator on depth-m cylinders of the full p-shift.
///
/// State u = (u_0, ..., u_{m-1}) is indexed by its base-p digits, u_0 most
/// significant. Its representative is the backward image of the seed along u;
/// the preimage states of u are (s, u_0, ..., u_{m-2}) for s < p, and the edge
/// from a preimage state v carries weight exp(t phi_c(rep v)).
class TransferOperator {
 public:
  TransferOperator(const Params& params, int m, cplx seed, Labeling labeling = {},
                   std::uint64_t state_cap = std::uint64_t{1} << 20);

  int depth() const noexcept { return m_; }
  int symbols() const noexcept { return p_; }
  std::uint64_t state_count() const noexcept { return n_states_; }
  const std::vector<double>& potentials() const noexcept { return phi_; }
  const std::vector<double>& birkhoff_sums() const noexcept { return birkhoff_; }
  const std::vector<cplx>& representatives() const noexcept { return reps_; }

  /// y = M h with weights exp(t phi).
  void apply(std::span<const double> weights, std::span<const double> h, std::span<double> y,
             Exec exec = Exec::parallel) const;
  /// y = nu M.
  void apply_left(std::span<const double> weights, std::span<const double> nu,
                  std::span<double> y, Exec exec = Exec::parallel) const;

  std::vector<double> weights(double t) const;

  TransferSpectrum spectrum(double t, const PowerIterationConfig& cfg = {},
                            Exec exec = Exec::parallel) const;

  /// Leading eigenvalue only (right iteration), as used by root finding.
  double leading_eigenvalue(double t, const PowerIterationConfig& cfg = {},
                            Exec exec = Exec::parallel) const;

 private:
  int p_;
  int m_;
  std::uint64_t n_states_;
  std::vector<cplx> reps_;
  std::vector<double> phi_;
  std::vector<double> birkhoff_;
};

std::pair<PressureSample, TransferSpectrum> pressure_tm(const Params& params, double t, int m,
                                                        cplx seed,
                                                        const PowerIterationConfig& cfg = {});

/// log p / log kappa. Throws invalid_argument unless kappa > 1.
double closed_form_bound(int p, int q, double kappa);

/// q^2 < p.
bool zero_area_criterion(int p, int q);

struct GibbsStats {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double spread = 0.0;  // max / min
  std::size_t count = 0;
};

struct GibbsDiagnostic {
  GibbsStats cylinders;
  // Same ratios evaluated at periodic points of the inventory, located in
  // the cylinder their first m labels select. Empty when no inventory is given.
  GibbsStats periodic;
};

GibbsDiagnostic gibbs_diagnostic(const Params& params, const TransferSpectrum& spectrum,
                                 const OrbitInventory* inventory, double t);

/// Root of a strictly decreasing function on [lo, hi] to width tol.
double bisect_decreasing(const auto& f, double lo, double hi, double tol) {
  for (int i = 0; i < 200 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Aitken delta-squared on the last three terms, only if they are strictly
/// monotone.
std::optional<double> aitken_extrapolate(std::span<const double> seq);

struct BowenConfig {
  int n_min = 4;
  int n_max = 8;
  int m = 8;
  double tol = 1e-6;
  int cert_cloud = 20000;
  int cert_transient = 50;
  int cert_samples = 4000;
  std::uint64_t rng_seed = 0x5eedULL;
  OrbitSearchConfig orbit;
  PowerIterationConfig power;
  CertificateOptions certificate;
  std::uint64_t word_cap = std::uint64_t{1} << 22;
  std::uint64_t state_cap = std::uint64_t{1} << 20;
};

struct DepthRoot {
  int n = 0;
  double t_c = 0.0;
};

struct BowenResult {
  // Zero of the transfer-operator pressure at depth m.
  double t_c = 0.0;
  int depth = 0;
  std::pair<double, double> bracket;
  double pressure_at_root = 0.0;
  // Zeros of the periodic-orbit pressure for n = n_min..n_max.
  std::vector<DepthRoot> per_depth_roots;
  std::optional<double> extrapolated;
  double method_agreement = 0.0;  // |P_po(n_max) - P_tm(m)| at t_c
  double kappa = 0.0;
  double closed_form = 0.0;  // log p / log kappa
  bool zero_area_regime = false;
  bool area_informative = false;  // t_c < 2
  std::string note;
};

struct BowenArtifacts {
  BowenResult result;
  cplx seed;
  HyperbolicityCertificate certificate;
  std::vector<OrbitInventory> inventories;  // n_min..n_max
  std::optional<TransferOperator> transfer;
};

BowenArtifacts run_bowen(const Params& params, const BowenConfig& cfg = {});
BowenResult bowen_parameter(const Params& params, const BowenConfig& cfg = {});

/// Pressure samples of both estimators on an evenly spaced t grid.
std::vector<PressureSample> pressure_curve(const Params& params, const BowenArtifacts& art,
                                           double t_max, int points);

}  // namespace holocorr
