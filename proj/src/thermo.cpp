#include "holocorr/thermo.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "holocorr/julia.hpp"
#include "holocorr/parallel.hpp"

namespace holocorr {

int worker_threads() { return omp_get_max_threads(); }

void set_worker_threads(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "thread count must be >= 1");
  omp_set_num_threads(n);
}

const char* to_string(PressureMethod m) {
  switch (m) {
    case PressureMethod::periodic_orbit: return "periodic_orbit";
    case PressureMethod::transfer_matrix: return "transfer_matrix";
  }
  return "unknown";
}

PressureSample pressure_po(const Params& params, double t, const OrbitInventory& inventory) {
  (void)params;
  if (inventory.orbits.empty()) {
    throw Error(ErrorCode::numeric_failure, "pressure_po: empty orbit inventory");
  }
  // log-sum-exp over -t log|mult| keeps large t finite.
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& o : inventory.orbits) top = std::max(top, -t * std::log(o.multiplier_modulus));
  double acc = 0.0;
  for (const auto& o : inventory.orbits) acc += std::exp(-t * std::log(o.multiplier_modulus) - top);
  return {t, (top + std::log(acc)) / inventory.period, PressureMethod::periodic_orbit,
          inventory.period};
}

double closed_form_bound(int p, int q, double kappa) {
  (void)q;
  if (!(kappa > 1.0)) throw Error(ErrorCode::invalid_argument, "closed_form_bound: kappa must exceed 1");
  return std::log(static_cast<double>(p)) / std::log(kappa);
}

bool zero_area_criterion(int p, int q) { return q * q < p; }

namespace {

struct StatsAccumulator {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  std::size_t n = 0;

  void add(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) return;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    ++n;
  }
  GibbsStats done() const {
    if (n == 0) return {};
    return {lo, hi, hi / lo, n};
  }
};

}  // namespace

GibbsDiagnostic gibbs_diagnostic(const Params& params, const TransferSpectrum& spectrum,
                                 const OrbitInventory* inventory, double t) {
  const int m = spectrum.depth;
  const double log_lambda = std::log(spectrum.leading_eigenvalue);
  auto mu = [&](std::uint64_t u) { return spectrum.eigenvector[u] * spectrum.left_eigenvector[u]; };

  GibbsDiagnostic out;
  StatsAccumulator cyl;
  for (std::uint64_t u = 0; u < spectrum.state_count; ++u) {
    cyl.add(mu(u) / std::exp(t * spectrum.birkhoff[u] - m * log_lambda));
  }
  out.cylinders = cyl.done();

  if (inventory == nullptr) return out;
  StatsAccumulator per;
  const auto np = static_cast<std::uint64_t>(params.p());
  for (const auto& po : inventory->orbits) {
    const auto& pts = po.orbit.points;
    const auto n = static_cast<std::size_t>(po.period);
    std::uint64_t u = 0;
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      const cplx z0 = pts[static_cast<std::size_t>(i) % n];
      const cplx z1 = pts[static_cast<std::size_t>(i + 1) % n];
      u = u * np + static_cast<std::uint64_t>(branch_label(params, z0, z1));
      s += potential(params, z0, z1);
    }
    per.add(mu(u) / std::exp(t * s - m * log_lambda));
  }
  out.periodic = per.done();
  return out;
}

std::optional<double> aitken_extrapolate(std::span<const double> seq) {
  if (seq.size() < 3) return std::nullopt;
  const double a = seq[seq.size() - 3];
  const double b = seq[seq.size() - 2];
  const double c = seq[seq.size() - 1];
  const bool monotone = (a < b && b < c) || (a > b && b > c);
  if (!monotone) return std::nullopt;
  const double denom = (c - b) - (b - a);
  if (denom == 0.0) return std::nullopt;
  return c - (c - b) * (c - b) / denom;
}

BowenArtifacts run_bowen(const Params& params, const BowenConfig& cfg) {
  if (cfg.n_max < 1 || cfg.m < 1 || !(cfg.tol > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "run_bowen: n_max, m and tol must be positive");
  }
  BowenArtifacts art;
  art.seed = repelling_fixed_point(params);

  const PointCloud cloud = julia_backward(params, static_cast<std::size_t>(cfg.cert_cloud),
                                          cfg.cert_transient, cfg.rng_seed);
  CertificateOptions copts = cfg.certificate;
  copts.rng_seed = cfg.rng_seed;
  art.certificate = hyperbolicity_certificate(params, cloud, cfg.cert_samples, copts);
  if (!art.certificate.passing()) {
    std::ostringstream os;
    os << "hyperbolicity not verified: kappa = " << art.certificate.kappa;
    throw Error(ErrorCode::hyperbolicity_unverified, os.str());
  }

  BowenResult& res = art.result;
  res.kappa = art.certificate.kappa;
  res.closed_form = closed_form_bound(params.p(), params.q(), res.kappa);
  res.zero_area_regime = zero_area_criterion(params.p(), params.q());
  // The pressure is at most log p - t log kappa, so it is negative past hi.
  const double hi = 1.1 * res.closed_form;
  res.bracket = {0.0, hi};

  auto check_bracket = [&](const auto& f, const char* what) {
    const double f_lo = f(0.0);
    const double f_hi = f(hi);
    if (!(f_lo > 0.0 && f_hi < 0.0)) {
      std::ostringstream os;
      os << what << ": pressure does not change sign on [0, " << hi << "] (P(0) = " << f_lo
         << ", P(hi) = " << f_hi << ")";
      throw Error(ErrorCode::bracket_failure, os.str());
    }
  };

  OrbitSearchConfig ocfg = cfg.orbit;
  ocfg.word_cap = cfg.word_cap;
  ocfg.rng_seed = cfg.rng_seed;
  std::vector<double> roots;
  for (int n = std::min(cfg.n_min, cfg.n_max); n <= cfg.n_max; ++n) {
    OrbitInventory inv = periodic_points(params, n, art.seed, ocfg);
    if (inv.orbits.empty()) {
      throw Error(ErrorCode::numeric_failure, "run_bowen: no periodic orbits found");
    }
    auto f = [&](double t) { return pressure_po(params, t, inv).pressure; };
    check_bracket(f, "periodic-orbit pressure");
    const double root = bisect_decreasing(f, 0.0, hi, cfg.tol);
    res.per_depth_roots.push_back({n, root});
    roots.push_back(root);
    art.inventories.push_back(std::move(inv));
  }
  res.extrapolated = aitken_extrapolate(roots);

  art.transfer.emplace(params, cfg.m, art.seed, cfg.orbit.labeling, cfg.state_cap);
  const TransferOperator& op = *art.transfer;
  auto f_tm = [&](double t) { return std::log(op.leading_eigenvalue(t, cfg.power)); };
  check_bracket(f_tm, "transfer-operator pressure");
  res.t_c = bisect_decreasing(f_tm, 0.0, hi, 0.1 * cfg.tol);
  res.depth = cfg.m;
  res.pressure_at_root = f_tm(res.t_c);
  res.method_agreement =
      std::abs(pressure_po(params, res.t_c, art.inventories.back()).pressure - res.pressure_at_root);
  res.area_informative = res.t_c < 2.0;

  std::vector<std::string> notes;
  if (!res.area_informative) notes.emplace_back("bound non-informative for area (t_c >= 2)");
  if (res.zero_area_regime) notes.emplace_back("q^2 < p: zero-area regime");
  for (std::size_t i = 0; i < notes.size(); ++i) res.note += (i ? "; " : "") + notes[i];
  return art;
}

BowenResult bowen_parameter(const Params& params, const BowenConfig& cfg) {
  return run_bowen(params, cfg).result;
}

std::vector<PressureSample> pressure_curve(const Params& params, const BowenArtifacts& art,
                                           double t_max, int points) {
  if (points < 2 || !(t_max > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "pressure_curve: need points >= 2 and t_max > 0");
  }
  std::vector<PressureSample> out;
  for (int i = 0; i < points; ++i) {
    const double t = t_max * i / (points - 1);
    for (const auto& inv : art.inventories) out.push_back(pressure_po(params, t, inv));
    if (art.transfer) {
      const double lam = art.transfer->leading_eigenvalue(t);
      out.push_back({t, std::log(lam), PressureMethod::transfer_matrix, art.transfer->depth()});
    }
  }
  return out;
}

}  // namespace holocorr
