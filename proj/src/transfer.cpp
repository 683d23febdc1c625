#include <algorithm>
#include <cmath>
#include <sstream>

#include "holocorr/parallel.hpp"
#include "holocorr/thermo.hpp"

namespace holocorr {

TransferOperator::TransferOperator(const Params& params, int m, cplx seed, Labeling labeling,
                                   std::uint64_t state_cap)
    : p_(params.p()), m_(m) {
  if (m < 1) throw Error(ErrorCode::invalid_argument, "TransferOperator: depth must be >= 1");
  n_states_ = checked_power(p_, m, state_cap);

  // Level l holds the backward images of the seed along all words of length
  // l; state s*p^(l-1) + r at level l is the s-preimage of state r.
  std::vector<cplx> prev_rep{seed};
  std::vector<double> prev_sum{0.0};
  std::uint64_t width = 1;
  for (int l = 1; l <= m; ++l) {
    const std::uint64_t next_width = width * static_cast<std::uint64_t>(p_);
    std::vector<cplx> rep(next_width);
    std::vector<double> phi(next_width);
    std::vector<double> sum(next_width);
    for_each_index(static_cast<std::int64_t>(next_width), Exec::parallel, [&](std::int64_t i) {
      const auto u = static_cast<std::uint64_t>(i);
      const auto s = static_cast<int>(u / width);
      const std::uint64_t r = u % width;
      if (prev_rep[r] == params.c()) {
        throw SingularHit(l, "TransferOperator: representative hit the singular value");
      }
      rep[u] = inverse_branch(params, prev_rep[r], s, labeling);
      phi[u] = potential(params, rep[u], prev_rep[r]);
      sum[u] = phi[u] + prev_sum[r];
    });
    prev_rep = std::move(rep);
    prev_sum = std::move(sum);
    if (l == m) phi_ = std::move(phi);
    width = next_width;
  }
  reps_ = std::move(prev_rep);
  birkhoff_ = std::move(prev_sum);
}

std::vector<double> TransferOperator::weights(double t) const {
  std::vector<double> w(phi_.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(t * phi_[i]);
  return w;
}

void TransferOperator::apply(std::span<const double> weights, std::span<const double> h,
                             std::span<double> y, Exec exec) const {
  const std::uint64_t block = n_states_ / static_cast<std::uint64_t>(p_);  // p^(m-1)
  const auto np = static_cast<std::uint64_t>(p_);
  if (exec == Exec::serial) {
    for (std::uint64_t u = 0; u < n_states_; ++u) {
      const std::uint64_t r = u / np;
      double acc = 0.0;
      for (std::uint64_t s = 0; s < np; ++s) {
        const std::uint64_t v = s * block + r;
        acc += weights[v] * h[v];
      }
      y[u] = acc;
    }
    return;
  }
  // Row u depends only on u / p, so each distinct row sum is computed once.
  std::vector<double> row(block);
  const auto nb = static_cast<std::int64_t>(block);
#pragma omp parallel for schedule(static)
  for (std::int64_t ri = 0; ri < nb; ++ri) {
    const auto r = static_cast<std::uint64_t>(ri);
    double acc = 0.0;
    for (std::uint64_t s = 0; s < np; ++s) {
      const std::uint64_t v = s * block + r;
      acc += weights[v] * h[v];
    }
    row[r] = acc;
  }
  const auto ns = static_cast<std::int64_t>(n_states_);
#pragma omp parallel for schedule(static)
  for (std::int64_t ui = 0; ui < ns; ++ui) {
    const auto u = static_cast<std::uint64_t>(ui);
    y[u] = row[u / np];
  }
}

void TransferOperator::apply_left(std::span<const double> weights, std::span<const double> nu,
                                  std::span<double> y, Exec exec) const {
  const std::uint64_t block = n_states_ / static_cast<std::uint64_t>(p_);
  const auto np = static_cast<std::uint64_t>(p_);
  auto column = [&](std::uint64_t v) {
    const std::uint64_t r = v % block;
    double acc = 0.0;
    for (std::uint64_t j = 0; j < np; ++j) acc += nu[r * np + j];
    return weights[v] * acc;
  };
  if (exec == Exec::serial) {
    for (std::uint64_t v = 0; v < n_states_; ++v) y[v] = column(v);
    return;
  }
  const auto ns = static_cast<std::int64_t>(n_states_);
#pragma omp parallel for schedule(static)
  for (std::int64_t vi = 0; vi < ns; ++vi) y[static_cast<std::uint64_t>(vi)] = column(static_cast<std::uint64_t>(vi));
}

namespace {

// Neumaier summation: a plain sum over p^m terms drifts by ~N eps, which is
// above the convergence tolerance.
double sum_of(std::span<const double> v) {
  double s = 0.0;
  double comp = 0.0;
  for (double x : v) {
    const double t = s + x;
    comp += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  return s + comp;
}

struct Eigenpair {
  double lambda = 0.0;
  std::vector<double> vec;
  int iterations = 0;
  double residual = 0.0;
};

template <typename Apply>
Eigenpair power_iterate(std::uint64_t n, const Apply& apply, const PowerIterationConfig& cfg) {
  Eigenpair e;
  e.vec.assign(n, 1.0);
  std::vector<double> y(n);
  const auto nd = static_cast<double>(n);
  double change = 0.0;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    apply(e.vec, y);
    const double sy = sum_of(y);
    const double sh = sum_of(e.vec);
    if (!(sy > 0.0) || !std::isfinite(sy)) {
      throw Error(ErrorCode::numeric_failure, "power iteration: non-positive or non-finite iterate");
    }
    e.lambda = sy / sh;
    const double scale = nd / sy;
    change = 0.0;
    double ymax = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
      y[i] *= scale;
      change = std::max(change, std::abs(y[i] - e.vec[i]));
      ymax = std::max(ymax, std::abs(y[i]));
    }
    change /= ymax;
    e.vec.swap(y);
    e.iterations = it;
    if (change <= cfg.tol) break;
  }
  // Residual |M h - lambda h|_inf / |lambda h|_inf at the returned vector.
  apply(e.vec, y);
  double num = 0.0;
  double den = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    num = std::max(num, std::abs(y[i] - e.lambda * e.vec[i]));
    den = std::max(den, std::abs(e.lambda * e.vec[i]));
  }
  e.residual = den > 0.0 ? num / den : num;
  if (change > cfg.tol) {
    std::ostringstream os;
    os << "power iteration did not converge in " << cfg.max_iter << " iterations (change " << change
       << ", residual " << e.residual << ")";
    throw Error(ErrorCode::numeric_failure, os.str());
  }
  return e;
}

}  // namespace

TransferSpectrum TransferOperator::spectrum(double t, const PowerIterationConfig& cfg,
                                            Exec exec) const {
  const std::vector<double> w = weights(t);
  const Eigenpair right = power_iterate(
      n_states_, [&](std::span<const double> h, std::span<double> y) { apply(w, h, y, exec); }, cfg);
  const Eigenpair left = power_iterate(
      n_states_, [&](std::span<const double> v, std::span<double> y) { apply_left(w, v, y, exec); },
      cfg);

  TransferSpectrum s;
  s.depth = m_;
  s.state_count = n_states_;
  s.t = t;
  s.leading_eigenvalue = right.lambda;
  s.iterations = std::max(right.iterations, left.iterations);
  s.residual = right.residual;
  s.left_eigenvector = left.vec;
  const double nsum = sum_of(s.left_eigenvector);
  for (double& x : s.left_eigenvector) x /= nsum;
  s.eigenvector = right.vec;
  double pair = 0.0;
  {
    std::vector<double> prod(n_states_);
    for (std::uint64_t i = 0; i < n_states_; ++i) prod[i] = s.eigenvector[i] * s.left_eigenvector[i];
    pair = sum_of(prod);
  }
  for (double& x : s.eigenvector) x /= pair;
  s.birkhoff = birkhoff_;
  return s;
}

double TransferOperator::leading_eigenvalue(double t, const PowerIterationConfig& cfg,
                                            Exec exec) const {
  const std::vector<double> w = weights(t);
  return power_iterate(
             n_states_, [&](std::span<const double> h, std::span<double> y) { apply(w, h, y, exec); },
             cfg)
      .lambda;
}

std::pair<PressureSample, TransferSpectrum> pressure_tm(const Params& params, double t, int m,
                                                        cplx seed,
                                                        const PowerIterationConfig& cfg) {
  const TransferOperator op(params, m, seed);
  TransferSpectrum s = op.spectrum(t, cfg);
  PressureSample sample{t, std::log(s.leading_eigenvalue), PressureMethod::transfer_matrix, m};
  return {sample, std::move(s)};
}

}  // namespace holocorr
