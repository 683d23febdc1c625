#include <algorithm>
#include <cmath>
#include <limits>

#include "holocorr/correspondence.hpp"
#include "holocorr/rng.hpp"

namespace holocorr {

CloudIndex::CloudIndex(std::span<const cplx> points, double cell) : cell_(cell) {
  if (!(cell > 0.0)) throw Error(ErrorCode::invalid_argument, "CloudIndex: cell must be positive");
  if (points.empty()) throw Error(ErrorCode::invalid_argument, "CloudIndex: empty cloud");
  double xmin = points[0].real();
  double ymin = points[0].imag();
  for (const cplx& z : points) {
    xmin = std::min(xmin, z.real());
    ymin = std::min(ymin, z.imag());
  }
  origin_ = {xmin - cell, ymin - cell};
  entries_.reserve(points.size());
  for (const cplx& z : points) {
    const auto ix = static_cast<std::int64_t>(std::floor((z.real() - origin_.real()) / cell_));
    const auto iy = static_cast<std::int64_t>(std::floor((z.imag() - origin_.imag()) / cell_));
    entries_.emplace_back(key(ix, iy), z);
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

std::int64_t CloudIndex::key(std::int64_t ix, std::int64_t iy) const {
  return (ix << 32) ^ (iy & 0xffffffffLL);
}

double CloudIndex::nearest_within_cell(cplx z) const {
  const double fx = (z.real() - origin_.real()) / cell_;
  const double fy = (z.imag() - origin_.imag()) / cell_;
  if (!(std::abs(fx) < 1e9 && std::abs(fy) < 1e9)) return std::numeric_limits<double>::infinity();
  const auto ix = static_cast<std::int64_t>(std::floor(fx));
  const auto iy = static_cast<std::int64_t>(std::floor(fy));
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t dx = -1; dx <= 1; ++dx) {
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      if (ix + dx < 0 || iy + dy < 0) continue;
      const std::int64_t k = key(ix + dx, iy + dy);
      auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                                 [](const auto& e, std::int64_t v) { return e.first < v; });
      for (; it != entries_.end() && it->first == k; ++it) best = std::min(best, std::abs(it->second - z));
    }
  }
  return best <= cell_ ? best : std::numeric_limits<double>::infinity();
}

HyperbolicityCertificate hyperbolicity_certificate(const Params& params,
                                                   const PointCloud& cloud,
                                                   int sample_count,
                                                   const CertificateOptions& opts) {
  if (cloud.points.empty()) {
    throw Error(ErrorCode::invalid_argument, "hyperbolicity_certificate: empty cloud");
  }
  if (sample_count < 1) {
    throw Error(ErrorCode::invalid_argument, "hyperbolicity_certificate: sample_count < 1");
  }
  const CloudIndex index(cloud.points, opts.delta);
  const std::size_t n_points = cloud.points.size();
  const auto n_samples = std::min<std::size_t>(static_cast<std::size_t>(sample_count), n_points);

  HyperbolicityCertificate cert;
  cert.sample_count = static_cast<int>(n_samples);
  cert.kappa = std::numeric_limits<double>::infinity();

  std::vector<cplx> samples;
  samples.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) samples.push_back(cloud.points[i * n_points / n_samples]);

  for (const cplx& z : samples) {
    if (z == cplx{0.0, 0.0}) continue;
    for (const cplx& w : images(params, z)) {
      if (!index.near(w, opts.delta)) continue;
      const double g = std::abs(branch_derivative(params, z, w));
      if (g < cert.kappa) {
        cert.kappa = g;
        cert.min_pair = {z, w};
      }
    }
  }
  if (!std::isfinite(cert.kappa)) {
    throw Error(ErrorCode::numeric_failure,
                "hyperbolicity_certificate: no image of a sample lies near the cloud");
  }

  // Multi-step orbits ending at each sample, built from random inverse
  // branches. min_log[n] is the smallest log|multiplier| seen at length n.
  const int L = std::max(1, opts.chain_length);
  std::vector<double> min_log(static_cast<std::size_t>(L) + 1, std::numeric_limits<double>::infinity());
  for (std::size_t s = 0; s < samples.size(); ++s) {
    auto rng = stream_for(opts.rng_seed, s);
    std::uniform_int_distribution<int> pick(0, params.p() - 1);
    cplx w = samples[s];
    double acc = 0.0;
    bool ok = true;
    for (int n = 1; n <= L && ok; ++n) {
      if (w == params.c()) {
        ok = false;
        break;
      }
      const cplx z = inverse_branch(params, w, pick(rng));
      acc += std::log(std::abs(branch_derivative(params, z, w)));
      min_log[static_cast<std::size_t>(n)] = std::min(min_log[static_cast<std::size_t>(n)], acc);
      w = z;
    }
  }

  // Least-squares line through (n, min_log[n]); the rate is capped by the
  // single-step minimum and C is lowered until C lambda^n sits under the data.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int n = 1; n <= L; ++n) {
    const double y = min_log[static_cast<std::size_t>(n)];
    if (!std::isfinite(y)) continue;
    sx += n;
    sy += y;
    sxx += static_cast<double>(n) * n;
    sxy += n * y;
    ++cnt;
  }
  double slope = std::log(cert.kappa);
  if (cnt >= 2) {
    const double den = cnt * sxx - sx * sx;
    if (den != 0.0) slope = (cnt * sxy - sx * sy) / den;
  }
  slope = std::min(slope, std::log(cert.kappa));
  double log_c = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= L; ++n) {
    const double y = min_log[static_cast<std::size_t>(n)];
    if (std::isfinite(y)) log_c = std::min(log_c, y - n * slope);
  }
  cert.expansion.lambda = std::exp(slope);
  cert.expansion.C = std::isfinite(log_c) ? std::exp(log_c) : 1.0;
  return cert;
}

}  // namespace holocorr
