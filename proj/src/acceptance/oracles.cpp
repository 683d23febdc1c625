#include "oracles.hpp"

extern "C" {
#include <quadmath.h>
}

#include <cmath>
#include <numbers>
#include <random>

namespace holocorr::oracle {

double closed_form_t0(int p, int q) {
  return std::log(static_cast<double>(p)) / std::log(static_cast<double>(p) / q);
}

double c0_pressure(int p, int q, double t) {
  return std::log(static_cast<double>(p)) - t * std::log(static_cast<double>(p) / q);
}

std::uint64_t c0_cycle_count(int p, int q, int n) {
  std::uint64_t pn = 1;
  std::uint64_t qn = 1;
  for (int i = 0; i < n; ++i) {
    pn *= static_cast<std::uint64_t>(p);
    qn *= static_cast<std::uint64_t>(q);
  }
  return pn - qn;
}

namespace {

__complex128 to_q(cplx z) {
  __complex128 r;
  __real__ r = z.real();
  __imag__ r = z.imag();
  return r;
}

// Forward branch through (z0, z1): z -> c + (z1 - c) (z / z0)^{p/q}, with the
// principal power of a ratio near 1.
__complex128 branch(const Params& params, __complex128 z0, __complex128 z1, __complex128 z) {
  const __float128 beta = static_cast<__float128>(params.p()) / params.q();
  const __complex128 c = to_q(params.c());
  return c + (z1 - c) * cexpq(beta * clogq(z / z0));
}

double error_at(const Params& params, __complex128 z0, __complex128 z1, __complex128 d, double h) {
  const __float128 hq = h;
  const __complex128 fd = (branch(params, z0, z1, z0 + hq) - branch(params, z0, z1, z0 - hq)) / (2 * hq);
  return static_cast<double>(cabsq(fd - d));
}

}  // namespace

FdOrder finite_difference_order(const Params& params, cplx z0, cplx z1, cplx derivative, double h) {
  const __complex128 q0 = to_q(z0);
  const __complex128 q1 = to_q(z1);
  const __complex128 d = to_q(derivative);
  FdOrder out;
  out.error_coarse = error_at(params, q0, q1, d, h);
  out.error_fine = error_at(params, q0, q1, d, h / 10.0);
  out.order = std::log10(out.error_coarse / out.error_fine);
  return out;
}

PointCloud circle_cloud(std::size_t n) {
  PointCloud cloud;
  cloud.source = CloudSource::synthetic;
  cloud.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    cloud.points.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n)));
  }
  return cloud;
}

PointCloud filled_square_cloud(std::size_t n, std::uint64_t seed) {
  PointCloud cloud;
  cloud.source = CloudSource::synthetic;
  cloud.rng_seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  cloud.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = u(rng);
    cloud.points.emplace_back(x, u(rng));
  }
  return cloud;
}

PointCloud cantor_dust_cloud(int level) {
  std::vector<double> line{0.0};
  double scale = 1.0;
  for (int l = 0; l < level; ++l) {
    scale /= 3.0;
    std::vector<double> next;
    next.reserve(line.size() * 2);
    for (double x : line) {
      next.push_back(x);
      next.push_back(x + 2.0 * scale);
    }
    line = std::move(next);
  }
  PointCloud cloud;
  cloud.source = CloudSource::synthetic;
  cloud.points.reserve(line.size() * line.size());
  for (double y : line) {
    for (double x : line) cloud.points.emplace_back(x, y);
  }
  return cloud;
}

}  // namespace holocorr::oracle
