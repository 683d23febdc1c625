#include "holocorr/julia.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "holocorr/parallel.hpp"
#include "holocorr/rng.hpp"

namespace holocorr {

namespace {

constexpr double kFixedPointTol = 1e-12;
constexpr double kContinuationStep = 0.05;
constexpr int kBackwardChains = 64;

double fixed_point_residual(const Params& params, cplx z) {
  return std::abs(ipow(z - params.c(), params.q()) - ipow(z, params.p()));
}

cplx newton_fixed_point(const Params& params, cplx z) {
  const int p = params.p();
  const int q = params.q();
  for (int it = 0; it < 100; ++it) {
    const cplx d = z - params.c();
    const cplx f = ipow(d, q) - ipow(z, p);
    const cplx df = static_cast<double>(q) * ipow(d, q - 1) - static_cast<double>(p) * ipow(z, p - 1);
    if (df == cplx{0.0, 0.0} || !std::isfinite(std::abs(f))) break;
    const cplx step = f / df;
    z -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
  }
  if (!std::isfinite(std::abs(z))) {
    throw Error(ErrorCode::seed_failure, "fixed point: Newton diverged");
  }
  return z;
}

}  // namespace

cplx repelling_fixed_point(const Params& params) {
  const cplx c = params.c();
  cplx z{1.0, 0.0};
  if (std::abs(c) > 0.1) {
    const int steps = static_cast<int>(std::ceil(std::abs(c) / kContinuationStep));
    for (int k = 1; k < steps; ++k) {
      const Params partial(params.p(), params.q(), c * (static_cast<double>(k) / steps));
      z = newton_fixed_point(partial, z);
    }
  }
  z = newton_fixed_point(params, z);
  const double res = fixed_point_residual(params, z);
  if (!(res <= kFixedPointTol)) {
    std::ostringstream os;
    os << "fixed point: residual " << res << " above " << kFixedPointTol;
    throw Error(ErrorCode::seed_failure, os.str());
  }
  if (z == cplx{0.0, 0.0}) throw Error(ErrorCode::seed_failure, "fixed point: Newton reached 0");
  const double mult = std::abs(static_cast<double>(params.p()) * (z - c) /
                               (static_cast<double>(params.q()) * z));
  if (!(mult > 1.0)) {
    std::ostringstream os;
    os << "fixed point " << z << " is not repelling (|multiplier| = " << mult << ")";
    throw Error(ErrorCode::seed_failure, os.str());
  }
  return z;
}

PointCloud julia_backward(const Params& params, std::size_t count, int transient,
                          std::uint64_t rng_seed, Exec exec) {
  if (count < 1 || transient < 1) {
    throw Error(ErrorCode::invalid_argument, "julia_backward: count and transient must be >= 1");
  }
  const cplx seed = repelling_fixed_point(params);
  const int p = params.p();

  // Chain i owns a contiguous block of the output.
  const std::size_t chains = kBackwardChains;
  std::vector<std::size_t> offset(chains + 1, 0);
  for (std::size_t i = 0; i < chains; ++i) {
    offset[i + 1] = offset[i] + count / chains + (i < count % chains ? 1 : 0);
  }

  PointCloud cloud;
  cloud.points.resize(count);
  cloud.source = CloudSource::backward_random;
  cloud.params = params;
  cloud.rng_seed = rng_seed;

  for_each_index(static_cast<std::int64_t>(chains), exec, [&](std::int64_t ci) {
    const auto i = static_cast<std::size_t>(ci);
    const std::size_t n = offset[i + 1] - offset[i];
    if (n == 0) return;
    auto rng = stream_for(rng_seed, i);
    std::uniform_int_distribution<int> symbol(0, p - 1);
    cplx z = seed;
    auto step = [&] {
      // A draw landing exactly on c would have no well-defined next step; redraw.
      for (int tries = 0; tries < 16; ++tries) {
        const cplx next = inverse_branch(params, z, symbol(rng));
        if (next != params.c()) {
          z = next;
          return;
        }
      }
      throw Error(ErrorCode::numeric_failure, "julia_backward: repeated singular hits");
    };
    for (int t = 0; t < transient; ++t) step();
    for (std::size_t k = 0; k < n; ++k) {
      step();
      cloud.points[offset[i] + k] = z;
    }
  });
  return cloud;
}

PointCloud julia_tree(const Params& params, int depth, Exec exec, std::uint64_t cap) {
  if (depth < 1) throw Error(ErrorCode::invalid_argument, "julia_tree: depth must be >= 1");
  checked_power(params.p(), depth, cap);
  const auto np = static_cast<std::uint64_t>(params.p());
  std::vector<cplx> level{repelling_fixed_point(params)};
  for (int l = 0; l < depth; ++l) {
    std::vector<cplx> next(level.size() * np);
    for_each_index(static_cast<std::int64_t>(next.size()), exec, [&](std::int64_t ii) {
      const auto i = static_cast<std::uint64_t>(ii);
      next[i] = inverse_branch(params, level[i / np], static_cast<int>(i % np));
    });
    level = std::move(next);
  }
  PointCloud cloud;
  cloud.points = std::move(level);
  cloud.source = CloudSource::backward_tree;
  cloud.params = params;
  return cloud;
}

}  // namespace holocorr
