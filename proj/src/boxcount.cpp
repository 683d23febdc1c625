#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "holocorr/julia.hpp"

namespace holocorr {

BoundingSquare bounding_square(std::span<const cplx> points) {
  if (points.empty()) throw Error(ErrorCode::invalid_argument, "bounding_square: empty cloud");
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = x0;
  double x1 = -x0;
  double y1 = -x0;
  for (const cplx& z : points) {
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
  }
  const double side = std::max(x1 - x0, y1 - y0);
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw Error(ErrorCode::invalid_argument, "bounding_square: degenerate cloud (diameter 0)");
  }
  return {{x0, y0}, side};
}

namespace {

std::uint64_t cell_key(cplx z, const BoundingSquare& bs, double scale, std::int64_t last) {
  const auto ix = std::clamp(static_cast<std::int64_t>((z.real() - bs.origin.real()) * scale),
                             std::int64_t{0}, last);
  const auto iy = std::clamp(static_cast<std::int64_t>((z.imag() - bs.origin.imag()) * scale),
                             std::int64_t{0}, last);
  return (static_cast<std::uint64_t>(ix) << 32) | static_cast<std::uint64_t>(iy);
}

std::vector<std::uint64_t> merge_unique(const std::vector<std::uint64_t>& a,
                                        const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::uint64_t count_boxes(std::span<const cplx> points, const BoundingSquare& bs, int k,
                          Exec exec) {
  if (k < 0 || k > 31) throw Error(ErrorCode::invalid_argument, "count_boxes: k must be in [0, 31]");
  const std::int64_t cells = std::int64_t{1} << k;
  const double scale = static_cast<double>(cells) / bs.side;
  const std::int64_t last = cells - 1;

  if (exec == Exec::serial) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(points.size());
    for (const cplx& z : points) seen.insert(cell_key(z, bs, scale, last));
    return seen.size();
  }

  // Each thread builds a sorted cell set for a contiguous chunk; the sets are
  // then merged pairwise.
  const int threads = std::max(1, omp_get_max_threads());
  std::vector<std::vector<std::uint64_t>> parts(static_cast<std::size_t>(threads));
  const std::size_t n = points.size();
#pragma omp parallel for schedule(static) num_threads(threads)
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = n * static_cast<std::size_t>(t) / static_cast<std::size_t>(threads);
    const std::size_t hi = n * static_cast<std::size_t>(t + 1) / static_cast<std::size_t>(threads);
    auto& keys = parts[static_cast<std::size_t>(t)];
    keys.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) keys.push_back(cell_key(points[i], bs, scale, last));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  }
  while (parts.size() > 1) {
    std::vector<std::vector<std::uint64_t>> next((parts.size() + 1) / 2);
    const auto pairs = static_cast<std::int64_t>(parts.size() / 2);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < pairs; ++i) {
      const auto j = static_cast<std::size_t>(i);
      next[j] = merge_unique(parts[2 * j], parts[2 * j + 1]);
    }
    if (parts.size() % 2 == 1) next.back() = std::move(parts.back());
    parts = std::move(next);
  }
  return parts.front().size();
}

BoxCountResult box_counting(const PointCloud& cloud, int k_min, int k_max, Exec exec) {
  if (cloud.points.size() < kMinBoxCountPoints) {
    std::ostringstream os;
    os << "box_counting: need at least " << kMinBoxCountPoints << " points, got "
       << cloud.points.size();
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  if (k_min < 0 || k_max - k_min < 4) {
    throw Error(ErrorCode::invalid_argument, "box_counting: need k_min >= 0 and k_max - k_min >= 4");
  }
  const BoundingSquare bs = bounding_square(cloud.points);

  BoxCountResult res;
  std::vector<double> xs;
  std::vector<double> ys;
  for (int k = k_min; k <= k_max; ++k) {
    const double eps = bs.side / std::ldexp(1.0, k);
    const std::uint64_t n = count_boxes(cloud.points, bs, k, exec);
    res.scales.emplace_back(eps, n);
    xs.push_back(-std::log(eps));
    ys.push_back(std::log(static_cast<double>(n)));
  }
  res.scale_range = {res.scales.back().first, res.scales.front().first};

  const auto m = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  res.dimension = sxy / sxx;
  res.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 0.0;
  if (!(res.r_squared >= kMinBoxFitRSquared)) {
    std::ostringstream os;
    os << "box_counting: log-log fit r^2 = " << res.r_squared << " below " << kMinBoxFitRSquared
       << " (slope " << res.dimension << ")";
    throw Error(ErrorCode::numeric_failure, os.str());
  }
  return res;
}

}  // namespace holocorr
