#include <algorithm>
#include <cmath>
#include <limits>

#include "holocorr/julia.hpp"

namespace holocorr {

RenderFrame render_frame(const PointCloud& cloud) {
  if (cloud.points.empty()) throw Error(ErrorCode::invalid_argument, "render: empty cloud");
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = x0;
  double x1 = -x0;
  double y1 = -x0;
  for (const cplx& z : cloud.points) {
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
  }
  // A single point or a segment still gets a frame of nonzero extent.
  const double w = x1 > x0 ? x1 - x0 : 1.0;
  const double h = y1 > y0 ? y1 - y0 : 1.0;
  if (x1 <= x0) { x0 -= 0.5; x1 += 0.5; }
  if (y1 <= y0) { y0 -= 0.5; y1 += 0.5; }
  return {x0 - 0.05 * w, x1 + 0.05 * w, y0 - 0.05 * h, y1 + 0.05 * h};
}

GrayImage render(const PointCloud& cloud, int width, int height) {
  if (width < 1 || height < 1) throw Error(ErrorCode::invalid_argument, "render: size must be positive");
  const RenderFrame f = render_frame(cloud);
  const auto W = static_cast<std::size_t>(width);
  const auto H = static_cast<std::size_t>(height);
  std::vector<std::uint32_t> hits(W * H, 0);
  for (const cplx& z : cloud.points) {
    const auto col = static_cast<std::int64_t>((z.real() - f.x0) / (f.x1 - f.x0) * width);
    const auto row = static_cast<std::int64_t>((f.y1 - z.imag()) / (f.y1 - f.y0) * height);
    if (col < 0 || row < 0 || col >= width || row >= height) continue;
    ++hits[static_cast<std::size_t>(row) * W + static_cast<std::size_t>(col)];
  }
  const std::uint32_t top = *std::max_element(hits.begin(), hits.end());
  GrayImage img{width, height, std::vector<std::uint8_t>(W * H, 0)};
  if (top == 0) return img;
  const double norm = std::log1p(static_cast<double>(top));
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i] == 0) continue;
    // Any hit is at least 1 so lit pixels stay distinguishable from empty ones.
    const double v = 255.0 * std::log1p(static_cast<double>(hits[i])) / norm;
    img.pixels[i] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 1L, 255L));
  }
  return img;
}

}  // namespace holocorr
