#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "holocorr/correspondence.hpp"
#include "holocorr/types.hpp"

namespace holocorr {

/// Newton on (z - c)^q - z^p from z = 1, continued in c in steps of 0.05 when
/// |c| > 0.1. Throws seed_failure if Newton diverges or the fixed point found
/// is not repelling.
cplx repelling_fixed_point(const Params& params);

/// Random backward iteration from the repelling fixed point: `transient`
/// discarded steps per chain, then points recorded. Work is split into a fixed
/// number of independently seeded chains, so output depends only on the
/// arguments.
PointCloud julia_backward(const Params& params, std::size_t count, int transient,
                          std::uint64_t rng_seed, Exec exec = Exec::parallel);

/// All p^depth leaves of the preimage tree of the repelling fixed point.
PointCloud julia_tree(const Params& params, int depth, Exec exec = Exec::parallel,
                      std::uint64_t cap = std::uint64_t{1} << 22);

struct BoundingSquare {
  cplx origin;  // lower-left corner
  double side = 0.0;
};

BoundingSquare bounding_square(std::span<const cplx> points);

/// Number of occupied cells of side bs.side / 2^k.
std::uint64_t count_boxes(std::span<const cplx> points, const BoundingSquare& bs, int k,
                          Exec exec = Exec::parallel);

struct BoxCountResult {
  std::vector<std::pair<double, std::uint64_t>> scales;  // (eps, N(eps))
  double dimension = 0.0;
  double r_squared = 0.0;
  std::pair<double, double> scale_range;  // (eps_min, eps_max)
};

inline constexpr double kMinBoxFitRSquared = 0.99;
inline constexpr std::size_t kMinBoxCountPoints = 10000;

/// Box-counting dimension from eps_k = side / 2^k, k = k_min..k_max. Throws
/// numeric_failure when the log-log fit has r^2 below 0.99.
BoxCountResult box_counting(const PointCloud& cloud, int k_min, int k_max,
                            Exec exec = Exec::parallel);

enum class Verdict { all_escape, simple_centre, bounded_orbit_exists, undetermined };

const char* to_string(Verdict v);

struct CentreClassification {
  Verdict verdict = Verdict::undetermined;
  std::optional<Orbit> periodic_witness;
  int depth_used = 0;
  double escape_radius_used = 0.0;
  std::size_t closed_branches = 0;
  std::size_t surviving_branches = 0;
  std::size_t pruned_branches = 0;
  bool node_cap_hit = false;
};

struct ClassifyOptions {
  double revisit_tol = 1e-9;
  std::size_t node_cap = std::size_t{1} << 22;
};

/// Explores the q-ary tree of forward orbits of 0 to `depth`, pruning branches
/// that leave |z| <= escape_radius and closing branches that revisit one of
/// their own earlier points.
CentreClassification critical_orbit_classify(const Params& params, int depth,
                                             const ClassifyOptions& opts = {});

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, row 0 at the top

  std::uint8_t at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
};

struct RenderFrame {
  double x0, x1, y0, y1;
};

/// Bounding box of the cloud grown by 5% on each side.
RenderFrame render_frame(const PointCloud& cloud);

/// Log-scaled hit-count histogram of the cloud over render_frame(cloud).
GrayImage render(const PointCloud& cloud, int width, int height);

}  // namespace holocorr
