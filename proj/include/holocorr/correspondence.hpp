#pragma once

#include <span>
#include <utility>
#include <vector>

#include "holocorr/types.hpp"

namespace holocorr {

inline constexpr double kRelationTol = 1e-9;

/// z^n by repeated squaring; exact for the small exponents used here.
cplx ipow(cplx z, int n);

/// |(w - c)^q - z^p| / max(1, |z|^p).
double relation_residual(const Params& params, cplx z, cplx w);

/// The q images of z, ordered by j where w_j = c + e^{2 pi i j/q} exp((1/q) Log(z^p)).
/// images(0) is c repeated q times.
std::vector<cplx> images(const Params& params, cplx z);

/// The p preimages of w ordered by symbol label; preimages(c) is 0 repeated p times.
std::vector<cplx> preimages(const Params& params, cplx w, Labeling labeling = {});

/// z_k = e^{2 pi i k/p} exp((1/p) Log((w - c)^q)). Throws singular_point at w = c.
cplx inverse_branch(const Params& params, cplx w, int k, Labeling labeling = {});

/// Label k with inverse_branch(w, k) closest to z.
int branch_label(const Params& params, cplx z, cplx w, Labeling labeling = {});

/// Derivative of the univalent branch g with g(z0) = z1, namely p (z1 - c) / (q z0).
/// Throws singular_point at z0 = 0 and inconsistent_pair when (z0, z1) violates
/// the relation by more than tol.
cplx branch_derivative(const Params& params, cplx z0, cplx z1,
                       double tol = kRelationTol);

/// Geometric potential -log |branch_derivative(z0, z1)|.
double potential(const Params& params, cplx z0, cplx z1,
                 double tol = kRelationTol);

/// Builds an Orbit from raw points and records its relation residual.
Orbit make_orbit(const Params& params, std::vector<cplx> points);

/// Chain-rule derivative of g_{z_n-1, z_n} o ... o g_{z_0, z_1} at z_0.
cplx orbit_multiplier(const Params& params, const Orbit& orbit,
                      double tol = kRelationTol);

/// Smallest R >= 2 with r^{p/q} - |c| >= 2r for every r >= R. Every point
/// with |z| > R has all images of modulus at least 2|z|.
double escape_radius(const Params& params);

struct ExpansionFit {
  double C = 0.0;
  double lambda = 0.0;
};

/// Empirical hyperbolicity check over a sampled repeller. Not a proof.
struct HyperbolicityCertificate {
  double kappa = 0.0;
  int sample_count = 0;
  std::pair<cplx, cplx> min_pair;
  ExpansionFit expansion;

  bool passing() const noexcept { return kappa > 1.0; }
};

struct CertificateOptions {
  // Images farther than delta from every cloud point are not considered part
  // of the repeller.
  double delta = 0.02;
  int chain_length = 12;
  std::uint64_t rng_seed = 0x5eedULL;
};

HyperbolicityCertificate hyperbolicity_certificate(const Params& params,
                                                   const PointCloud& cloud,
                                                   int sample_count,
                                                   const CertificateOptions& opts = {});

/// Uniform-grid index over a point cloud, for "is there a cloud point within
/// delta" queries.
class CloudIndex {
 public:
  CloudIndex(std::span<const cplx> points, double cell);

  /// Distance to the nearest indexed point if it is within one cell, else +inf.
  double nearest_within_cell(cplx z) const;
  bool near(cplx z, double delta) const { return nearest_within_cell(z) <= delta; }

 private:
  std::int64_t key(std::int64_t ix, std::int64_t iy) const;

  double cell_;
  cplx origin_;
  std::vector<std::pair<std::int64_t, cplx>> entries_;  // sorted by key
};

}  // namespace holocorr
