#include "holocorr/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace holocorr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(cplx z, const char* what) {
  if (!finite(z)) {
    throw Error(ErrorCode::invalid_argument, std::string(what) + ": non-finite input");
  }
}

// Argument of u^n with the cut rotated by `rotation`, computed as a wrapped
// multiple of arg(u) so that large |u| never overflows.
double wrapped_power_arg(cplx u, int n, double rotation) {
  double a = std::remainder(n * std::arg(u) - rotation, kTwoPi);
  if (a <= -std::numbers::pi) a += kTwoPi;
  return a + rotation;
}

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::singular_point: return "singular-point";
    case ErrorCode::inconsistent_pair: return "inconsistent-pair";
    case ErrorCode::numeric_failure: return "numeric-failure";
    case ErrorCode::hyperbolicity_unverified: return "hyperbolicity-unverified";
    case ErrorCode::bracket_failure: return "bracket-failure";
    case ErrorCode::seed_failure: return "seed-failure";
  }
  return "unknown";
}

const char* to_string(CloudSource source) {
  switch (source) {
    case CloudSource::backward_random: return "backward-random";
    case CloudSource::backward_tree: return "backward-tree";
    case CloudSource::periodic: return "periodic";
    case CloudSource::synthetic: return "synthetic";
  }
  return "unknown";
}

Params::Params(int p, int q, cplx c) : p_(p), q_(q), c_(c) {
  if (!(q >= 2 && p > q)) {
    throw Error(ErrorCode::invalid_argument, "params: require p > q >= 2");
  }
  if (std::gcd(p, q) != 1) {
    throw Error(ErrorCode::invalid_argument, "params: p and q must be coprime");
  }
  require_finite(c, "params.c");
}

Word word_from_index(std::uint64_t index, int p, int n) {
  Word w;
  w.symbols.assign(static_cast<std::size_t>(n), 0);
  for (int i = n - 1; i >= 0; --i) {
    w.symbols[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::uint64_t>(p));
    index /= static_cast<std::uint64_t>(p);
  }
  return w;
}

std::uint64_t word_index(const Word& word, int p) {
  std::uint64_t idx = 0;
  for (int s : word.symbols) idx = idx * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(s);
  return idx;
}

std::uint64_t checked_power(int base, int exponent, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (int i = 0; i < exponent; ++i) {
    v *= static_cast<std::uint64_t>(base);
    if (v > cap) {
      std::ostringstream os;
      os << base << "^" << exponent << " exceeds cap " << cap;
      throw Error(ErrorCode::invalid_argument, os.str());
    }
  }
  return v;
}

cplx ipow(cplx z, int n) {
  cplx result{1.0, 0.0};
  cplx base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

double relation_residual(const Params& params, cplx z, cplx w) {
  const cplx zp = ipow(z, params.p());
  const cplx lhs = ipow(w - params.c(), params.q());
  return std::abs(lhs - zp) / std::max(1.0, std::abs(zp));
}

std::vector<cplx> images(const Params& params, cplx z) {
  require_finite(z, "images");
  const int q = params.q();
  std::vector<cplx> out(static_cast<std::size_t>(q), params.c());
  if (z == cplx{0.0, 0.0}) return out;
  const double log_mod = std::log(std::abs(z)) * params.p() / q;
  const double arg = wrapped_power_arg(z, params.p(), 0.0) / q;
  for (int j = 0; j < q; ++j) {
    out[static_cast<std::size_t>(j)] += std::polar(std::exp(log_mod), arg + kTwoPi * j / q);
  }
  return out;
}

std::vector<cplx> preimages(const Params& params, cplx w, Labeling labeling) {
  require_finite(w, "preimages");
  const int p = params.p();
  std::vector<cplx> out(static_cast<std::size_t>(p), cplx{0.0, 0.0});
  if (w == params.c()) return out;
  for (int k = 0; k < p; ++k) out[static_cast<std::size_t>(k)] = inverse_branch(params, w, k, labeling);
  return out;
}

cplx inverse_branch(const Params& params, cplx w, int k, Labeling labeling) {
  require_finite(w, "inverse_branch");
  const int p = params.p();
  if (k < 0 || k >= p) {
    throw Error(ErrorCode::invalid_argument, "inverse_branch: symbol out of range");
  }
  const cplx d = w - params.c();
  if (d == cplx{0.0, 0.0}) {
    throw Error(ErrorCode::singular_point, "inverse_branch: w equals c");
  }
  const int q = params.q();
  const double log_mod = q * std::log(std::abs(d)) / p;
  const double arg = (wrapped_power_arg(d, q, labeling.cut_rotation) + kTwoPi * k) / p;
  return std::polar(std::exp(log_mod), arg);
}

int branch_label(const Params& params, cplx z, cplx w, Labeling labeling) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int k = 0; k < params.p(); ++k) {
    const double d = std::abs(inverse_branch(params, w, k, labeling) - z);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

cplx branch_derivative(const Params& params, cplx z0, cplx z1, double tol) {
  require_finite(z0, "branch_derivative");
  require_finite(z1, "branch_derivative");
  if (z0 == cplx{0.0, 0.0}) {
    throw Error(ErrorCode::singular_point, "branch_derivative: z0 = 0");
  }
  const double r = relation_residual(params, z0, z1);
  if (!(r <= tol)) {
    std::ostringstream os;
    os << "branch_derivative: relation residual " << r << " above " << tol;
    throw Error(ErrorCode::inconsistent_pair, os.str());
  }
  return static_cast<double>(params.p()) * (z1 - params.c()) /
         (static_cast<double>(params.q()) * z0);
}

double potential(const Params& params, cplx z0, cplx z1, double tol) {
  return -std::log(std::abs(branch_derivative(params, z0, z1, tol)));
}

Orbit make_orbit(const Params& params, std::vector<cplx> points) {
  Orbit orbit;
  orbit.points = std::move(points);
  for (std::size_t i = 0; i + 1 < orbit.points.size(); ++i) {
    orbit.residual = std::max(orbit.residual,
                              relation_residual(params, orbit.points[i], orbit.points[i + 1]));
  }
  return orbit;
}

cplx orbit_multiplier(const Params& params, const Orbit& orbit, double tol) {
  if (orbit.points.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "orbit_multiplier: orbit needs at least one step");
  }
  cplx m{1.0, 0.0};
  for (std::size_t i = 0; i + 1 < orbit.points.size(); ++i) {
    m *= branch_derivative(params, orbit.points[i], orbit.points[i + 1], tol);
  }
  return m;
}

double escape_radius(const Params& params) {
  const double beta = params.beta();
  const double cmod = std::abs(params.c());
  auto h = [&](double r) { return std::pow(r, beta) - cmod - 2.0 * r; };
  // h is convex with h -> +inf, so {h >= 0} on [2, inf) is eventually an
  // interval [root, inf). Locate the largest root.
  double hi = 2.0;
  while (h(hi) < 0.0 || std::pow(hi, beta - 1.0) * beta < 2.0) hi *= 2.0;
  if (h(2.0) >= 0.0 && beta * std::pow(2.0, beta - 1.0) >= 2.0) return 2.0;
  // On [lo, hi] h crosses zero from below at the largest root; lo starts at
  // the minimiser of h so the bisection brackets a single sign change.
  const double rmin = std::pow(2.0 / beta, 1.0 / (beta - 1.0));
  const double lo0 = std::max(2.0, rmin);
  if (h(lo0) >= 0.0) return 2.0;
  double lo = lo0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace holocorr
