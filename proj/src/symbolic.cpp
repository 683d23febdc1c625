#include "holocorr/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>

#include "holocorr/parallel.hpp"
#include "holocorr/rng.hpp"

namespace holocorr {

BackwardImage backward_map(const Params& params, const Word& word, cplx z, Labeling labeling) {
  const int n = word.length();
  BackwardImage out;
  out.trail.resize(static_cast<std::size_t>(n) + 1);
  out.trail[static_cast<std::size_t>(n)] = z;
  for (int i = n - 1; i >= 0; --i) {
    const int s = word.symbols[static_cast<std::size_t>(i)];
    if (s < 0 || s >= params.p()) {
      throw Error(ErrorCode::invalid_argument, "backward_map: symbol out of range");
    }
    const cplx w = out.trail[static_cast<std::size_t>(i) + 1];
    if (w == params.c()) {
      std::ostringstream os;
      os << "backward_map: singular value c reached at depth " << (n - 1 - i);
      throw SingularHit(n - 1 - i, os.str());
    }
    out.trail[static_cast<std::size_t>(i)] = inverse_branch(params, w, s, labeling);
  }
  out.point = out.trail.front();
  return out;
}

CylinderSample cylinder_representative(const Params& params, const Word& word, cplx seed,
                                       Labeling labeling) {
  if (word.length() < 1) {
    throw Error(ErrorCode::invalid_argument, "cylinder_representative: empty word");
  }
  const BackwardImage b = backward_map(params, word, seed, labeling);
  return {b.point, potential(params, b.trail[0], b.trail[1])};
}

namespace {

struct Candidate {
  bool ok = false;
  std::vector<cplx> points;
  double residual = 0.0;
  double multiplier = 0.0;
  std::string reason;
};

class WordSearch {
 public:
  WordSearch(const Params& params, const OrbitSearchConfig& cfg)
      : params_(params), cfg_(cfg), roots_(static_cast<std::size_t>(params.p())) {
    for (int k = 0; k < params.p(); ++k) {
      roots_[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / params.p());
    }
  }

  Candidate run(const Word& word, std::uint64_t index, cplx seed) const {
    std::string reason;
    try {
      if (auto pts = converge(word, seed, reason)) return validate(std::move(*pts));
    } catch (const Error& e) {
      reason = e.what();
    }
    auto rng = stream_for(cfg_.rng_seed, index);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const cplx perturbed = seed + std::polar(1e-3, angle(rng));
    try {
      if (auto pts = converge(word, perturbed, reason)) return validate(std::move(*pts));
    } catch (const Error& e) {
      reason = e.what();
    }
    Candidate c;
    c.reason = reason + " (after perturbed retry)";
    return c;
  }

 private:
  // Preimage of w nearest to `near`; continues the branch used on the
  // previous pass regardless of labels.
  cplx nearest_preimage(cplx w, cplx near) const {
    if (w == params_.c()) throw SingularHit(0, "search: singular value c reached");
    const cplx r0 = inverse_branch(params_, w, 0, cfg_.labeling);
    cplx best = r0;
    double best_d = std::abs(r0 - near);
    for (std::size_t k = 1; k < roots_.size(); ++k) {
      const cplx z = r0 * roots_[k];
      const double d = std::abs(z - near);
      if (d < best_d) {
        best_d = d;
        best = z;
      }
    }
    return best;
  }

  void continue_pass(std::vector<cplx>& zs, cplx start) const {
    const std::size_t n = zs.size() - 1;
    zs[n] = start;
    for (std::size_t i = n; i-- > 0;) zs[i] = nearest_preimage(zs[i + 1], zs[i]);
  }

  std::optional<std::vector<cplx>> converge(const Word& word, cplx seed, std::string& reason) const {
    std::vector<cplx> zs = backward_map(params_, word, seed, cfg_.labeling).trail;
    const std::size_t n = zs.size() - 1;
    bool converged = false;
    for (int it = 0; it < cfg_.max_iter; ++it) {
      const double scale = std::max(1.0, std::abs(zs[n]));
      if (std::abs(zs[0] - zs[n]) < cfg_.fix_tol * scale) {
        converged = true;
        break;
      }
      if (!std::isfinite(std::abs(zs[0]))) break;
      continue_pass(zs, zs[0]);
    }
    if (!converged) {
      reason = "backward iteration did not converge";
      return std::nullopt;
    }
    const double p = params_.p();
    const double q = params_.q();
    for (int s = 0; s < cfg_.newton_steps; ++s) {
      cplx dB{1.0, 0.0};
      for (std::size_t i = 0; i < n; ++i) {
        if (zs[i + 1] == params_.c()) throw SingularHit(static_cast<int>(n - i), "search: singular value c reached");
        dB *= q * zs[i] / (p * (zs[i + 1] - params_.c()));
      }
      const cplx F = zs[0] - zs[n];
      if (F == cplx{0.0, 0.0}) break;
      continue_pass(zs, zs[n] - F / (dB - 1.0));
    }
    return zs;
  }

  Candidate validate(std::vector<cplx> pts) const {
    Candidate c;
    const std::size_t n = pts.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (pts[i] == cplx{0.0, 0.0}) {
        c.reason = "orbit passes through 0";
        return c;
      }
    }
    const Orbit orbit = make_orbit(params_, pts);
    const double closure = std::abs(pts[n] - pts[0]);
    if (!(orbit.residual <= cfg_.residual_tol)) {
      c.reason = "relation residual above tolerance";
      return c;
    }
    if (!(closure <= cfg_.closure_tol * std::max(1.0, std::abs(pts[0])))) {
      c.reason = "orbit does not close";
      return c;
    }
    const double mult = std::abs(orbit_multiplier(params_, orbit, cfg_.residual_tol));
    if (!(mult > 1.0)) {
      c.reason = "cycle is not repelling";
      return c;
    }
    c.ok = true;
    c.points = std::move(pts);
    c.residual = orbit.residual;
    c.multiplier = mult;
    return c;
  }

  const Params& params_;
  const OrbitSearchConfig& cfg_;
  std::vector<cplx> roots_;
};

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;  // the smaller word index is the representative
  }
  std::vector<std::size_t> parent;
};

bool same_orbit(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol) {
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

}  // namespace

OrbitInventory periodic_points(const Params& params, int n, cplx seed,
                               const OrbitSearchConfig& cfg, Exec exec) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "periodic_points: period must be >= 1");
  const std::uint64_t total = checked_power(params.p(), n, cfg.word_cap);

  const WordSearch search(params, cfg);
  std::vector<Candidate> results(total);
  for_each_index(static_cast<std::int64_t>(total), exec, [&](std::int64_t i) {
    const auto idx = static_cast<std::uint64_t>(i);
    results[idx] = search.run(word_from_index(idx, params.p(), n), idx, seed);
  });

  OrbitInventory inv;
  inv.period = n;
  inv.expected_count = total;

  std::vector<std::size_t> ok;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].ok) {
      ok.push_back(i);
    } else {
      inv.failures.push_back({word_from_index(i, params.p(), n), results[i].reason});
    }
  }

  // Merge candidates that are the same based orbit. Sweep in order of
  // Re z_0, comparing only within the tolerance window.
  std::vector<std::size_t> order = ok;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return results[a].points[0].real() < results[b].points[0].real();
  });
  UnionFind uf(results.size());
  for (std::size_t a = 0; a < order.size(); ++a) {
    const auto& pa = results[order[a]].points;
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const auto& pb = results[order[b]].points;
      if (pb[0].real() - pa[0].real() > cfg.dedup_tol) break;
      if (same_orbit(pa, pb, cfg.dedup_tol)) uf.unite(order[a], order[b]);
    }
  }

  for (std::size_t i : ok) {
    if (uf.find(i) != i) {
      ++inv.duplicates_merged;
      continue;
    }
    Candidate& c = results[i];
    PeriodicOrbit po;
    po.orbit.points = std::move(c.points);
    po.orbit.residual = c.residual;
    po.period = n;
    po.multiplier_modulus = c.multiplier;
    po.word = word_from_index(i, params.p(), n);
    inv.orbits.push_back(std::move(po));
  }
  inv.found_count = inv.orbits.size();
  return inv;
}

}  // namespace holocorr
