#include <algorithm>
#include <cmath>

#include "holocorr/julia.hpp"

namespace holocorr {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::all_escape: return "all_escape";
    case Verdict::simple_centre: return "simple_centre";
    case Verdict::bounded_orbit_exists: return "bounded_orbit_exists";
    case Verdict::undetermined: return "undetermined";
  }
  return "unknown";
}

namespace {

struct Node {
  cplx z;
  std::int64_t parent;  // -1 at the root
};

}  // namespace

CentreClassification critical_orbit_classify(const Params& params, int depth,
                                             const ClassifyOptions& opts) {
  if (depth < 1) throw Error(ErrorCode::invalid_argument, "critical_orbit_classify: depth must be >= 1");
  CentreClassification out;
  out.escape_radius_used = escape_radius(params);
  const double R = out.escape_radius_used;

  std::vector<Node> nodes{{cplx{0.0, 0.0}, -1}};
  std::vector<std::size_t> frontier{0};
  std::vector<Orbit> witnesses;

  int level = 0;
  for (; level < depth && !frontier.empty(); ++level) {
    std::vector<std::size_t> next;
    for (std::size_t id : frontier) {
      std::vector<cplx> imgs = images(params, nodes[id].z);
      // Coincident images are one branch.
      std::vector<cplx> distinct;
      for (const cplx& w : imgs) {
        bool dup = false;
        for (const cplx& d : distinct) dup = dup || std::abs(w - d) <= opts.revisit_tol;
        if (!dup) distinct.push_back(w);
      }
      for (const cplx& w : distinct) {
        if (std::abs(w) > R) {
          ++out.pruned_branches;
          continue;
        }
        // Revisit check against every point on this branch, root included.
        std::vector<cplx> path;
        for (std::int64_t a = static_cast<std::int64_t>(id); a >= 0; a = nodes[static_cast<std::size_t>(a)].parent) {
          path.push_back(nodes[static_cast<std::size_t>(a)].z);
        }
        std::size_t hit = path.size();
        for (std::size_t j = 0; j < path.size(); ++j) {
          if (std::abs(path[j] - w) <= opts.revisit_tol) {
            hit = j;
            break;
          }
        }
        if (hit < path.size()) {
          ++out.closed_branches;
          // path is newest-first; the cycle runs from path[hit] back to w.
          std::vector<cplx> cycle(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(hit) + 1);
          std::reverse(cycle.begin(), cycle.end());
          cycle.push_back(w);
          witnesses.push_back(make_orbit(params, std::move(cycle)));
          continue;
        }
        if (nodes.size() >= opts.node_cap) {
          out.node_cap_hit = true;
          continue;
        }
        nodes.push_back({w, static_cast<std::int64_t>(id)});
        next.push_back(nodes.size() - 1);
      }
    }
    frontier = std::move(next);
    if (out.node_cap_hit) break;
  }
  out.depth_used = level;
  out.surviving_branches = frontier.size();
  if (!witnesses.empty()) out.periodic_witness = witnesses.front();

  const bool degenerate_fixed_zero =
      witnesses.size() == 1 && witnesses.front().length() == 1 &&
      std::abs(witnesses.front().points.front()) <= opts.revisit_tol;
  if (out.closed_branches == 0 && out.surviving_branches == 0 && !out.node_cap_hit) {
    out.verdict = Verdict::all_escape;
  } else if (out.closed_branches == 1 && out.surviving_branches == 0 && !out.node_cap_hit &&
             !degenerate_fixed_zero) {
    out.verdict = Verdict::simple_centre;
  } else if (out.closed_branches >= 1) {
    out.verdict = Verdict::bounded_orbit_exists;
  } else {
    out.verdict = Verdict::undetermined;
  }
  return out;
}

}  // namespace holocorr
