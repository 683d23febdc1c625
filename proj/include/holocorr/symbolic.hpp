#pragma once

#include <string>
#include <vector>

#include "holocorr/correspondence.hpp"
#include "holocorr/types.hpp"

namespace holocorr {

/// Result of composing inverse branches along a word. trail[i] is z_i, so
/// trail[n] is the input point and trail[0] the n-step backward image; the
/// trail read forward is a valid orbit segment.
struct BackwardImage {
  cplx point;
  std::vector<cplx> trail;
};

/// Applies inverse_branch with symbols word[n-1], ..., word[0]. Throws
/// SingularHit (with the offending depth) if a step lands on c.
BackwardImage backward_map(const Params& params, const Word& word, cplx z,
                           Labeling labeling = {});

struct CylinderSample {
  cplx point;
  double potential_value;
};

/// Backward image of seed under word and the potential on its first forward
/// step. Requires a non-empty word.
CylinderSample cylinder_representative(const Params& params, const Word& word, cplx seed,
                                       Labeling labeling = {});

struct OrbitSearchConfig {
  double fix_tol = 1e-12;
  int max_iter = 200;
  int newton_steps = 2;
  double dedup_tol = 1e-8;
  double residual_tol = 1e-9;
  double closure_tol = 1e-9;
  Labeling labeling;
  std::uint64_t rng_seed = 0x5eedULL;
  // p^n above this is refused.
  std::uint64_t word_cap = std::uint64_t{1} << 22;
};

struct WordFailure {
  Word word;
  std::string reason;
};

struct OrbitInventory {
  int period = 0;
  std::vector<PeriodicOrbit> orbits;  // sorted by generating word
  std::uint64_t found_count = 0;
  std::uint64_t expected_count = 0;  // p^n
  std::uint64_t duplicates_merged = 0;
  std::vector<WordFailure> failures;
};

/// Period-n points of the correspondence, one search per word of length n.
///
/// The first backward pass follows the labelled branches of the word. Later
/// passes continue each step analytically, choosing the preimage nearest to
/// the previous pass, so the search follows one univalent composed branch
/// instead of re-entering the label cut. The fixed point is polished by Newton
/// on B(z) - z, validated by residual, closure and |multiplier| > 1, and
/// deduplicated as a whole orbit. Words that do not converge are retried once
/// from a perturbed seed and then recorded as failures.
OrbitInventory periodic_points(const Params& params, int n, cplx seed,
                               const OrbitSearchConfig& cfg = {},
                               Exec exec = Exec::parallel);

}  // namespace holocorr
