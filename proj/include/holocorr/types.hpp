#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace holocorr {

using cplx = std::complex<double>;

enum class ErrorCode {
  invalid_argument,
  singular_point,
  inconsistent_pair,
  numeric_failure,
  hyperbolicity_unverified,
  bracket_failure,
  seed_failure,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown by backward compositions when a step lands on the singular value c.
class SingularHit : public Error {
 public:
  SingularHit(int depth, const std::string& what)
      : Error(ErrorCode::singular_point, what), depth_(depth) {}
  int depth() const noexcept { return depth_; }

 private:
  int depth_;
};

/// The family datum of (w - c)^q = z^p. Construction enforces p > q >= 2 and
/// gcd(p, q) = 1.
class Params {
 public:
  Params(int p, int q, cplx c);

  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  cplx c() const noexcept { return c_; }
  /// Exponent of the multifunction z^beta + c.
  double beta() const noexcept { return static_cast<double>(p_) / q_; }

  friend bool operator==(const Params&, const Params&) = default;

 private:
  int p_;
  int q_;
  cplx c_;
};

/// Principal-log convention for labelling inverse branches. The argument of
/// (w - c)^q is taken in (-pi + cut_rotation, pi + cut_rotation].
struct Labeling {
  double cut_rotation = 0.0;
};

/// Serial kernels are the reference implementations used in tests; parallel
/// kernels must agree with them bit for bit.
enum class Exec { serial, parallel };

/// Finite orbit z_0 -> z_1 -> ... -> z_n with z_{i+1} an image of z_i.
struct Orbit {
  std::vector<cplx> points;
  double residual = 0.0;

  int length() const noexcept { return static_cast<int>(points.size()) - 1; }
};

/// Symbol sequence over {0, ..., p-1}; symbols[i] labels z_i as a preimage of
/// z_{i+1}.
struct Word {
  std::vector<int> symbols;

  int length() const noexcept { return static_cast<int>(symbols.size()); }
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

/// Word of length n whose base-p digits (most significant first) spell index.
Word word_from_index(std::uint64_t index, int p, int n);
std::uint64_t word_index(const Word& word, int p);
std::uint64_t checked_power(int base, int exponent, std::uint64_t cap);

struct PeriodicOrbit {
  Orbit orbit;
  int period = 0;
  double multiplier_modulus = 0.0;
  Word word;
};

enum class CloudSource { backward_random, backward_tree, periodic, synthetic };

const char* to_string(CloudSource source);

struct PointCloud {
  std::vector<cplx> points;
  CloudSource source = CloudSource::backward_random;
  // Parameters the cloud was generated from; empty for synthetic clouds.
  std::optional<Params> params;
  std::uint64_t rng_seed = 0;
};

}  // namespace holocorr
