#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "holocorr/correspondence.hpp"
#include "holocorr/julia.hpp"

using namespace holocorr;

namespace {

std::vector<cplx> random_points(std::size_t n, std::uint64_t seed, double rmin = 0.3, double rmax = 2.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> r(rmin, rmax);
  std::uniform_real_distribution<double> a(-std::numbers::pi, std::numbers::pi);
  std::vector<cplx> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::polar(r(rng), a(rng)));
  return out;
}

const Params kParams[] = {Params(5, 2, {0, 0}), Params(5, 2, {0.05, 0}), Params(3, 2, {0.1, -0.2}),
                          Params(7, 3, {0.02, 0.02})};

}  // namespace

TEST_SUITE("correspondence") {

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(Params(2, 2, {0, 0}), Error);
  CHECK_THROWS_AS(Params(4, 2, {0, 0}), Error);
  CHECK_THROWS_AS(Params(3, 1, {0, 0}), Error);
  CHECK_THROWS_AS(Params(2, 3, {0, 0}), Error);
  CHECK_THROWS_AS(Params(5, 2, {std::nan(""), 0}), Error);
  CHECK_NOTHROW(Params(5, 3, {1, 1}));
}

TEST_CASE("images satisfy the relation and are distinct") {
  for (const Params& P : kParams) {
    for (cplx z : random_points(200, 1)) {
      const auto ws = images(P, z);
      REQUIRE(ws.size() == static_cast<std::size_t>(P.q()));
      for (std::size_t i = 0; i < ws.size(); ++i) {
        CHECK(relation_residual(P, z, ws[i]) <= 1e-12);
        for (std::size_t j = i + 1; j < ws.size(); ++j) CHECK(std::abs(ws[i] - ws[j]) > 1e-9);
      }
    }
  }
}

TEST_CASE("images of 0 collapse to c") {
  const Params P(5, 2, {0.3, 0.1});
  for (cplx w : images(P, {0, 0})) CHECK(w == P.c());
}

TEST_CASE("preimages invert images") {
  for (const Params& P : kParams) {
    for (cplx w : random_points(200, 2)) {
      if (std::abs(w - P.c()) < 1e-6) continue;
      const auto zs = preimages(P, w);
      REQUIRE(zs.size() == static_cast<std::size_t>(P.p()));
      for (cplx z : zs) CHECK(relation_residual(P, z, w) <= 1e-12);
    }
  }
}

TEST_CASE("branch labels round-trip under any cut rotation") {
  for (double rot : {0.0, 0.3, -1.1}) {
    const Labeling lab{rot};
    for (const Params& P : kParams) {
      for (cplx w : random_points(100, 3)) {
        for (int k = 0; k < P.p(); ++k) {
          const cplx z = inverse_branch(P, w, k, lab);
          CHECK(branch_label(P, z, w, lab) == k);
        }
      }
    }
  }
}

TEST_CASE("inverse_branch rejects bad input") {
  const Params P(5, 2, {0.05, 0});
  CHECK_THROWS_AS(inverse_branch(P, {1, 0}, 5), Error);
  CHECK_THROWS_AS(inverse_branch(P, P.c(), 0), Error);
}

TEST_CASE("branch derivative formula and errors") {
  const Params P(5, 2, {0.05, 0});
  const cplx z0{0.7, 0.4};
  const cplx z1 = images(P, z0)[1];
  const cplx d = branch_derivative(P, z0, z1);
  CHECK(std::abs(d - 5.0 * (z1 - P.c()) / (2.0 * z0)) <= 1e-15 * std::abs(d));
  CHECK(potential(P, z0, z1) == doctest::Approx(-std::log(std::abs(d))).epsilon(1e-15));

  try {
    branch_derivative(P, {0, 0}, P.c());
    FAIL("expected singular_point");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular_point);
  }
  try {
    branch_derivative(P, z0, z1 + 0.1);
    FAIL("expected inconsistent_pair");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::inconsistent_pair);
  }
}

TEST_CASE("at c = 0 every branch on the unit circle has modulus p/q") {
  const Params P(5, 2, {0, 0});
  for (cplx z : random_points(100, 4, 1.0, 1.0)) {
    for (cplx w : images(P, z)) CHECK(std::abs(branch_derivative(P, z, w)) == doctest::Approx(2.5).epsilon(1e-13));
  }
}

TEST_CASE("orbit multiplier is the product of step derivatives") {
  const Params P(5, 2, {0.05, 0});
  std::vector<cplx> pts{{0.9, 0.2}};
  cplx prod{1, 0};
  for (int i = 0; i < 5; ++i) {
    const cplx w = images(P, pts.back())[static_cast<std::size_t>(i % 2)];
    prod *= branch_derivative(P, pts.back(), w);
    pts.push_back(w);
  }
  const Orbit o = make_orbit(P, pts);
  CHECK(o.length() == 5);
  CHECK(o.residual <= 1e-12);
  CHECK(std::abs(orbit_multiplier(P, o) - prod) <= 1e-12 * std::abs(prod));
}

TEST_CASE("escape radius values") {
  CHECK(escape_radius(Params(5, 2, {0, 0})) == 2.0);
  CHECK(escape_radius(Params(3, 2, {0, 0})) == doctest::Approx(4.0).epsilon(1e-12));
  const double r = escape_radius(Params(5, 2, {10, 0}));
  CHECK(std::pow(r, 2.5) - 10.0 - 2.0 * r == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("escape radius: images beyond R at least double in modulus") {
  for (const Params& P : {Params(5, 2, {0.05, 0}), Params(3, 2, {1.0, 1.0}), Params(7, 3, {-2, 0.5})}) {
    const double R = escape_radius(P);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> r(R * 1.000001, 4 * R);
    std::uniform_real_distribution<double> a(-std::numbers::pi, std::numbers::pi);
    for (int i = 0; i < 500; ++i) {
      const cplx z = std::polar(r(rng), a(rng));
      for (cplx w : images(P, z)) CHECK(std::abs(w) >= 2.0 * std::abs(z) * (1 - 1e-12));
    }
  }
}

TEST_CASE("words and caps") {
  for (std::uint64_t i : {0ULL, 1ULL, 77ULL, 624ULL}) CHECK(word_index(word_from_index(i, 5, 4), 5) == i);
  CHECK(word_from_index(7, 5, 2).symbols == std::vector<int>{1, 2});
  CHECK(checked_power(5, 8, 1ULL << 22) == 390625);
  CHECK_THROWS_AS(checked_power(5, 10, 1ULL << 22), Error);
}

TEST_CASE("hyperbolicity certificate at c = 0 sees kappa = p/q") {
  const Params P(5, 2, {0, 0});
  const PointCloud cloud = julia_backward(P, 20000, 50, 11);
  const auto cert = hyperbolicity_certificate(P, cloud, 2000);
  CHECK(cert.passing());
  CHECK(cert.kappa == doctest::Approx(2.5).epsilon(1e-9));
  CHECK(cert.expansion.lambda > 1.0);
  CHECK(cert.expansion.lambda <= cert.kappa * (1 + 1e-12));
}

TEST_CASE("cloud index nearest neighbour") {
  const std::vector<cplx> pts{{0, 0}, {1, 0}, {0.5, 0.5}};
  const CloudIndex idx(pts, 0.1);
  CHECK(idx.near({0.52, 0.5}, 0.03));
  CHECK_FALSE(idx.near({0.3, 0.3}, 0.05));
}

}  // TEST_SUITE
