#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "holocorr/julia.hpp"
#include "holocorr/symbolic.hpp"
#include "oracles.hpp"

using namespace holocorr;

TEST_SUITE("symbolic") {

TEST_CASE("backward_map trail follows the word") {
  const Params P(5, 2, {0.05, 0});
  const cplx seed = repelling_fixed_point(P);
  const Word w{{3, 0, 4, 1}};
  const BackwardImage b = backward_map(P, w, seed);
  REQUIRE(b.trail.size() == 5);
  CHECK(b.trail.back() == seed);
  CHECK(b.point == b.trail.front());
  for (int i = 0; i < 4; ++i) {
    const auto k = static_cast<std::size_t>(i);
    CHECK(relation_residual(P, b.trail[k], b.trail[k + 1]) <= 1e-12);
    CHECK(branch_label(P, b.trail[k], b.trail[k + 1]) == w.symbols[k]);
  }
  CHECK_THROWS_AS(backward_map(P, Word{{5}}, seed), Error);
}

TEST_CASE("cylinder representative carries the first-step potential") {
  const Params P(5, 2, {0.05, 0});
  const cplx seed = repelling_fixed_point(P);
  const Word w{{2, 2, 1}};
  const auto s = cylinder_representative(P, w, seed);
  const auto b = backward_map(P, w, seed);
  CHECK(s.point == b.point);
  CHECK(s.potential_value == potential(P, b.trail[0], b.trail[1]));
}

TEST_CASE("c = 0 inventory size is p^n - q^n with no failures") {
  for (auto [p, q] : {std::pair{5, 2}, std::pair{3, 2}}) {
    const Params P(p, q, {0, 0});
    const cplx seed = repelling_fixed_point(P);
    for (int n = 1; n <= 5; ++n) {
      const OrbitInventory inv = periodic_points(P, n, seed);
      CAPTURE(p);
      CAPTURE(n);
      CHECK(inv.found_count == oracle::c0_cycle_count(p, q, n));
      CHECK(inv.found_count + inv.duplicates_merged + inv.failures.size() == inv.expected_count);
      CHECK(inv.failures.empty());
      const double expected_mult = std::pow(static_cast<double>(p) / q, n);
      for (const auto& po : inv.orbits) {
        CHECK(po.orbit.residual <= 1e-9);
        CHECK(std::abs(po.orbit.points.front() - po.orbit.points.back()) <= 1e-9);
        CHECK(po.multiplier_modulus == doctest::Approx(expected_mult).epsilon(1e-9));
        for (cplx z : po.orbit.points) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-9);
      }
    }
  }
}

TEST_CASE("perturbed inventory keeps the same count and stays repelling") {
  const Params P(5, 2, {0.05, 0});
  const cplx seed = repelling_fixed_point(P);
  for (int n = 1; n <= 5; ++n) {
    const OrbitInventory inv = periodic_points(P, n, seed);
    CHECK(inv.found_count == oracle::c0_cycle_count(5, 2, n));
    for (const auto& po : inv.orbits) CHECK(po.multiplier_modulus > 1.0);
  }
}

TEST_CASE("inventory has no duplicate orbits") {
  const Params P(3, 2, {0.1, 0.05});
  const OrbitInventory inv = periodic_points(P, 4, repelling_fixed_point(P));
  for (std::size_t i = 0; i < inv.orbits.size(); ++i) {
    for (std::size_t j = i + 1; j < inv.orbits.size(); ++j) {
      double d = 0.0;
      for (std::size_t k = 0; k + 1 < inv.orbits[i].orbit.points.size(); ++k) {
        d = std::max(d, std::abs(inv.orbits[i].orbit.points[k] - inv.orbits[j].orbit.points[k]));
      }
      CHECK(d > 1e-8);
    }
  }
}

TEST_CASE("serial and parallel searches agree bit for bit") {
  const Params P(5, 2, {0.05, 0.01});
  const cplx seed = repelling_fixed_point(P);
  const OrbitInventory a = periodic_points(P, 5, seed, {}, Exec::serial);
  const OrbitInventory b = periodic_points(P, 5, seed, {}, Exec::parallel);
  REQUIRE(a.orbits.size() == b.orbits.size());
  CHECK(a.duplicates_merged == b.duplicates_merged);
  for (std::size_t i = 0; i < a.orbits.size(); ++i) {
    CHECK(a.orbits[i].word == b.orbits[i].word);
    CHECK(a.orbits[i].orbit.points == b.orbits[i].orbit.points);
    CHECK(a.orbits[i].multiplier_modulus == b.orbits[i].multiplier_modulus);
  }
}

TEST_CASE("label rotation does not change the set of cycles") {
  const Params P(5, 2, {0.05, 0});
  const cplx seed = repelling_fixed_point(P);
  OrbitSearchConfig rotated;
  rotated.labeling.cut_rotation = 0.7;
  const OrbitInventory a = periodic_points(P, 4, seed);
  const OrbitInventory b = periodic_points(P, 4, seed, rotated);
  REQUIRE(a.found_count == b.found_count);
  auto mults = [](const OrbitInventory& inv) {
    std::vector<double> m;
    for (const auto& po : inv.orbits) m.push_back(po.multiplier_modulus);
    std::sort(m.begin(), m.end());
    return m;
  };
  const auto ma = mults(a);
  const auto mb = mults(b);
  for (std::size_t i = 0; i < ma.size(); ++i) CHECK(ma[i] == doctest::Approx(mb[i]).epsilon(1e-9));
}

TEST_CASE("search refuses words beyond the cap") {
  const Params P(5, 2, {0, 0});
  OrbitSearchConfig cfg;
  cfg.word_cap = 1000;
  CHECK_THROWS_AS(periodic_points(P, 5, {1, 0}, cfg), Error);
  CHECK_THROWS_AS(periodic_points(P, 0, {1, 0}), Error);
}

}  // TEST_SUITE
