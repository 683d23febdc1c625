#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "holocorr/julia.hpp"
#include "holocorr/parallel.hpp"
#include "holocorr/thermo.hpp"
#include "oracles.hpp"

using namespace holocorr;

TEST_SUITE("thermo") {

TEST_CASE("periodic-orbit pressure at c = 0 matches the counting oracle") {
  for (auto [p, q] : {std::pair{5, 2}, std::pair{3, 2}}) {
    const Params P(p, q, {0, 0});
    for (int n = 2; n <= 5; ++n) {
      const OrbitInventory inv = periodic_points(P, n, {1, 0});
      for (double t : {0.0, 0.7, 1.9}) {
        const double want = std::log(static_cast<double>(oracle::c0_cycle_count(p, q, n))) / n -
                            t * std::log(static_cast<double>(p) / q);
        CHECK(pressure_po(P, t, inv).pressure == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("transfer pressure at c = 0 is exact for every depth") {
  for (auto [p, q] : {std::pair{5, 2}, std::pair{3, 2}}) {
    const Params P(p, q, {0, 0});
    for (int m = 1; m <= 6; ++m) {
      const TransferOperator op(P, m, {1, 0});
      for (double t : {0.0, 0.5, 1.0, 2.0}) {
        CHECK(std::log(op.leading_eigenvalue(t)) ==
              doctest::Approx(oracle::c0_pressure(p, q, t)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("transfer pressure at t = 0 is log p away from c = 0") {
  const Params P(5, 2, {0.05, 0.02});
  const TransferOperator op(P, 6, repelling_fixed_point(P));
  CHECK(std::log(op.leading_eigenvalue(0.0)) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
}

TEST_CASE("transfer operator: representatives and Birkhoff sums") {
  const Params P(5, 2, {0.05, 0});
  const cplx seed = repelling_fixed_point(P);
  const TransferOperator op(P, 4, seed);
  REQUIRE(op.state_count() == 625);
  for (std::uint64_t u : {0ULL, 17ULL, 333ULL, 624ULL}) {
    const Word w = word_from_index(u, 5, 4);
    const BackwardImage b = backward_map(P, w, seed);
    CHECK(std::abs(op.representatives()[u] - b.point) <= 1e-14);
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
      s += potential(P, b.trail[static_cast<std::size_t>(i)], b.trail[static_cast<std::size_t>(i) + 1]);
    }
    CHECK(op.birkhoff_sums()[u] == doctest::Approx(s).epsilon(1e-13));
  }
}

TEST_CASE("serial and parallel operator application agree bit for bit") {
  const Params P(5, 2, {0.05, 0.01});
  const TransferOperator op(P, 6, repelling_fixed_point(P));
  const auto w = op.weights(1.3);
  std::vector<double> h(op.state_count());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = 1.0 + 0.001 * static_cast<double>(i % 97);
  std::vector<double> a(h.size()), b(h.size());
  op.apply(w, h, a, Exec::serial);
  op.apply(w, h, b, Exec::parallel);
  CHECK(a == b);
  op.apply_left(w, h, a, Exec::serial);
  op.apply_left(w, h, b, Exec::parallel);
  CHECK(a == b);
  const auto sa = op.spectrum(1.3, {}, Exec::serial);
  const auto sb = op.spectrum(1.3, {}, Exec::parallel);
  CHECK(sa.leading_eigenvalue == sb.leading_eigenvalue);
  CHECK(sa.eigenvector == sb.eigenvector);
}

TEST_CASE("spectrum normalisation and positivity") {
  const Params P(5, 2, {0.05, 0});
  const TransferOperator op(P, 6, repelling_fixed_point(P));
  const TransferSpectrum s = op.spectrum(1.75);
  double nu = 0.0, pair = 0.0;
  for (std::size_t i = 0; i < s.eigenvector.size(); ++i) {
    CHECK(s.eigenvector[i] > 0.0);
    CHECK(s.left_eigenvector[i] > 0.0);
    nu += s.left_eigenvector[i];
    pair += s.eigenvector[i] * s.left_eigenvector[i];
  }
  CHECK(nu == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pair == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.residual <= 1e-10);
  CHECK(s.leading_eigenvalue == op.leading_eigenvalue(1.75));
}

TEST_CASE("pressure is strictly decreasing in t") {
  const Params P(5, 2, {0.05, 0});
  const TransferOperator op(P, 5, repelling_fixed_point(P));
  double prev = std::log(op.leading_eigenvalue(0.0));
  for (int i = 1; i <= 40; ++i) {
    const double cur = std::log(op.leading_eigenvalue(0.1 * i));
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("Gibbs ratios are constant at c = 0 and bounded nearby") {
  const Params P0(5, 2, {0, 0});
  const TransferOperator op0(P0, 5, {1, 0});
  const OrbitInventory inv0 = periodic_points(P0, 5, {1, 0});
  const GibbsDiagnostic g0 = gibbs_diagnostic(P0, op0.spectrum(1.2), &inv0, 1.2);
  CHECK(g0.cylinders.spread == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g0.periodic.spread == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g0.periodic.count == inv0.orbits.size());

  const Params P(5, 2, {0.05, 0});
  const cplx seed = repelling_fixed_point(P);
  const TransferOperator op(P, 5, seed);
  const GibbsDiagnostic g = gibbs_diagnostic(P, op.spectrum(1.7), nullptr, 1.7);
  CHECK(g.cylinders.spread > 1.0);
  CHECK(g.cylinders.spread < 10.0);
  CHECK(g.periodic.count == 0);
}

TEST_CASE("closed-form helpers") {
  CHECK(closed_form_bound(5, 2, 2.5) == doctest::Approx(oracle::closed_form_t0(5, 2)).epsilon(1e-15));
  CHECK_THROWS_AS(closed_form_bound(5, 2, 1.0), Error);
  CHECK(zero_area_criterion(5, 2));
  CHECK_FALSE(zero_area_criterion(3, 2));
  CHECK_FALSE(zero_area_criterion(7, 3));
}

TEST_CASE("Aitken extrapolation") {
  std::vector<double> geo;
  for (int n = 0; n < 5; ++n) geo.push_back(2.0 - std::pow(0.4, n));
  const auto lim = aitken_extrapolate(geo);
  REQUIRE(lim.has_value());
  CHECK(*lim == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(aitken_extrapolate(std::vector<double>{1.0, 2.0, 1.5}).has_value());
  CHECK_FALSE(aitken_extrapolate(std::vector<double>{1.0, 2.0}).has_value());
}

TEST_CASE("bisection on a decreasing function") {
  const double r = bisect_decreasing([](double t) { return 1.3 - t; }, 0.0, 4.0, 1e-9);
  CHECK(std::abs(r - 1.3) <= 1e-9);
}

TEST_CASE("Bowen pipeline on small depths") {
  BowenConfig cfg;
  cfg.n_min = 3;
  cfg.n_max = 5;
  cfg.m = 6;
  cfg.cert_cloud = 5000;
  cfg.cert_samples = 1000;

  SUBCASE("(5,2,0) hits the closed form") {
    const BowenArtifacts art = run_bowen(Params(5, 2, {0, 0}), cfg);
    const BowenResult& r = art.result;
    CHECK(std::abs(r.t_c - oracle::closed_form_t0(5, 2)) <= 1e-6);
    CHECK(r.per_depth_roots.size() == 3);
    CHECK(r.area_informative);
    CHECK(r.zero_area_regime);
    CHECK(r.kappa == doctest::Approx(2.5).epsilon(1e-9));
    // Periodic-orbit roots increase toward t_c from below.
    for (std::size_t i = 1; i < r.per_depth_roots.size(); ++i) {
      CHECK(r.per_depth_roots[i].t_c > r.per_depth_roots[i - 1].t_c);
      CHECK(r.per_depth_roots[i].t_c < r.t_c);
    }
  }
  SUBCASE("(3,2,0) carries the non-informative note") {
    const BowenResult r = bowen_parameter(Params(3, 2, {0, 0}), cfg);
    CHECK(std::abs(r.t_c - oracle::closed_form_t0(3, 2)) <= 1e-6);
    CHECK_FALSE(r.area_informative);
    CHECK(r.note.find("non-informative for area") != std::string::npos);
  }
  SUBCASE("root brackets the sign change") {
    const Params P(5, 2, {0.05, 0});
    const BowenArtifacts art = run_bowen(P, cfg);
    const double d = 10 * cfg.tol;
    CHECK(std::log(art.transfer->leading_eigenvalue(art.result.t_c - d)) > 0.0);
    CHECK(std::log(art.transfer->leading_eigenvalue(art.result.t_c + d)) < 0.0);
    CHECK(art.result.t_c < 2.0);
    CHECK(art.result.t_c <= art.result.closed_form);
    CHECK(art.result.method_agreement < 5e-3);
  }
}

TEST_CASE("pressure curve samples both estimators") {
  BowenConfig cfg;
  cfg.n_min = 3;
  cfg.n_max = 4;
  cfg.m = 5;
  cfg.cert_cloud = 5000;
  cfg.cert_samples = 1000;
  const Params P(5, 2, {0, 0});
  const BowenArtifacts art = run_bowen(P, cfg);
  const auto curve = pressure_curve(P, art, 3.0, 16);
  CHECK(curve.size() == 16 * 3);
  CHECK(curve.front().t == 0.0);
  CHECK(curve.back().t == 3.0);
  CHECK(curve.back().method == PressureMethod::transfer_matrix);
  CHECK_THROWS_AS(pressure_curve(P, art, 3.0, 1), Error);
}

TEST_CASE("thread control") {
  const int before = worker_threads();
  set_worker_threads(2);
  CHECK(worker_threads() == 2);
  set_worker_threads(before);
  CHECK_THROWS_AS(set_worker_threads(0), Error);
}

}  // TEST_SUITE
