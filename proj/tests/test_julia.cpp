#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holocorr/julia.hpp"
#include "oracles.hpp"

using namespace holocorr;

namespace {

double diameter_bound(const PointCloud& cloud) {
  double r = 0.0;
  for (cplx z : cloud.points) r = std::max(r, std::abs(z));
  return 2.0 * r;
}

// Max over a of min over b of |a - b|, by brute force over angle-sorted b.
double directed_hausdorff_on_circle(const std::vector<cplx>& a, std::vector<cplx> b) {
  std::vector<double> ang;
  for (cplx z : b) ang.push_back(std::arg(z));
  std::sort(ang.begin(), ang.end());
  double worst = 0.0;
  for (cplx z : a) {
    const double t = std::arg(z);
    auto it = std::lower_bound(ang.begin(), ang.end(), t);
    double best = 1e300;
    for (auto cand : {it == ang.end() ? ang.front() : *it, it == ang.begin() ? ang.back() : *(it - 1)}) {
      best = std::min(best, std::abs(z - std::polar(1.0, cand)));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_SUITE("julia") {

TEST_CASE("repelling fixed point") {
  const cplx z0 = repelling_fixed_point(Params(5, 2, {0, 0}));
  CHECK(z0 == cplx{1.0, 0.0});

  for (cplx c : {cplx{0.05, 0}, cplx{0.3, 0.2}, cplx{-0.4, 0.1}}) {
    const Params P(5, 2, c);
    const cplx z = repelling_fixed_point(P);
    CHECK(std::abs(ipow(z - c, 2) - ipow(z, 5)) <= 1e-12);
    CHECK(std::abs(5.0 * (z - c) / (2.0 * z)) > 1.0);
  }
  const cplx z05 = repelling_fixed_point(Params(5, 2, {0.05, 0}));
  CHECK(std::abs(z05 - 1.0) < 0.1);
}

TEST_CASE("backward cloud at c = 0 lies on the circle") {
  const PointCloud cloud = julia_backward(Params(5, 2, {0, 0}), 10000, 50, 3);
  REQUIRE(cloud.points.size() == 10000);
  for (cplx z : cloud.points) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-9);
}

TEST_CASE("backward cloud is bounded by the escape radius") {
  const Params P(5, 2, {0.05, 0});
  const PointCloud cloud = julia_backward(P, 100000, 50, 3);
  CHECK(diameter_bound(cloud) <= 2.0 * escape_radius(P));
}

TEST_CASE("backward cloud is deterministic and thread independent") {
  const Params P(5, 2, {0.02, 0.02});
  const auto a = julia_backward(P, 5000, 20, 42, Exec::serial);
  const auto b = julia_backward(P, 5000, 20, 42, Exec::parallel);
  const auto c = julia_backward(P, 5000, 20, 42, Exec::parallel);
  const auto d = julia_backward(P, 5000, 20, 43, Exec::parallel);
  CHECK(a.points == b.points);
  CHECK(b.points == c.points);
  CHECK(a.points != d.points);
  CHECK_THROWS_AS(julia_backward(P, 0, 20, 1), Error);
  CHECK_THROWS_AS(julia_backward(P, 10, 0, 1), Error);
}

TEST_CASE("backward invariance: a forward step returns near the cloud") {
  const Params P(5, 2, {0.05, 0});
  const PointCloud cloud = julia_backward(P, 100000, 50, 9);
  const CloudIndex idx(cloud.points, 0.02);
  int ok = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const auto ws = images(P, cloud.points[i * 97]);
    ok += std::any_of(ws.begin(), ws.end(), [&](cplx w) { return idx.near(w, 0.02); }) ? 1 : 0;
  }
  CHECK(ok >= 990);
}

TEST_CASE("preimage tree") {
  const Params P(5, 2, {0.05, 0});
  const cplx seed = repelling_fixed_point(P);
  const PointCloud t1 = julia_tree(P, 1);
  CHECK(t1.points == preimages(P, seed));
  CHECK(julia_tree(P, 4).points.size() == 625);
  CHECK(julia_tree(P, 4, Exec::serial).points == julia_tree(P, 4, Exec::parallel).points);
  CHECK_THROWS_AS(julia_tree(P, 10), Error);

  const PointCloud t0 = julia_tree(Params(5, 2, {0, 0}), 6);
  for (cplx z : t0.points) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-9);
}

TEST_CASE("tree and random clouds agree at c = 0") {
  const Params P(3, 2, {0, 0});
  const PointCloud tree = julia_tree(P, 10);
  const PointCloud rnd = julia_backward(P, 100000, 50, 5);
  const double gap = 2.0 * std::numbers::pi / static_cast<double>(tree.points.size());
  const double h = std::max(directed_hausdorff_on_circle(tree.points, rnd.points),
                            directed_hausdorff_on_circle(rnd.points, tree.points));
  CHECK(h <= 10.0 * gap);
}

TEST_CASE("box counting self-tests") {
  const auto circle = box_counting(oracle::circle_cloud(200000), 4, 10);
  CHECK(circle.dimension == doctest::Approx(1.0).epsilon(0.05));
  CHECK(circle.r_squared >= kMinBoxFitRSquared);
  CHECK(circle.scales.size() == 7);
  const auto square = box_counting(oracle::filled_square_cloud(300000, 1), 2, 7);
  CHECK(square.dimension == doctest::Approx(2.0).epsilon(0.05 / 2));
  const auto dust = box_counting(oracle::cantor_dust_cloud(9), 5, 11);
  CHECK(std::abs(dust.dimension - std::log(4.0) / std::log(3.0)) <= 0.07);
}

TEST_CASE("box counting preconditions") {
  CHECK_THROWS_AS(box_counting(oracle::circle_cloud(100), 2, 8), Error);
  CHECK_THROWS_AS(box_counting(oracle::circle_cloud(20000), 2, 5), Error);
  PointCloud flat;
  flat.points.assign(20000, cplx{1, 1});
  CHECK_THROWS_AS(box_counting(flat, 2, 8), Error);
}

TEST_CASE("serial and parallel box counts agree") {
  const PointCloud cloud = julia_backward(Params(5, 2, {0.05, 0}), 50000, 50, 2);
  const BoundingSquare bs = bounding_square(cloud.points);
  for (int k : {0, 3, 8, 12}) {
    CHECK(count_boxes(cloud.points, bs, k, Exec::serial) == count_boxes(cloud.points, bs, k, Exec::parallel));
  }
  CHECK(count_boxes(cloud.points, bs, 0) == 1);
}

TEST_CASE("classifier verdicts") {
  SUBCASE("far parameter escapes at once, stable under doubling") {
    const Params P(5, 2, {10, 0});
    for (int d : {4, 8, 16}) CHECK(critical_orbit_classify(P, d).verdict == Verdict::all_escape);
  }
  SUBCASE("c = 2 escapes") {
    const Params P(5, 2, {2, 0});
    CHECK(critical_orbit_classify(P, 6).verdict == Verdict::all_escape);
    CHECK(critical_orbit_classify(P, 12).verdict == Verdict::all_escape);
  }
  SUBCASE("c = 0 is the degenerate fixed critical point") {
    const auto cls = critical_orbit_classify(Params(5, 2, {0, 0}), 8);
    CHECK(cls.verdict == Verdict::bounded_orbit_exists);
    REQUIRE(cls.periodic_witness.has_value());
    CHECK(cls.periodic_witness->length() == 1);
    CHECK(std::abs(cls.periodic_witness->points[0]) <= 1e-9);
    CHECK(critical_orbit_classify(Params(5, 2, {0, 0}), 16).verdict == Verdict::bounded_orbit_exists);
  }
  SUBCASE("period-two critical orbit is a simple centre") {
    // 0 -> c -> c - c^{5/2} = 0 needs c^{3/2} = -1 on some branch.
    const Params P(5, 2, std::polar(1.0, 2.0 * std::numbers::pi / 3.0));
    const auto cls = critical_orbit_classify(P, 10);
    CHECK(cls.verdict == Verdict::simple_centre);
    REQUIRE(cls.periodic_witness.has_value());
    const Orbit& w = *cls.periodic_witness;
    CHECK(w.length() == 2);
    CHECK(w.residual <= 1e-9);
    CHECK(std::abs(w.points.back() - w.points.front()) <= 1e-9);
  }
}

TEST_CASE("render of the c = 0 cloud is a ring") {
  const PointCloud cloud = julia_backward(Params(5, 2, {0, 0}), 100000, 50, 1);
  const int W = 200, H = 200;
  const GrayImage img = render(cloud, W, H);
  REQUIRE(img.pixels.size() == static_cast<std::size_t>(W * H));
  const RenderFrame f = render_frame(cloud);
  CHECK(f.x0 == doctest::Approx(-1.1).epsilon(1e-3));
  CHECK(f.y1 == doctest::Approx(1.1).epsilon(1e-3));
  const double px = (f.x1 - f.x0) / W;
  int lit = 0;
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      if (img.at(x, y) == 0) continue;
      ++lit;
      const double cx = f.x0 + (x + 0.5) * px;
      const double cy = f.y1 - (y + 0.5) * (f.y1 - f.y0) / H;
      CHECK(std::abs(std::hypot(cx, cy) - 1.0) <= 2.0 * px);
    }
  }
  CHECK(lit > 400);
  CHECK(img.at(W / 2, H / 2) == 0);
  CHECK(img.at(0, 0) == 0);
  CHECK(render(cloud, W, H).pixels == img.pixels);
  CHECK(*std::max_element(img.pixels.begin(), img.pixels.end()) == 255);
}

}  // TEST_SUITE
