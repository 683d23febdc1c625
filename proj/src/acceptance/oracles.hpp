#pragma once

#include <cstdint>
#include <functional>

#include "holocorr/types.hpp"

namespace holocorr::oracle {

/// t_0 with (p/q)^{-t_0} p = 1.
double closed_form_t0(int p, int q);

/// Pressure at c = 0, where every branch derivative has modulus p/q.
double c0_pressure(int p, int q, double t);

/// Number of period-n cycle points at c = 0 from the angle recursion
/// p a_i = q a_{i+1} mod 1: the circulant system has determinant p^n - q^n.
std::uint64_t c0_cycle_count(int p, int q, int n);

using Derivative = std::function<cplx(const Params&, cplx z0, cplx z1)>;

struct FdOrder {
  double error_coarse = 0.0;
  double error_fine = 0.0;
  double order = 0.0;
};

/// Central differences of the forward branch through (z0, z1), evaluated in
/// quad precision at steps h and h / 10, compared against `derivative`.
FdOrder finite_difference_order(const Params& params, cplx z0, cplx z1, cplx derivative, double h);

PointCloud circle_cloud(std::size_t n);
PointCloud filled_square_cloud(std::size_t n, std::uint64_t seed);
/// Product of two middle-thirds Cantor sets, all 4^level corner points.
PointCloud cantor_dust_cloud(int level);

}  // namespace holocorr::oracle
