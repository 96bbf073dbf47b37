// kerrshadow embedded Runge-Kutta 5(4) pair of Dormand and Prince

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace kerr {

template <std::size_t N>
using State = std::array<double, N>;

// One Dormand-Prince step. rhs(x, y, dydx) returns false if y lies outside its domain.
// k1 holds dy/dx at (x, y) on entry; on success k_next holds dy/dx at (x + h, y_next) (FSAL).
template <std::size_t N, class Rhs>
bool dormand_prince_step(Rhs &&rhs, double x, const State<N> &y, const State<N> &k1, double h,
                         State<N> &y_next, State<N> &k_next, State<N> &error)
{
  constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
  constexpr double a21 = 1.0 / 5.0;
  constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                   a54 = -212.0 / 729.0;
  constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                   a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                   b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                   e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

  State<N> k2, k3, k4, k5, k6, tmp;
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * a21 * k1[i];
  if (!rhs(x + c2 * h, tmp, k2))
    return false;
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  if (!rhs(x + c3 * h, tmp, k3))
    return false;
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  if (!rhs(x + c4 * h, tmp, k4))
    return false;
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  if (!rhs(x + c5 * h, tmp, k5))
    return false;
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  if (!rhs(x + h, tmp, k6))
    return false;
  for (std::size_t i = 0; i < N; ++i)
    y_next[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  if (!rhs(x + h, y_next, k_next))
    return false;
  for (std::size_t i = 0; i < N; ++i)
    error[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i]
                    + e7 * k_next[i]);
  return true;
}

// Max-norm of the scaled local error: max_i |err_i| / (atol + rtol max(|y_i|, |y_next_i|))
template <std::size_t N>
double error_norm(const State<N> &y, const State<N> &y_next, const State<N> &error, double rtol,
                  double atol)
{
  double norm = 0.0;
  for (std::size_t i = 0; i < N; ++i)
  {
    const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y_next[i]));
    norm = std::max(norm, std::abs(error[i]) / scale);
  }
  return std::isfinite(norm) ? norm : HUGE_VAL;
}

// Step-size factor for the next attempt given the current error norm
inline double step_factor(double norm)
{
  constexpr double safety = 0.9;
  constexpr double min_factor = 0.2;
  constexpr double max_factor = 5.0;
  if (norm == 0.0)
    return max_factor;
  return std::clamp(safety * std::pow(norm, -0.2), min_factor, max_factor);
}

// Adaptive integration of rhs from x0 to x1. Returns false on step failure.
template <std::size_t N, class Rhs>
bool integrate_to(Rhs &&rhs, double x0, double x1, State<N> &y, double rtol, double atol,
                  double h_initial = 1.0e-3)
{
  const double span = x1 - x0;
  if (span == 0.0)
    return true;
  const double dir = span > 0.0 ? 1.0 : -1.0;
  double h = dir * std::min(std::abs(h_initial), std::abs(span));
  double x = x0;
  State<N> k1, y_next, k_next, err;
  if (!rhs(x, y, k1))
    return false;
  for (int n = 0; n < 10000000; ++n)
  {
    if (dir * (x + h - x1) > 0.0)
      h = x1 - x;
    bool ok = dormand_prince_step<N>(rhs, x, y, k1, h, y_next, k_next, err);
    const double norm = ok ? error_norm<N>(y, y_next, err, rtol, atol) : HUGE_VAL;
    if (norm <= 1.0)
    {
      x += h;
      y = y_next;
      k1 = k_next;
      if (dir * (x - x1) >= 0.0)
        return true;
      h *= step_factor(norm);
    }
    else
    {
      h *= ok ? step_factor(norm) : 0.25;
      if (std::abs(h) < 1.0e-14 * std::max(1.0, std::abs(x)))
        return false;
    }
  }
  return false;
}

}  // namespace kerr
