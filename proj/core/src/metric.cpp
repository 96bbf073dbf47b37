// kerrshadow Kerr metric in Boyer-Lindquist coordinates

// C++ headers
#include <cmath>   // abs, copysign, cos, isfinite, sin, sqrt
#include <string>  // to_string

// kerrshadow headers
#include "kerr/errors.hpp"
#include "kerr/metric.hpp"

namespace kerr {

//--------------------------------------------------------------------------------------------------

KerrParams::KerrParams(double spin) : a_(spin), r_plus_(horizon_radius(spin)) {}

//--------------------------------------------------------------------------------------------------

double horizon_radius(double a)
{
  if (!std::isfinite(a) || a < 0.0 || a > 1.0)
    throw InvalidSpin("spin a = " + std::to_string(a) + " outside [0, 1]: no event horizon");
  return 1.0 + std::sqrt(1.0 - a * a);
}

double horizon_radius(const KerrParams &params)
{
  return params.horizon();
}

double delta(double r, double a) noexcept
{
  return r * r - 2.0 * r + a * a;
}

double guarded_sin(double theta) noexcept
{
  double s = std::sin(theta);
  if (std::abs(s) < kPoleGuard)
    return std::copysign(kPoleGuard, s);
  return s;
}

//--------------------------------------------------------------------------------------------------

MetricScalars metric_scalars(double r, double theta, const KerrParams &params)
{
  if (!(r > params.horizon()))
    throw DomainError("metric evaluated at r = " + std::to_string(r)
                      + " on or inside the horizon r+ = " + std::to_string(params.horizon()));
  const double a = params.a();
  const double a2 = a * a;
  const double cth = std::cos(theta);
  const double sth = std::sin(theta);
  const double r2a2 = r * r + a2;
  MetricScalars m{};
  m.rho2 = r * r + a2 * cth * cth;
  m.delta = delta(r, a);
  m.A = r2a2 * r2a2 - a2 * m.delta * sth * sth;
  m.omega = 2.0 * r * a / m.A;
  return m;
}

Cartesian to_cartesian(const BLPoint &point, const KerrParams &params) noexcept
{
  const double a = params.a();
  const double rho = std::sqrt(point.r * point.r + a * a);
  const double sth = std::sin(point.theta);
  return {rho * sth * std::cos(point.phi), rho * sth * std::sin(point.phi),
          point.r * std::cos(point.theta)};
}

//--------------------------------------------------------------------------------------------------

// Line element: -(1 - 2r/rho^2) dt^2 - (4ar sin^2/rho^2) dt dphi + (A sin^2/rho^2) dphi^2
//               + (rho^2/Delta) dr^2 + rho^2 dtheta^2
Mat4 covariant_metric(double r, double theta, const KerrParams &params)
{
  const MetricScalars m = metric_scalars(r, theta, params);
  const double a = params.a();
  const double s = std::sin(theta);
  const double s2 = s * s;
  Mat4 g{};
  g[0][0] = -(1.0 - 2.0 * r / m.rho2);
  g[0][3] = g[3][0] = -2.0 * a * r * s2 / m.rho2;
  g[3][3] = m.A * s2 / m.rho2;
  g[1][1] = m.rho2 / m.delta;
  g[2][2] = m.rho2;
  return g;
}

Mat4 contravariant_metric(double r, double theta, const KerrParams &params)
{
  const MetricScalars m = metric_scalars(r, theta, params);
  const double a = params.a();
  const double s = guarded_sin(theta);
  const double s2 = s * s;
  Mat4 g{};
  g[0][0] = -m.A / (m.rho2 * m.delta);
  g[0][3] = g[3][0] = -2.0 * a * r / (m.rho2 * m.delta);
  g[3][3] = (m.delta - a * a * s2) / (m.rho2 * m.delta * s2);
  g[1][1] = m.delta / m.rho2;
  g[2][2] = 1.0 / m.rho2;
  return g;
}

double metric_dot(const Mat4 &g, const Vec4 &u, const Vec4 &v) noexcept
{
  double sum = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      sum += g[i][j] * u[i] * v[j];
  return sum;
}

Vec4 lower_index(const Mat4 &g, const Vec4 &v) noexcept
{
  Vec4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out[i] += g[i][j] * v[j];
  return out;
}

}  // namespace kerr
