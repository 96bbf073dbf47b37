// kerrshadow Kerr metric in Boyer-Lindquist coordinates
//
// Geometric units throughout: lengths in GM/c^2, times in GM/c^3.

#pragma once

#include <array>

namespace kerr {

// Guard keeping sin(theta) away from zero wherever it appears in a denominator
inline constexpr double kPoleGuard = 1.0e-9;

// Black hole spin; construction rejects a outside [0, 1]
class KerrParams
{
 public:
  explicit KerrParams(double spin);

  double a() const noexcept { return a_; }
  double horizon() const noexcept { return r_plus_; }

 private:
  double a_;
  double r_plus_;
};

struct MetricScalars
{
  double rho2;   // r^2 + a^2 cos^2(theta)
  double delta;  // r^2 - 2r + a^2
  double A;      // (r^2 + a^2)^2 - a^2 Delta sin^2(theta)
  double omega;  // frame dragging angular velocity 2ra/A
};

struct BLPoint
{
  double t = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

struct Cartesian
{
  double x;
  double y;
  double z;
};

// Components indexed in (t, r, theta, phi) order
using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

double horizon_radius(double a);
double horizon_radius(const KerrParams &params);

double delta(double r, double a) noexcept;

MetricScalars metric_scalars(double r, double theta, const KerrParams &params);

Cartesian to_cartesian(const BLPoint &point, const KerrParams &params) noexcept;

// sin(theta) with the pole guard applied, sign preserved
double guarded_sin(double theta) noexcept;

// Covariant metric g_{ij} and its inverse g^{ij}; both require r > r_+
Mat4 covariant_metric(double r, double theta, const KerrParams &params);
Mat4 contravariant_metric(double r, double theta, const KerrParams &params);

// g(u, v) with the covariant metric at (r, theta)
double metric_dot(const Mat4 &g, const Vec4 &u, const Vec4 &v) noexcept;
Vec4 lower_index(const Mat4 &g, const Vec4 &v) noexcept;

}  // namespace kerr
