// kerrshadow bifurcation diagram of null geodesics in the (lambda, eta) plane

// C++ headers
#include <algorithm>  // max, min
#include <cmath>      // abs, acos, cos, cosh, sin, sinh, sqrt
#include <iomanip>    // setprecision
#include <numbers>    // pi
#include <ostream>    // ostream
#include <string>     // to_string

// kerrshadow headers
#include "kerr/bifurcation.hpp"
#include "kerr/errors.hpp"
#include "kerr/geodesic.hpp"
#include "roots.hpp"

namespace kerr {

namespace {

constexpr double kRangeSlack = 1.0e-12;
constexpr double kCriticalTolerance = 1.0e-10;

void require_positive_spin(const KerrParams &params, const char *what)
{
  if (!(params.a() > 0.0))
    throw InvalidSpin(std::string(what)
                      + " requires a > 0: the spherical-orbit parametrisation divides by a");
}

}  // namespace

//--------------------------------------------------------------------------------------------------

std::string_view to_string(CriticalBranch branch) noexcept
{
  switch (branch)
  {
    case CriticalBranch::SigmaR:
      return "sigma_r";
    case CriticalBranch::SigmaTheta0:
      return "sigma_theta_0";
    case CriticalBranch::SigmaThetaPlus:
      return "sigma_theta_plus";
    case CriticalBranch::SigmaThetaMinus:
      return "sigma_theta_minus";
  }
  return "unknown";
}

std::string_view to_string(TrajectoryKind kind) noexcept
{
  switch (kind)
  {
    case TrajectoryKind::HorizonInfinity:
      return "horizon/infinity";
    case TrajectoryKind::HorizonHorizon:
      return "horizon/horizon";
    case TrajectoryKind::InfinityInfinity:
      return "infinity/infinity";
    case TrajectoryKind::SphericalCritical:
      return "spherical/critical";
    case TrajectoryKind::Forbidden:
      return "forbidden";
  }
  return "unknown";
}

//--------------------------------------------------------------------------------------------------

PhotonRingRadii photon_ring_radii(const KerrParams &params)
{
  const double a = params.a();
  // the trigonometric form is off by an ulp at the ends
  if (a == 0.0)
    return {3.0, 3.0};
  if (a == 1.0)
    return {1.0, 4.0};
  return {2.0 + 2.0 * std::cos(2.0 / 3.0 * std::acos(-a)),
          2.0 + 2.0 * std::cos(2.0 / 3.0 * std::acos(a))};
}

double sigma_r_lambda(double r_c, double a) noexcept
{
  return ((1.0 + r_c) * a * a + r_c * r_c * (r_c - 3.0)) / (a * (1.0 - r_c));
}

double sigma_r_eta(double r_c, double a) noexcept
{
  const double d = r_c - 3.0;
  const double m = r_c - 1.0;
  return r_c * r_c * r_c * (4.0 * a * a - r_c * d * d) / (a * a * m * m);
}

CriticalCurvePoint sigma_r(double r_c, const KerrParams &params)
{
  require_positive_spin(params, "sigma_r");
  const PhotonRingRadii rr = photon_ring_radii(params);
  if (r_c < rr.r1 - kRangeSlack || r_c > rr.r2 + kRangeSlack)
    throw DomainError("r_c = " + std::to_string(r_c) + " outside [r1, r2] = ["
                      + std::to_string(rr.r1) + ", " + std::to_string(rr.r2) + "]");
  const double a = params.a();
  return {r_c, sigma_r_lambda(r_c, a), sigma_r_eta(r_c, a), CriticalBranch::SigmaR};
}

CriticalCurvePoint sigma_theta(double theta_c, int sign, const KerrParams &params)
{
  if (!(theta_c >= 0.0 && theta_c <= std::numbers::pi))
    throw DomainError("theta_c = " + std::to_string(theta_c) + " outside [0, pi]");
  const double a = params.a();
  const double s = std::sin(theta_c);
  const double c = std::cos(theta_c);
  const double sgn = sign < 0 ? -1.0 : 1.0;
  return {theta_c, sgn * a * s * s, -a * a * c * c * c * c,
          sign < 0 ? CriticalBranch::SigmaThetaMinus : CriticalBranch::SigmaThetaPlus};
}

CriticalCurvePoint sigma_theta0(double lambda) noexcept
{
  return {0.5 * std::numbers::pi, lambda, 0.0, CriticalBranch::SigmaTheta0};
}

ImpactPair spurious_critical_branch(double r_c, const KerrParams &params)
{
  require_positive_spin(params, "spurious_critical_branch");
  const double a = params.a();
  const double a2 = a * a;
  return {(a2 + r_c * r_c) / a, -(r_c * r_c * r_c * r_c) / a2};
}

//--------------------------------------------------------------------------------------------------

// With c = cos^2(theta), Theta = eta + a^2 c - lambda^2 c / (1 - c). For eta < 0 the maximum over
// c is attained at 1 - c = |lambda| / a and equals eta + (a - |lambda|)^2.
bool polar_feasible(double lambda, double eta, const KerrParams &params) noexcept
{
  if (eta >= 0.0)
    return true;
  const double a = params.a();
  const double l = std::abs(lambda);
  if (!(l < a))
    return false;
  return eta + (a - l) * (a - l) >= 0.0;
}

bool critical_radius_for_lambda(double lambda, const KerrParams &params, double &r_c)
{
  if (!(params.a() > 0.0))
    return false;
  const double a = params.a();
  const PhotonRingRadii rr = photon_ring_radii(params);
  // lambda(r_c) is 0/0 at r_c = 1 for the extremal hole
  const double lo = std::max(rr.r1, 1.0 + 1.0e-9);
  const double hi = rr.r2;
  auto f = [&](double r) { return sigma_r_lambda(r, a) - lambda; };
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0)
  {
    r_c = lo;
    return true;
  }
  if ((f_lo < 0.0) == (f_hi < 0.0) && f_hi != 0.0)
    return false;
  r_c = detail::bisect(f, lo, hi);
  return true;
}

TrajectoryClass classify(double lambda, double eta, double r_start, const KerrParams &params)
{
  if (!(r_start > params.horizon()))
    throw DomainError("classify requires r_start > r+, got " + std::to_string(r_start));
  TrajectoryClass out{TrajectoryKind::Forbidden, eta < 0.0};
  if (!polar_feasible(lambda, eta, params))
    return out;

  const double a = params.a();
  if (a > 0.0)
  {
    double r_c = 0.0;
    if (critical_radius_for_lambda(lambda, params, r_c)
        && std::abs(eta - sigma_r_eta(r_c, a)) < kCriticalTolerance)
    {
      out.kind = TrajectoryKind::SphericalCritical;
      return out;
    }
  }
  else if (std::abs(eta + lambda * lambda - 27.0) < kCriticalTolerance)
  {
    out.kind = TrajectoryKind::SphericalCritical;
    return out;
  }

  if (radial_potential(r_start, lambda, eta, params) < 0.0)
    return out;

  const TurningPoints tp = turning_points(lambda, eta, params);
  std::size_t below = 0;
  for (const TurningPoint &p : tp.radial)
    if (p.value < r_start)
      ++below;
  const std::size_t above = tp.radial.size() - below;
  if (tp.radial.empty())
    out.kind = TrajectoryKind::HorizonInfinity;
  else if (below == 0)
    out.kind = TrajectoryKind::HorizonHorizon;
  else if (above == 0)
    out.kind = TrajectoryKind::InfinityInfinity;
  else
    out.kind = TrajectoryKind::Forbidden;
  return out;
}

//--------------------------------------------------------------------------------------------------

double separatrix_Z(double r_c, const KerrParams &params)
{
  const double a = params.a();
  const PhotonRingRadii rr = photon_ring_radii(params);
  if (r_c < rr.r1 - kRangeSlack || r_c > rr.r2 + kRangeSlack)
    throw DomainError("separatrix radius r_c = " + std::to_string(r_c) + " outside [r1, r2]");
  const double m = r_c - 1.0;
  const double z2 = 4.0 * r_c * (m * m * m + 1.0 - a * a) / (m * m);
  if (!(z2 > 0.0) || !std::isfinite(z2))
    throw DomainError("separatrix constant Z^2 = " + std::to_string(z2) + " not positive");
  return std::sqrt(z2);
}

// With w = 1 / (r - r_c) the separatrix equation becomes w'' = Z^2 w + 2 r_c, which is linear.
double separatrix_r(double sigma, double r0, double r_c, const KerrParams &params)
{
  const double z = separatrix_Z(r_c, params);
  const double s0 = r0 - r_c;
  if (s0 == 0.0)
    return r_c;
  const double q0 = z * z + 4.0 * r_c * s0 + s0 * s0;
  if (!(q0 >= 0.0))
    throw DomainError("r0 = " + std::to_string(r0) + " lies outside the separatrix's range");
  const double zs = z * sigma;
  const double denom = (z * z + 2.0 * r_c * s0) * std::cosh(zs) + z * std::sqrt(q0) * std::sinh(zs)
                       - 2.0 * r_c * s0;
  return r_c + z * z * s0 / denom;
}

//--------------------------------------------------------------------------------------------------

double FeasibilityRaster::lambda_at(std::size_t i) const noexcept
{
  if (grid.n_lambda < 2)
    return grid.lambda_min;
  return grid.lambda_min
         + (grid.lambda_max - grid.lambda_min) * static_cast<double>(i)
               / static_cast<double>(grid.n_lambda - 1);
}

double FeasibilityRaster::eta_at(std::size_t j) const noexcept
{
  if (grid.n_eta < 2)
    return grid.eta_min;
  return grid.eta_min
         + (grid.eta_max - grid.eta_min) * static_cast<double>(j)
               / static_cast<double>(grid.n_eta - 1);
}

// R(r) grows like r^4, so R >= 0 holds somewhere outside the horizon for every (lambda, eta);
// the region of possible motion is empty exactly when Theta < 0 throughout (0, pi).
FeasibilityRaster diagram_scan(const KerrParams &params, const ScanGrid &grid)
{
  FeasibilityRaster out;
  out.grid = grid;
  out.feasible.assign(grid.n_lambda * grid.n_eta, 0);
  for (std::size_t j = 0; j < grid.n_eta; ++j)
    for (std::size_t i = 0; i < grid.n_lambda; ++i)
      out.feasible[j * grid.n_lambda + i] = polar_feasible(out.lambda_at(i), out.eta_at(j), params);
  return out;
}

std::vector<CriticalCurvePoint> sample_sigma_r(const KerrParams &params, std::size_t count)
{
  require_positive_spin(params, "sigma_r sampling");
  const PhotonRingRadii rr = photon_ring_radii(params);
  std::vector<CriticalCurvePoint> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
  {
    const double f = count > 1 ? static_cast<double>(k) / static_cast<double>(count - 1) : 0.0;
    double r_c = rr.r1 + (rr.r2 - rr.r1) * f;
    if (k + 1 == count)
      r_c = rr.r2;
    out.push_back(sigma_r(r_c, params));
  }
  return out;
}

std::vector<CriticalCurvePoint> sample_sigma_theta(const KerrParams &params, int sign,
                                                   std::size_t count)
{
  std::vector<CriticalCurvePoint> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
  {
    const double f = count > 1 ? static_cast<double>(k) / static_cast<double>(count - 1) : 0.0;
    out.push_back(sigma_theta(0.5 * std::numbers::pi * f, sign, params));
  }
  return out;
}

std::vector<CriticalCurvePoint> sample_sigma_theta0(double lambda_min, double lambda_max,
                                                    std::size_t count)
{
  std::vector<CriticalCurvePoint> out;
  for (std::size_t k = 0; k < count; ++k)
  {
    const double f = count > 1 ? static_cast<double>(k) / static_cast<double>(count - 1) : 0.0;
    out.push_back(sigma_theta0(lambda_min + (lambda_max - lambda_min) * f));
  }
  return out;
}

void write_curve_csv(std::ostream &out, const std::vector<CriticalCurvePoint> &points)
{
  out << "r_c,lambda,eta,branch\n" << std::setprecision(17);
  for (const CriticalCurvePoint &p : points)
    out << p.coordinate << ',' << p.lambda << ',' << p.eta << ',' << to_string(p.branch) << '\n';
}

void write_raster_csv(std::ostream &out, const FeasibilityRaster &raster)
{
  out << "lambda,eta,feasible\n" << std::setprecision(17);
  for (std::size_t j = 0; j < raster.grid.n_eta; ++j)
    for (std::size_t i = 0; i < raster.grid.n_lambda; ++i)
      out << raster.lambda_at(i) << ',' << raster.eta_at(j) << ',' << (raster.at(i, j) ? 1 : 0)
          << '\n';
}

}  // namespace kerr
