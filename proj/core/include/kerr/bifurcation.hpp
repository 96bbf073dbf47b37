// kerrshadow bifurcation diagram of null geodesics in the (lambda, eta) plane

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "kerr/metric.hpp"

namespace kerr {

enum class CriticalBranch
{
  SigmaR,           // double root of R(r), spherical photon orbits
  SigmaTheta0,      // eta = 0, theta_c = pi/2
  SigmaThetaPlus,   // lambda = +a sin^2, eta = -a^2 cos^4
  SigmaThetaMinus,  // lambda = -a sin^2, eta = -a^2 cos^4
};

std::string_view to_string(CriticalBranch branch) noexcept;

struct CriticalCurvePoint
{
  double coordinate;  // r_c on SigmaR, theta_c on the polar branches
  double lambda;
  double eta;
  CriticalBranch branch;
};

enum class TrajectoryKind
{
  HorizonInfinity,
  HorizonHorizon,
  InfinityInfinity,
  SphericalCritical,
  Forbidden,
};

std::string_view to_string(TrajectoryKind kind) noexcept;

struct TrajectoryClass
{
  TrajectoryKind kind;
  bool vortical;  // eta < 0: the ray never crosses the equatorial plane
};

// Radii of the prograde (r1) and retrograde (r2) equatorial circular photon orbits
struct PhotonRingRadii
{
  double r1;
  double r2;
};

PhotonRingRadii photon_ring_radii(const KerrParams &params);

// Spherical-orbit integrals for r_c in [r1, r2]. Requires a > 0.
CriticalCurvePoint sigma_r(double r_c, const KerrParams &params);

// lambda(r_c) on SigmaR without the range check, used when extending the curve
double sigma_r_lambda(double r_c, double a) noexcept;
double sigma_r_eta(double r_c, double a) noexcept;

// sign = +1 or -1; theta_c in [0, pi] where the endpoints are the on-axis limit (0, -a^2)
CriticalCurvePoint sigma_theta(double theta_c, int sign, const KerrParams &params);
CriticalCurvePoint sigma_theta0(double lambda) noexcept;

// Second solution family of R = R' = 0, which has Theta < 0 everywhere
struct ImpactPair
{
  double lambda;
  double eta;
};
ImpactPair spurious_critical_branch(double r_c, const KerrParams &params);

// True iff Theta(theta) >= 0 somewhere in (0, pi)
bool polar_feasible(double lambda, double eta, const KerrParams &params) noexcept;

TrajectoryClass classify(double lambda, double eta, double r_start, const KerrParams &params);

// Solves lambda(r_c) = lambda on [r1, r2]; returns false when lambda is outside the curve's range
bool critical_radius_for_lambda(double lambda, const KerrParams &params, double &r_c);

// Separatrix of the spherical orbit r_c. Z^2 = 4 r_c ((r_c - 1)^3 + 1 - a^2) / (r_c - 1)^2 is the
// constant for which R(r) = (r - r_c)^2 (r^2 + 2 r_c r - 3 r_c^2 + Z^2) on the critical level.
double separatrix_Z(double r_c, const KerrParams &params);

// r(sigma) along the separatrix through r(0) = r0 that tends to r_c as sigma -> +inf
double separatrix_r(double sigma, double r0, double r_c, const KerrParams &params);

struct ScanGrid
{
  double lambda_min = -8.0;
  double lambda_max = 8.0;
  std::size_t n_lambda = 161;
  double eta_min = -2.0;
  double eta_max = 30.0;
  std::size_t n_eta = 161;
};

struct FeasibilityRaster
{
  ScanGrid grid;
  std::vector<std::uint8_t> feasible;  // row-major, eta index outer

  double lambda_at(std::size_t i) const noexcept;
  double eta_at(std::size_t j) const noexcept;
  bool at(std::size_t i, std::size_t j) const { return feasible[j * grid.n_lambda + i] != 0; }
};

FeasibilityRaster diagram_scan(const KerrParams &params, const ScanGrid &grid);

// Sampled curves: SigmaR uniform in r_c over [r1, r2]; SigmaTheta+- uniform in theta_c over
// [0, pi/2] starting from the merge point (0, -a^2); SigmaTheta0 uniform in lambda.
std::vector<CriticalCurvePoint> sample_sigma_r(const KerrParams &params, std::size_t count = 512);
std::vector<CriticalCurvePoint> sample_sigma_theta(const KerrParams &params, int sign,
                                                   std::size_t count = 512);
std::vector<CriticalCurvePoint> sample_sigma_theta0(double lambda_min, double lambda_max,
                                                    std::size_t count = 2);

void write_curve_csv(std::ostream &out, const std::vector<CriticalCurvePoint> &points);
void write_raster_csv(std::ostream &out, const FeasibilityRaster &raster);

}  // namespace kerr
