// kerrshadow shadow boundary seen by a stationary observer
//
// Sky directions are unit vectors N = (sin a cos b, sin a sin b, cos a) on the observer's
// sphere, taken against the tetrad legs (e_theta, e_phi, e_r). Because e_r points inwards,
// alpha = 0 looks straight at the hole.

#pragma once

#include <iosfwd>
#include <vector>

#include "kerr/geodesic.hpp"
#include "kerr/metric.hpp"
#include "kerr/observer.hpp"

namespace kerr {

// Below this spin the spherical-orbit parametrisation is too close to its a = 0 singularity
inline constexpr double kMinShadowSpin = 1.0e-3;

struct DirectionAngles
{
  double alpha;
  double beta;
};

struct PlanePoint
{
  double X;
  double Y;
};

// X = 2 tan(alpha/2) sin(beta), Y = 2 tan(alpha/2) cos(beta); throws DomainError at alpha = pi
PlanePoint stereographic(const DirectionAngles &angles);
DirectionAngles inverse_stereographic(const PlanePoint &point) noexcept;

struct ThetaStarRoots
{
  double r1_star;
  double r2_star;
};

// Theta*(r_c) = Theta(theta0) on the spherical-orbit integrals lambda(r_c), eta(r_c)
double theta_star(double r_c, const ObserverSpec &obs, const KerrParams &params);
ThetaStarRoots theta_star_roots(const ObserverSpec &obs, const KerrParams &params);

struct BoundaryAngles
{
  double B_alpha;  // arccos of sqrt(R(r0)) / (rho0 u0 (1 - lambda Omega) sqrt(Delta0))
  double B_beta;   // in [-pi/2, pi/2]
};

BoundaryAngles boundary_angles(double r_c, const ObserverSpec &obs, const KerrParams &params);

struct ShadowSample
{
  double r_c;
  double alpha;
  double beta;
  double X;
  double Y;
  int form;    // 1: alpha = B_alpha (orbit below the observer), 2: alpha = pi - B_alpha
  int branch;  // 0: beta = pi + B_beta, 1: beta = 2 pi - B_beta
};

struct ShadowCurve
{
  // Ordered as a closed polygon: branch 0 with r_c ascending, then branch 1 descending
  std::vector<ShadowSample> samples;
  int statement_case = 1;  // 1: r0 > r2*, 2: r0 < r1*, 3: otherwise
  double r1_star = 0.0;
  double r2_star = 0.0;
};

// samples_per_branch r_c values, cosine-spaced towards r1* and r2* (and r0 in case 3)
ShadowCurve shadow_curve(const ObserverSpec &obs, const KerrParams &params,
                         std::size_t samples_per_branch = 256);

void write_shadow_csv(std::ostream &out, const ShadowCurve &curve);

struct RayInit
{
  PhaseState state;
  ConservedSet conserved;
  double W;  // scale of w = W (-e_t + N1 e_theta + N2 e_phi + N3 e_r) giving E = 1
};

// Photon arriving at the observer from sky direction N, normalised to E = 1
RayInit ray_from_angles(const DirectionAngles &angles, const ObserverSpec &obs,
                        const KerrParams &params);

// Inverse of ray_from_angles for a state at the observer's position. Throws DomainError when
// 1 - Omega lambda vanishes.
DirectionAngles angles_from_ray(const PhaseState &state, const ConservedSet &c,
                                const ObserverSpec &obs, const KerrParams &params);

}  // namespace kerr
