// kerrshadow null geodesics: first integrals, potentials, equations of motion

#pragma once

#include <vector>

#include "kerr/metric.hpp"

namespace kerr {

// Position plus the non-cyclic covariant momenta; p_t = -E and p_phi = L live in ConservedSet
struct PhaseState
{
  BLPoint point;
  double p_r = 0.0;
  double p_theta = 0.0;
};

// First integrals of a ray. eta is the constant entering R(r) and Theta(theta), so Q = eta E^2.
struct ConservedSet
{
  double E = 1.0;
  double L = 0.0;
  double lambda = 0.0;
  double eta = 0.0;
  double Q = 0.0;
  double F = 0.0;  // Carter integral value Q + (L - aE)^2

  static ConservedSet from_impact(double lambda, double eta, double a, double energy = 1.0);
  static ConservedSet from_momenta(double energy, double angular_momentum, double carter_F,
                                   double a);
};

// H = (Delta p_r^2 + p_theta^2) / (2 rho^2) + U(r, theta); zero on null rays
double hamiltonian(const PhaseState &state, const ConservedSet &c, const KerrParams &params);

// F = p_theta^2 + (aE sin(theta) - L / sin(theta))^2 - 2 a^2 H cos^2(theta)
double carter_integral(const PhaseState &state, const ConservedSet &c, const KerrParams &params);

// R(r) = (r^2 + a^2 - a lambda)^2 - (eta + (lambda - a)^2) Delta(r)
double radial_potential(double r, double lambda, double eta, const KerrParams &params) noexcept;
double radial_potential_derivative(double r, double lambda, double eta,
                                   const KerrParams &params) noexcept;

// Theta(theta) = eta + cos^2(theta) (a^2 - lambda^2 / sin^2(theta))
double polar_potential(double theta, double lambda, double eta, const KerrParams &params) noexcept;
double polar_potential_derivative(double theta, double lambda, double eta,
                                  const KerrParams &params) noexcept;

// Azimuthal and coordinate-time rates per unit Mino time sigma (d tau = rho^2 / E d sigma)
double dphi_dsigma(double r, double theta, double lambda, const KerrParams &params) noexcept;
double dt_dsigma(double r, double theta, double lambda, const KerrParams &params) noexcept;

// Derivatives with respect to the affine parameter tau, from Hamilton's equations
struct PhaseDerivative
{
  double dr;
  double dtheta;
  double dp_r;
  double dp_theta;
  double dphi;
  double dt;
};

PhaseDerivative equations_of_motion(const PhaseState &state, const ConservedSet &c,
                                    const KerrParams &params);

struct TurningPoint
{
  double value;
  bool critical;  // root of multiplicity two
};

struct TurningPoints
{
  std::vector<TurningPoint> radial;  // zeros of R in (r_+, inf), ascending
  std::vector<TurningPoint> polar;   // zeros of Theta in (0, pi), ascending
};

TurningPoints turning_points(double lambda, double eta, const KerrParams &params);

}  // namespace kerr
