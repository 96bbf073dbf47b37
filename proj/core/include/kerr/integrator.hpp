// kerrshadow adaptive null geodesic integrator
//
// The flow is integrated in Mino time sigma (d tau = rho^2 / E d sigma) with the regularised
// radial momentum u = dr/dsigma = Delta p_r / E, which stays bounded at the horizon where p_r
// itself diverges. Turning points need no sign bookkeeping: u and dtheta/dsigma pass through
// zero under u' = R'(r) / 2 and theta'' = Theta'(theta) / 2.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "kerr/geodesic.hpp"
#include "kerr/metric.hpp"

namespace kerr {

enum class TerminationReason
{
  HorizonReached,
  Escaped,
  MaxSteps,
  TurningBounded,  // sigma budget spent without reaching horizon or r_max
};

std::string_view to_string(TerminationReason reason) noexcept;

struct IntegratorControls
{
  double rtol = 1.0e-10;
  double atol = 1.0e-12;
  double horizon_shell = 1.0e-6;  // stop once r <= r_+ (1 + horizon_shell)
  double r_max = 1.0e3;
  std::size_t max_steps = 1000000;
  double sigma_budget = 1.0e3;
  double initial_step = 1.0e-3;
  double min_step = 1.0e-14;
  double null_tolerance = 1.0e-8;  // |H| / E^2 accepted for the initial state
  int direction = +1;              // -1 integrates the same field with negated parameter
  bool record = true;              // keep every accepted step, otherwise only the endpoints
  bool project = true;             // re-impose u^2 = R and (dtheta/dsigma)^2 = Theta after steps
};

struct TrajectorySample
{
  double sigma = 0.0;
  double tau = 0.0;
  PhaseState state;
};

struct Trajectory
{
  std::vector<TrajectorySample> samples;
  TerminationReason reason = TerminationReason::MaxSteps;
  std::size_t steps = 0;
  std::size_t rejected = 0;

  const TrajectorySample &last() const { return samples.back(); }
};

// Throws DomainError if the initial state is not null, StepFailure if the step size collapses
Trajectory integrate(const PhaseState &initial, const ConservedSet &c, const KerrParams &params,
                     const IntegratorControls &controls = {});

// CSV with header sigma,tau,t,r,theta,phi,p_r,p_theta at 17 significant digits
void write_trajectory_csv(std::ostream &out, const Trajectory &trajectory);

}  // namespace kerr
