// kerrshadow adaptive null geodesic integrator

// C++ headers
#include <algorithm>  // max, min
#include <cmath>      // abs, copysign, cos, fmod, isfinite, sin, sqrt
#include <iomanip>    // setprecision
#include <numbers>    // pi
#include <ostream>    // ostream
#include <string>     // to_string

// kerrshadow headers
#include "kerr/dormand_prince.hpp"
#include "kerr/errors.hpp"
#include "kerr/integrator.hpp"

namespace kerr {

namespace {

// y = (r, theta, u, v, phi, t, tau) with u = dr/dsigma, v = dtheta/dsigma
using MinoState = State<7>;

struct MinoField
{
  const KerrParams &params;
  double lambda;
  double eta;
  double inv_energy;

  bool operator()(double, const MinoState &y, MinoState &dy) const
  {
    const double r = y[0];
    if (!(r > params.horizon()) || !std::isfinite(r))
      return false;
    const double a = params.a();
    const double theta = y[1];
    const double cth = std::cos(theta);
    const double s = guarded_sin(theta);
    const double s2 = s * s;
    const double r2a2 = r * r + a * a;
    const double dlt = r * r - 2.0 * r + a * a;
    const double p = r2a2 - a * lambda;
    const double k = eta + (lambda - a) * (lambda - a);
    dy[0] = y[2];
    dy[1] = y[3];
    dy[2] = 2.0 * r * p - k * (r - 1.0);
    dy[3] = -a * a * cth * s + lambda * lambda * cth / (s2 * s);
    dy[4] = a * p / dlt - a + lambda / s2;
    dy[5] = r2a2 * p / dlt + a * (lambda - a * s2);
    dy[6] = (r * r + a * a * cth * cth) * inv_energy;
    return true;
  }
};

PhaseState to_phase_state(const MinoState &y, double energy, double a)
{
  PhaseState st;
  st.point.t = y[5];
  st.point.r = y[0];
  double theta = std::fmod(y[1], 2.0 * std::numbers::pi);
  if (theta < 0.0)
    theta += 2.0 * std::numbers::pi;
  double phi = y[4];
  double v = y[3];
  if (theta > std::numbers::pi)
  {
    // continued through a pole
    theta = 2.0 * std::numbers::pi - theta;
    phi += std::numbers::pi;
    v = -v;
  }
  st.point.theta = theta;
  st.point.phi = phi;
  st.p_r = energy * y[2] / delta(y[0], a);
  st.p_theta = energy * v;
  return st;
}

void project(MinoState &y, double lambda, double eta, const KerrParams &params)
{
  const double R = radial_potential(y[0], lambda, eta, params);
  const double T = polar_potential(y[1], lambda, eta, params);
  y[2] = std::copysign(std::sqrt(std::max(R, 0.0)), y[2]);
  y[3] = std::copysign(std::sqrt(std::max(T, 0.0)), y[3]);
}

}  // namespace

//--------------------------------------------------------------------------------------------------

std::string_view to_string(TerminationReason reason) noexcept
{
  switch (reason)
  {
    case TerminationReason::HorizonReached:
      return "HorizonReached";
    case TerminationReason::Escaped:
      return "Escaped";
    case TerminationReason::MaxSteps:
      return "MaxSteps";
    case TerminationReason::TurningBounded:
      return "TurningBounded";
  }
  return "Unknown";
}

//--------------------------------------------------------------------------------------------------

Trajectory integrate(const PhaseState &initial, const ConservedSet &c, const KerrParams &params,
                     const IntegratorControls &controls)
{
  if (!(c.E > 0.0))
    throw DomainError("ray energy must be positive, got E = " + std::to_string(c.E));
  const double H0 = hamiltonian(initial, c, params);
  if (!(std::abs(H0) <= controls.null_tolerance * c.E * c.E))
    throw DomainError("initial state is not null: H = " + std::to_string(H0));

  const double a = params.a();
  const double r_stop = params.horizon() * (1.0 + controls.horizon_shell);
  const double dir = controls.direction < 0 ? -1.0 : 1.0;
  const MinoField field{params, c.lambda, c.eta, 1.0 / c.E};

  MinoState y{initial.point.r,
              initial.point.theta,
              delta(initial.point.r, a) * initial.p_r / c.E,
              initial.p_theta / c.E,
              initial.point.phi,
              initial.point.t,
              0.0};

  Trajectory out;
  double sigma = 0.0;
  auto emit = [&] { out.samples.push_back({sigma, y[6], to_phase_state(y, c.E, a)}); };
  emit();
  bool pending = false;

  if (y[0] <= r_stop)
  {
    out.reason = TerminationReason::HorizonReached;
    return out;
  }
  if (y[0] >= controls.r_max)
  {
    out.reason = TerminationReason::Escaped;
    return out;
  }

  MinoState k1, y_next, k_next, err;
  if (!field(sigma, y, k1))
    throw DomainError("initial state outside the integration domain");

  double h = dir * controls.initial_step;
  while (true)
  {
    if (out.steps >= controls.max_steps)
    {
      out.reason = TerminationReason::MaxSteps;
      break;
    }
    const double remaining = controls.sigma_budget - std::abs(sigma);
    if (remaining <= 0.0)
    {
      out.reason = TerminationReason::TurningBounded;
      break;
    }

    // keep each step from crossing the horizon or outrunning the blow-up of r(sigma)
    double h_abs = std::min(std::abs(h), remaining);
    const double r = y[0];
    const double u = y[2];
    if (u != 0.0)
    {
      const double limit = (dir * u < 0.0) ? 0.5 * (r - params.horizon()) : 0.5 * r;
      h_abs = std::min(h_abs, limit / std::abs(u));
    }
    h = dir * h_abs;

    const bool ok = dormand_prince_step<7>(field, sigma, y, k1, h, y_next, k_next, err);
    const double norm = ok ? error_norm<7>(y, y_next, err, controls.rtol, controls.atol) : HUGE_VAL;
    if (norm > 1.0)
    {
      ++out.rejected;
      h *= ok ? step_factor(norm) : 0.25;
      if (std::abs(h) < controls.min_step * std::max(1.0, std::abs(sigma)))
        throw StepFailure("step size underflow at sigma = " + std::to_string(sigma)
                          + ", r = " + std::to_string(y[0]));
      continue;
    }

    sigma += h;
    y = y_next;
    ++out.steps;
    pending = true;
    if (controls.project)
    {
      project(y, c.lambda, c.eta, params);
      field(sigma, y, k1);
    }
    else
      k1 = k_next;
    h *= step_factor(norm);

    if (y[0] <= r_stop)
    {
      out.reason = TerminationReason::HorizonReached;
      break;
    }
    if (y[0] >= controls.r_max)
    {
      out.reason = TerminationReason::Escaped;
      break;
    }
    if (controls.record)
    {
      emit();
      pending = false;
    }
  }
  if (pending)
    emit();
  return out;
}

//--------------------------------------------------------------------------------------------------

void write_trajectory_csv(std::ostream &out, const Trajectory &trajectory)
{
  out << "sigma,tau,t,r,theta,phi,p_r,p_theta\n";
  out << std::setprecision(17);
  for (const TrajectorySample &s : trajectory.samples)
    out << s.sigma << ',' << s.tau << ',' << s.state.point.t << ',' << s.state.point.r << ','
        << s.state.point.theta << ',' << s.state.point.phi << ',' << s.state.p_r << ','
        << s.state.p_theta << '\n';
}

}  // namespace kerr
