#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "kerr/bifurcation.hpp"
#include "kerr/dormand_prince.hpp"
#include "kerr/errors.hpp"
#include "kerr/integrator.hpp"

using namespace kerr;
using doctest::Approx;

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

PhaseState launch(double r, double theta, double lambda, double eta, const KerrParams &p,
                  double r_sign, double theta_sign = 1.0)
{
  PhaseState s;
  s.point = {0.0, r, theta, 0.0};
  s.p_r = r_sign * std::sqrt(std::max(0.0, radial_potential(r, lambda, eta, p))) / delta(r, p.a());
  s.p_theta = theta_sign * std::sqrt(std::max(0.0, polar_potential(theta, lambda, eta, p)));
  return s;
}

}  // namespace

TEST_CASE("Dormand-Prince reproduces smooth solutions")
{
  State<2> y{1.0, 0.0};
  auto rhs = [](double, const State<2> &s, State<2> &d)
  {
    d[0] = s[1];
    d[1] = -s[0];
    return true;
  };
  REQUIRE(integrate_to<2>(rhs, 0.0, 10.0, y, 1e-12, 1e-14));
  CHECK(y[0] == Approx(std::cos(10.0)).epsilon(1e-9));
  CHECK(y[1] == Approx(-std::sin(10.0)).epsilon(1e-9));

  State<1> z{1.0};
  auto decay = [](double, const State<1> &s, State<1> &d)
  {
    d[0] = -s[0];
    return true;
  };
  REQUIRE(integrate_to<1>(decay, 0.0, -3.0, z, 1e-12, 1e-14));
  CHECK(z[0] == Approx(std::exp(3.0)).epsilon(1e-10));
}

TEST_CASE("radial infall reaches the horizon")
{
  const KerrParams params(0.0);
  const PhaseState s = launch(10.0, kHalfPi, 0.0, 0.0, params, -1.0);
  const Trajectory t = integrate(s, ConservedSet::from_impact(0.0, 0.0, 0.0), params);
  CHECK(t.reason == TerminationReason::HorizonReached);
  CHECK(t.last().state.point.r <= params.horizon() * (1.0 + 1e-6));
  for (const TrajectorySample &x : t.samples)
    CHECK(x.state.point.phi == 0.0);
}

TEST_CASE("rays below the critical curve connect horizon and infinity")
{
  const double a = 0.97;
  const KerrParams params(a);
  const double lambda = -0.6;
  double r_c = 0.0;
  REQUIRE(critical_radius_for_lambda(lambda, params, r_c));
  const double eta = 0.5 * sigma_r_eta(r_c, a);
  const ConservedSet c = ConservedSet::from_impact(lambda, eta, a);
  const PhaseState s = launch(10.0, kHalfPi, lambda, eta, params, 1.0);

  IntegratorControls forward;
  forward.record = false;
  CHECK(integrate(s, c, params, forward).reason == TerminationReason::Escaped);
  IntegratorControls backward = forward;
  backward.direction = -1;
  CHECK(integrate(s, c, params, backward).reason == TerminationReason::HorizonReached);
}

TEST_CASE("rays above the critical curve bounce")
{
  const double a = 0.97;
  const KerrParams params(a);
  const double lambda = -0.6;
  double r_c = 0.0;
  REQUIRE(critical_radius_for_lambda(lambda, params, r_c));
  const double eta = sigma_r_eta(r_c, a) + 5.0;
  const ConservedSet c = ConservedSet::from_impact(lambda, eta, a);
  const double r_out = turning_points(lambda, eta, params).radial.back().value;

  // ingoing from far away: turns at r_out and escapes again
  const Trajectory t = integrate(launch(50.0, kHalfPi, lambda, eta, params, -1.0), c, params);
  CHECK(t.reason == TerminationReason::Escaped);
  double r_min = 1e9;
  for (const TrajectorySample &x : t.samples)
    r_min = std::min(r_min, x.state.point.r);
  CHECK(r_min == Approx(r_out).epsilon(1e-6));
}

TEST_CASE("critical rays follow the separatrix closed form")
{
  const double a = 0.97;
  const KerrParams params(a);
  const PhotonRingRadii rings = photon_ring_radii(params);
  for (double f : {0.2, 0.5, 0.8})
  {
    const double r_c = rings.r1 + f * (rings.r2 - rings.r1);
    const CriticalCurvePoint p = sigma_r(r_c, params);
    // rounding in (lambda, eta) moves the double root by ~1e-8 and the ray departs from the
    // separatrix like exp(Z sigma) once it gets that close, so stop while r - r_c >> 1e-8
    IntegratorControls controls;
    controls.sigma_budget = 2.5;
    const Trajectory t =
        integrate(launch(10.0, kHalfPi, p.lambda, p.eta, params, -1.0), ConservedSet::from_impact(p.lambda, p.eta, a),
                  params, controls);
    double worst = 0.0;
    for (const TrajectorySample &x : t.samples)
      worst = std::max(worst, std::abs(x.state.point.r - separatrix_r(x.sigma, 10.0, r_c, params)));
    CHECK(worst < 1e-6);
    CHECK(t.last().sigma == Approx(2.5));
  }
}

TEST_CASE("integrals are conserved without projection")
{
  const double a = 0.9;
  const KerrParams params(a);
  const double lambda = 2.0;
  const double eta = 20.0;
  const ConservedSet c = ConservedSet::from_impact(lambda, eta, a);
  IntegratorControls controls;
  controls.project = false;
  const Trajectory t = integrate(launch(30.0, 1.0, lambda, eta, params, -1.0), c, params, controls);
  REQUIRE(t.reason == TerminationReason::Escaped);
  double h_max = 0.0;
  double f_drift = 0.0;
  for (const TrajectorySample &x : t.samples)
  {
    h_max = std::max(h_max, std::abs(hamiltonian(x.state, c, params)));
    f_drift = std::max(f_drift, std::abs(carter_integral(x.state, c, params) - c.F));
  }
  CHECK(h_max < 1e-8);
  CHECK(f_drift < 1e-8 * std::max(1.0, c.F));
}

TEST_CASE("polar motion passes through the poles")
{
  const double a = 0.5;
  const KerrParams params(a);
  const ConservedSet c = ConservedSet::from_impact(0.0, 30.0, a);
  const Trajectory t = integrate(launch(20.0, 0.3, 0.0, 30.0, params, -1.0, -1.0), c, params);
  for (const TrajectorySample &x : t.samples)
  {
    CHECK(x.state.point.theta >= 0.0);
    CHECK(x.state.point.theta <= std::numbers::pi);
  }
}

TEST_CASE("integrator input validation and bookkeeping")
{
  const KerrParams params(0.5);
  PhaseState s;
  s.point = {0.0, 10.0, kHalfPi, 0.0};
  s.p_r = 5.0;
  CHECK_THROWS_AS(integrate(s, ConservedSet::from_impact(0.0, 0.0, 0.5), params), DomainError);
  CHECK_THROWS_AS(integrate(s, ConservedSet::from_impact(0.0, 0.0, 0.5, 0.0), params), DomainError);

  IntegratorControls controls;
  controls.max_steps = 3;
  const ConservedSet c = ConservedSet::from_impact(1.0, 20.0, 0.5);
  const Trajectory t = integrate(launch(10.0, kHalfPi, 1.0, 20.0, params, -1.0), c, params, controls);
  CHECK(t.reason == TerminationReason::MaxSteps);
  CHECK(t.steps == 3);
  CHECK(t.samples.size() == 4);

  controls.max_steps = 1000000;
  controls.record = false;
  const Trajectory e = integrate(launch(10.0, kHalfPi, 1.0, 20.0, params, 1.0), c, params, controls);
  CHECK(e.samples.size() == 2);
  CHECK(to_string(e.reason) == "Escaped");

  std::ostringstream csv;
  write_trajectory_csv(csv, e);
  CHECK(csv.str().rfind("sigma,tau,t,r,theta,phi,p_r,p_theta\n", 0) == 0);
}

TEST_CASE("potential identities hold along rays")
{
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int rays = 0;
  while (rays < 60)
  {
    const double a = 0.99 * u(rng);
    const KerrParams params(a);
    const double lambda = -6.0 + 12.0 * u(rng);
    const double eta = -0.5 + 25.0 * u(rng);
    const double r = params.horizon() + 0.1 + 30.0 * u(rng);
    const double th = 0.1 + 2.9 * u(rng);
    if (radial_potential(r, lambda, eta, params) < 0.0 || polar_potential(th, lambda, eta, params) < 0.0)
      continue;
    ++rays;
    const ConservedSet c = ConservedSet::from_impact(lambda, eta, a);
    const Trajectory t = integrate(launch(r, th, lambda, eta, params, u(rng) < 0.5 ? -1.0 : 1.0,
                                          u(rng) < 0.5 ? -1.0 : 1.0),
                                   c, params);
    double t_prev = -1.0;
    for (const TrajectorySample &x : t.samples)
    {
      const double rr = x.state.point.r;
      const double tt = x.state.point.theta;
      const double R = radial_potential(rr, lambda, eta, params);
      const double T = polar_potential(tt, lambda, eta, params);
      const double scale = std::max(1.0, rr * rr * rr * rr);
      CHECK(R > -1e-9 * scale);
      CHECK(T > -1e-9 * std::max(1.0, std::abs(eta) + lambda * lambda));
      const double dr = delta(rr, a) * x.state.p_r;
      CHECK(std::abs(dr * dr - R) < 1e-8 * scale);
      CHECK(std::abs(x.state.p_theta * x.state.p_theta - T) < 1e-8 * std::max(1.0, std::abs(T)));
      // coordinate time advances with sigma everywhere the ray may go
      CHECK(dt_dsigma(rr, tt, lambda, params) > 0.0);
      CHECK(x.state.point.t > t_prev);
      t_prev = x.state.point.t;
    }
  }
}
