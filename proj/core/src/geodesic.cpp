// kerrshadow null geodesics: first integrals, potentials, equations of motion

// C++ headers
#include <algorithm>  // max, sort
#include <cmath>      // abs, acos, cos, sin, sqrt
#include <numbers>    // pi

// kerrshadow headers
#include "kerr/geodesic.hpp"
#include "roots.hpp"

namespace kerr {

//--------------------------------------------------------------------------------------------------

ConservedSet ConservedSet::from_impact(double lambda, double eta, double a, double energy)
{
  ConservedSet c;
  c.E = energy;
  c.lambda = lambda;
  c.eta = eta;
  c.L = lambda * energy;
  c.Q = eta * energy * energy;
  c.F = c.Q + (c.L - a * energy) * (c.L - a * energy);
  return c;
}

ConservedSet ConservedSet::from_momenta(double energy, double angular_momentum, double carter_F,
                                        double a)
{
  ConservedSet c;
  c.E = energy;
  c.L = angular_momentum;
  c.F = carter_F;
  c.Q = carter_F - (angular_momentum - a * energy) * (angular_momentum - a * energy);
  c.lambda = angular_momentum / energy;
  c.eta = c.Q / (energy * energy);
  return c;
}

//--------------------------------------------------------------------------------------------------

double hamiltonian(const PhaseState &state, const ConservedSet &c, const KerrParams &params)
{
  const double r = state.point.r;
  const MetricScalars m = metric_scalars(r, state.point.theta, params);
  const double a = params.a();
  const double s = guarded_sin(state.point.theta);
  const double E = c.E;
  const double L = c.L;
  const double dr2 = m.delta * m.rho2;
  const double U = (4.0 * a * r * E * L + m.delta * L * L / (s * s) - a * a * L * L) / (2.0 * dr2)
                   - (0.5 + r * (r * r + a * a) / dr2) * E * E;
  return (m.delta * state.p_r * state.p_r + state.p_theta * state.p_theta) / (2.0 * m.rho2) + U;
}

double carter_integral(const PhaseState &state, const ConservedSet &c, const KerrParams &params)
{
  const double a = params.a();
  const double theta = state.point.theta;
  const double s = guarded_sin(theta);
  const double cth = std::cos(theta);
  const double k = a * c.E * s - c.L / s;
  const double H = hamiltonian(state, c, params);
  return state.p_theta * state.p_theta + k * k - 2.0 * a * a * H * cth * cth;
}

//--------------------------------------------------------------------------------------------------

double radial_potential(double r, double lambda, double eta, const KerrParams &params) noexcept
{
  const double a = params.a();
  const double p = r * r + a * a - a * lambda;
  const double k = eta + (lambda - a) * (lambda - a);
  return p * p - k * delta(r, a);
}

double radial_potential_derivative(double r, double lambda, double eta,
                                   const KerrParams &params) noexcept
{
  const double a = params.a();
  const double p = r * r + a * a - a * lambda;
  const double k = eta + (lambda - a) * (lambda - a);
  return 4.0 * r * p - k * (2.0 * r - 2.0);
}

double polar_potential(double theta, double lambda, double eta, const KerrParams &params) noexcept
{
  const double a = params.a();
  const double s = guarded_sin(theta);
  const double cth = std::cos(theta);
  return eta + cth * cth * (a * a - lambda * lambda / (s * s));
}

double polar_potential_derivative(double theta, double lambda, double eta,
                                  const KerrParams &params) noexcept
{
  (void)eta;
  const double a = params.a();
  const double s = guarded_sin(theta);
  const double cth = std::cos(theta);
  return -2.0 * a * a * cth * s + 2.0 * lambda * lambda * cth / (s * s * s);
}

double dphi_dsigma(double r, double theta, double lambda, const KerrParams &params) noexcept
{
  const double a = params.a();
  const double s = guarded_sin(theta);
  return a * (r * r + a * a - a * lambda) / delta(r, a) - a + lambda / (s * s);
}

double dt_dsigma(double r, double theta, double lambda, const KerrParams &params) noexcept
{
  const double a = params.a();
  const double s = std::sin(theta);
  const double r2a2 = r * r + a * a;
  return r2a2 * (r2a2 - a * lambda) / delta(r, a) + a * (lambda - a * s * s);
}

//--------------------------------------------------------------------------------------------------

// Uses 2 rho^2 H = Delta p_r^2 + p_theta^2 - P^2 / Delta + T(theta), with
// P = (r^2 + a^2) E - a L and T = (L / sin(theta) - a E sin(theta))^2.
PhaseDerivative equations_of_motion(const PhaseState &state, const ConservedSet &c,
                                    const KerrParams &params)
{
  const double r = state.point.r;
  const double theta = state.point.theta;
  const MetricScalars m = metric_scalars(r, theta, params);
  const double a = params.a();
  const double E = c.E;
  const double L = c.L;
  const double s = guarded_sin(theta);
  const double cth = std::cos(theta);
  const double dlt = m.delta;
  const double dlt_r = 2.0 * r - 2.0;
  const double P = (r * r + a * a) * E - a * L;
  const double k = L / s - a * E * s;
  const double T = k * k;
  const double N = dlt * state.p_r * state.p_r + state.p_theta * state.p_theta - P * P / dlt + T;
  const double rho2 = m.rho2;

  const double dN_dr = dlt_r * state.p_r * state.p_r - 4.0 * r * E * P / dlt
                       + P * P * dlt_r / (dlt * dlt);
  const double dT_dtheta = 2.0 * k * (-L * cth / (s * s) - a * E * cth);
  const double drho2_dr = 2.0 * r;
  const double drho2_dtheta = -2.0 * a * a * cth * s;

  PhaseDerivative d{};
  d.dr = dlt * state.p_r / rho2;
  d.dtheta = state.p_theta / rho2;
  d.dp_r = -(dN_dr / (2.0 * rho2) - N * drho2_dr / (2.0 * rho2 * rho2));
  d.dp_theta = -(dT_dtheta / (2.0 * rho2) - N * drho2_dtheta / (2.0 * rho2 * rho2));
  d.dphi = (a * P / dlt - a * E + L / (s * s)) / rho2;
  d.dt = ((r * r + a * a) * P / dlt + a * (L - a * E * s * s)) / rho2;
  return d;
}

//--------------------------------------------------------------------------------------------------

namespace {

std::vector<TurningPoint> radial_turning_points(double lambda, double eta,
                                                const KerrParams &params)
{
  const double a = params.a();
  const double r_plus = params.horizon();
  // R(r) = r^4 + c2 r^2 + c1 r + c0
  const double c2 = a * a - lambda * lambda - eta;
  const double c1 = 2.0 * (eta + (lambda - a) * (lambda - a));
  const double c0 = -a * a * eta;
  const double upper = 1.0 + std::max({std::abs(c2), std::abs(c1), std::abs(c0)}) + r_plus;

  auto R = [&](double r) { return radial_potential(r, lambda, eta, params); };
  auto dR = [&](double r) { return radial_potential_derivative(r, lambda, eta, params); };

  // R'' = 12 r^2 + 2 c2 vanishes at most once on r > 0
  std::vector<double> breaks{r_plus};
  if (c2 < 0.0)
  {
    const double inflection = std::sqrt(-c2 / 6.0);
    if (inflection > r_plus && inflection < upper)
      breaks.push_back(inflection);
  }
  breaks.push_back(upper);
  const std::vector<double> extrema = detail::roots_on_monotone_pieces(dR, breaks);

  std::vector<TurningPoint> critical;
  for (double x : extrema)
    if (x > r_plus && std::abs(R(x)) <= 1.0e-10 * std::max(1.0, x * x * x * x))
      critical.push_back({x, true});

  std::vector<double> pieces{r_plus};
  for (double x : extrema)
    if (x > r_plus && x < upper)
      pieces.push_back(x);
  pieces.push_back(upper);

  std::vector<TurningPoint> out = critical;
  for (double x : detail::roots_on_monotone_pieces(R, pieces))
  {
    if (!(x > r_plus))
      continue;
    bool near_critical = false;
    for (const TurningPoint &tp : critical)
      if (std::abs(x - tp.value) <= 1.0e-5 * std::max(1.0, tp.value))
        near_critical = true;
    if (!near_critical)
      out.push_back({x, false});
  }
  std::sort(out.begin(), out.end(),
            [](const TurningPoint &l, const TurningPoint &r) { return l.value < r.value; });
  return out;
}

// Theta(theta) (1 - c) = -a^2 c^2 + (a^2 - eta - lambda^2) c + eta with c = cos^2(theta)
std::vector<TurningPoint> polar_turning_points(double lambda, double eta, const KerrParams &params)
{
  const double a = params.a();
  const double qa = -a * a;
  const double qb = a * a - eta - lambda * lambda;
  const double qc = eta;

  struct CRoot
  {
    double c;
    bool double_root;
  };
  std::vector<CRoot> c_roots;
  if (qa == 0.0)
  {
    if (qb != 0.0)
      c_roots.push_back({-qc / qb, false});
  }
  else
  {
    const double disc = qb * qb - 4.0 * qa * qc;
    const double disc_tol = 1.0e-12 * std::max(1.0, qb * qb);
    if (std::abs(disc) <= disc_tol)
      c_roots.push_back({-qb / (2.0 * qa), true});
    else if (disc > 0.0)
    {
      const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
      c_roots.push_back({q / qa, false});
      if (q != 0.0)
        c_roots.push_back({qc / q, false});
      else
        c_roots.push_back({0.0, false});
    }
  }

  constexpr double kZero = 1.0e-14;
  std::vector<TurningPoint> out;
  for (const CRoot &root : c_roots)
  {
    if (root.c < -kZero || root.c >= 1.0)
      continue;
    if (std::abs(root.c) <= kZero)
    {
      out.push_back({0.5 * std::numbers::pi, true});
      continue;
    }
    const double theta = std::acos(std::sqrt(root.c));
    out.push_back({theta, root.double_root});
    out.push_back({std::numbers::pi - theta, root.double_root});
  }
  std::sort(out.begin(), out.end(),
            [](const TurningPoint &l, const TurningPoint &r) { return l.value < r.value; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const TurningPoint &l, const TurningPoint &r)
                        { return std::abs(l.value - r.value) < 1.0e-14; }),
            out.end());
  return out;
}

}  // namespace

TurningPoints turning_points(double lambda, double eta, const KerrParams &params)
{
  return {radial_turning_points(lambda, eta, params), polar_turning_points(lambda, eta, params)};
}

}  // namespace kerr
