// kerrshadow stationary observers and their orthonormal tetrads

// C++ headers
#include <cmath>   // abs, cos, sin, sqrt
#include <numbers> // pi
#include <string>  // to_string

// kerrshadow headers
#include "kerr/errors.hpp"
#include "kerr/observer.hpp"

namespace kerr {

//--------------------------------------------------------------------------------------------------

std::string_view to_string(ObserverKind kind) noexcept
{
  switch (kind)
  {
    case ObserverKind::ZAMO:
      return "zamo";
    case ObserverKind::Static:
      return "static";
    case ObserverKind::Carter:
      return "carter";
  }
  return "unknown";
}

std::optional<ObserverKind> observer_kind_from_string(std::string_view name) noexcept
{
  if (name == "zamo" || name == "ZAMO")
    return ObserverKind::ZAMO;
  if (name == "static")
    return ObserverKind::Static;
  if (name == "carter")
    return ObserverKind::Carter;
  return std::nullopt;
}

//--------------------------------------------------------------------------------------------------

namespace {

void check_position(double r0, double theta0, const KerrParams &params)
{
  if (!(r0 > params.horizon()))
    throw DomainError("observer radius r0 = " + std::to_string(r0)
                      + " must exceed the horizon r+ = " + std::to_string(params.horizon()));
  if (!(theta0 > 0.0 && theta0 < std::numbers::pi))
    throw DomainError("observer polar angle theta0 = " + std::to_string(theta0)
                      + " must lie strictly inside (0, pi)");
}

double timelike_radicand(double r0, double theta0, double omega, const KerrParams &params)
{
  const MetricScalars m = metric_scalars(r0, theta0, params);
  const double a = params.a();
  const double s = std::sin(theta0);
  const double s2 = s * s;
  return m.delta - a * a * s2 + omega * (4.0 * a * r0 - m.A * omega) * s2;
}

}  // namespace

OmegaBounds omega_bounds(double r0, double theta0, const KerrParams &params)
{
  check_position(r0, theta0, params);
  const double a = params.a();
  const double sd = std::sqrt(delta(r0, a));
  const double s = std::sin(theta0);
  const double r2a2 = r0 * r0 + a * a;
  return {(a - sd / s) / (r2a2 - a * sd * s), (a + sd / s) / (r2a2 + a * sd * s)};
}

ObserverSpec ObserverSpec::create(double r0, double theta0, double omega, const KerrParams &params,
                                  double phi0)
{
  const OmegaBounds b = omega_bounds(r0, theta0, params);
  if (!(omega > b.minus + kOmegaMargin && omega < b.plus - kOmegaMargin))
    throw TimelikeViolation("angular velocity Omega = " + std::to_string(omega)
                            + " outside the admissible interval (" + std::to_string(b.minus) + ", "
                            + std::to_string(b.plus) + "): worldline not timelike");
  return ObserverSpec(r0, theta0, omega, phi0);
}

ObserverSpec named_observer(ObserverKind kind, double r0, double theta0, const KerrParams &params)
{
  check_position(r0, theta0, params);
  const double a = params.a();
  switch (kind)
  {
    case ObserverKind::ZAMO:
      return ObserverSpec::create(r0, theta0, metric_scalars(r0, theta0, params).omega, params);
    case ObserverKind::Static:
    {
      const double c = std::cos(theta0);
      if (!(r0 * r0 - 2.0 * r0 + a * a * c * c > 0.0))
        throw ErgosphereViolation("static observer at r0 = " + std::to_string(r0)
                                  + " lies inside the ergosphere");
      return ObserverSpec::create(r0, theta0, 0.0, params);
    }
    case ObserverKind::Carter:
      return ObserverSpec::create(r0, theta0, a / (r0 * r0 + a * a), params);
  }
  throw DomainError("unknown observer kind");
}

//--------------------------------------------------------------------------------------------------

ObserverScalars observer_scalars(const ObserverSpec &obs, const KerrParams &params)
{
  const MetricScalars m = metric_scalars(obs.r0(), obs.theta0(), params);
  ObserverScalars s{};
  s.rho2 = m.rho2;
  s.rho = std::sqrt(m.rho2);
  s.delta = m.delta;
  s.sqrt_delta = std::sqrt(m.delta);
  s.A = m.A;
  s.omega_frame = m.omega;
  s.sin_theta = std::sin(obs.theta0());
  s.cos_theta = std::cos(obs.theta0());
  return s;
}

double u_time_component(const ObserverSpec &obs, const KerrParams &params)
{
  const double radicand = timelike_radicand(obs.r0(), obs.theta0(), obs.omega(), params);
  if (!(radicand > 0.0))
    throw TimelikeViolation("four-velocity normalisation radicand " + std::to_string(radicand)
                            + " is not positive");
  const double rho = std::sqrt(metric_scalars(obs.r0(), obs.theta0(), params).rho2);
  return rho / std::sqrt(radicand);
}

Tetrad tetrad(const ObserverSpec &obs, const KerrParams &params)
{
  const ObserverScalars s = observer_scalars(obs, params);
  const double a = params.a();
  const double r0 = obs.r0();
  const double omega = obs.omega();
  const double u0 = u_time_component(obs, params);
  const double s2 = s.sin_theta * s.sin_theta;

  Tetrad e{};
  e.u0 = u0;
  e.e_t = {u0, 0.0, 0.0, u0 * omega};
  e.e_r = {0.0, -s.sqrt_delta / s.rho, 0.0, 0.0};
  e.e_theta = {0.0, 0.0, -1.0 / s.rho, 0.0};
  const double pre = u0 / (s.sin_theta * s.sqrt_delta);
  e.e_phi = {pre * s.A * s2 / s.rho2 * (omega - s.omega_frame), 0.0, 0.0,
             pre * (1.0 - 2.0 * r0 * (1.0 - a * omega * s2) / s.rho2)};
  return e;
}

}  // namespace kerr
