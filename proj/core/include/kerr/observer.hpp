// kerrshadow stationary observers and their orthonormal tetrads
//
// A stationary observer sits at fixed (r0, theta0) and moves as phi = Omega t + phi0.

#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "kerr/metric.hpp"

namespace kerr {

// Rejects angular velocities closer than this to either end of (Omega_-, Omega_+)
inline constexpr double kOmegaMargin = 1.0e-12;

struct OmegaBounds
{
  double minus;
  double plus;
};

OmegaBounds omega_bounds(double r0, double theta0, const KerrParams &params);

enum class ObserverKind
{
  ZAMO,
  Static,
  Carter,
};

std::string_view to_string(ObserverKind kind) noexcept;
std::optional<ObserverKind> observer_kind_from_string(std::string_view name) noexcept;

class ObserverSpec
{
 public:
  // Throws DomainError for r0 <= r+ or theta0 outside (0, pi), TimelikeViolation for Omega
  // outside the admissible interval
  static ObserverSpec create(double r0, double theta0, double omega, const KerrParams &params,
                             double phi0 = 0.0);

  double r0() const noexcept { return r0_; }
  double theta0() const noexcept { return theta0_; }
  double omega() const noexcept { return omega_; }
  double phi0() const noexcept { return phi0_; }

 private:
  ObserverSpec(double r0, double theta0, double omega, double phi0)
      : r0_(r0), theta0_(theta0), omega_(omega), phi0_(phi0)
  {
  }

  double r0_;
  double theta0_;
  double omega_;
  double phi0_;
};

// Static requires r0^2 - 2 r0 + a^2 cos^2(theta0) > 0 and throws ErgosphereViolation otherwise
ObserverSpec named_observer(ObserverKind kind, double r0, double theta0, const KerrParams &params);

// Metric quantities at the observer's position
struct ObserverScalars
{
  double rho2;
  double rho;
  double delta;
  double sqrt_delta;
  double A;
  double omega_frame;  // omega_0 = 2 r0 a / A0
  double sin_theta;
  double cos_theta;
};

ObserverScalars observer_scalars(const ObserverSpec &obs, const KerrParams &params);

// u0 = dt/dtau = rho0 (Delta0 - a^2 sin^2 + Omega (4 a r0 - A0 Omega) sin^2)^(-1/2)
double u_time_component(const ObserverSpec &obs, const KerrParams &params);

// Legs in coordinate components (t, r, theta, phi). e_r and e_theta point towards decreasing
// r and theta.
struct Tetrad
{
  Vec4 e_t;
  Vec4 e_r;
  Vec4 e_theta;
  Vec4 e_phi;
  double u0;

  // rows in the order (t, r, theta, phi)
  std::array<Vec4, 4> legs() const { return {e_t, e_r, e_theta, e_phi}; }
};

Tetrad tetrad(const ObserverSpec &obs, const KerrParams &params);

}  // namespace kerr
