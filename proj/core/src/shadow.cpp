// kerrshadow shadow boundary seen by a stationary observer

// C++ headers
#include <algorithm>  // clamp, max
#include <cmath>      // abs, acos, atan, atan2, cos, fmod, hypot, sin, sqrt, tan
#include <iomanip>    // setprecision
#include <limits>     // numeric_limits
#include <numbers>    // pi
#include <ostream>    // ostream
#include <string>     // to_string

// kerrshadow headers
#include "kerr/bifurcation.hpp"
#include "kerr/errors.hpp"
#include "kerr/shadow.hpp"
#include "roots.hpp"

namespace kerr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSlack = 1.0e-12;

double wrap_two_pi(double x)
{
  double y = std::fmod(x, 2.0 * kPi);
  if (y < 0.0)
    y += 2.0 * kPi;
  return y;
}

void require_shadow_spin(const KerrParams &params)
{
  if (params.a() < kMinShadowSpin)
    throw InvalidSpin("shadow boundary requires a >= " + std::to_string(kMinShadowSpin)
                      + ", got a = " + std::to_string(params.a()));
}

// Lower end of the usable spherical-orbit range; lambda(r_c) and eta(r_c) are 0/0 at r_c = 1
double lower_orbit_radius(const KerrParams &params)
{
  return std::max(photon_ring_radii(params).r1, 1.0 + 1.0e-9);
}

// Cosine-spaced points on [lo, hi] including both ends
void cosine_spaced(double lo, double hi, std::size_t n, std::vector<double> &out)
{
  if (n < 2)
  {
    out.push_back(lo);
    return;
  }
  for (std::size_t k = 0; k < n; ++k)
  {
    const double f = 0.5 - 0.5 * std::cos(kPi * static_cast<double>(k) / static_cast<double>(n - 1));
    out.push_back(k == 0 ? lo : (k + 1 == n ? hi : lo + (hi - lo) * f));
  }
}

}  // namespace

//--------------------------------------------------------------------------------------------------

PlanePoint stereographic(const DirectionAngles &angles)
{
  if (!(angles.alpha < kPi))
    throw DomainError("stereographic projection undefined at the pole alpha = pi");
  const double t = 2.0 * std::tan(0.5 * angles.alpha);
  return {t * std::sin(angles.beta), t * std::cos(angles.beta)};
}

DirectionAngles inverse_stereographic(const PlanePoint &point) noexcept
{
  const double rho = std::hypot(point.X, point.Y);
  return {2.0 * std::atan(0.5 * rho), wrap_two_pi(std::atan2(point.X, point.Y))};
}

//--------------------------------------------------------------------------------------------------

double theta_star(double r_c, const ObserverSpec &obs, const KerrParams &params)
{
  const double a = params.a();
  const double lambda = sigma_r_lambda(r_c, a);
  const double eta = sigma_r_eta(r_c, a);
  const double s = std::sin(obs.theta0());
  const double c = std::cos(obs.theta0());
  return eta + c * c * (a * a - lambda * lambda / (s * s));
}

ThetaStarRoots theta_star_roots(const ObserverSpec &obs, const KerrParams &params)
{
  if (!(params.a() > 0.0))
    throw InvalidSpin("Theta* roots require a > 0");
  const double lo = lower_orbit_radius(params);
  const double hi = photon_ring_radii(params).r2;
  auto f = [&](double r_c) { return theta_star(r_c, obs, params); };

  // lambda(r_c) = 0 gives Theta* = eta + a^2 cos^2(theta0) > 0, so it splits the two roots
  double r_mid = 0.0;
  if (!critical_radius_for_lambda(0.0, params, r_mid))
    throw DomainError("no polar spherical orbit for a = " + std::to_string(params.a()));

  auto root = [&](double end, double inner)
  {
    const double f_end = f(end);
    if (f_end >= 0.0 || std::abs(f_end) <= kSlack)
      return end;
    return detail::bisect(f, std::min(end, inner), std::max(end, inner));
  };
  return {root(lo, r_mid), root(hi, r_mid)};
}

//--------------------------------------------------------------------------------------------------

namespace {

// at_root: r_c is one of r1*, r2*, where Theta* vanishes by construction
BoundaryAngles angles_at(double r_c, const ObserverSpec &obs, const KerrParams &params, bool at_root)
{
  const double a = params.a();
  const double r0 = obs.r0();
  const double omega = obs.omega();
  const ObserverScalars s = observer_scalars(obs, params);
  const double u0 = u_time_component(obs, params);
  const double lambda = sigma_r_lambda(r_c, a);
  const double eta = sigma_r_eta(r_c, a);
  const double z = separatrix_Z(r_c, params);

  const double q0 = r0 * r0 + 2.0 * r_c * r0 - 3.0 * r_c * r_c + z * z;
  if (q0 < 0.0)
    throw DomainError("R(r0) < 0: observer at r0 = " + std::to_string(r0)
                      + " is not reached from the orbit r_c = " + std::to_string(r_c));
  // the sign of (r0 - r_c) is carried by the choice between alpha = B_alpha and pi - B_alpha
  const double arg = std::abs(r0 - r_c) * std::sqrt(q0)
                     / (s.rho * u0 * (1.0 - lambda * omega) * s.sqrt_delta);
  if (!(arg <= 1.0 + kSlack))
    throw DomainError("arccos argument " + std::to_string(arg) + " exceeds 1 at r_c = "
                      + std::to_string(r_c));

  const double s2 = s.sin_theta * s.sin_theta;
  const double polar = s.cos_theta * s.cos_theta * lambda * lambda / s2;
  double th = eta + s.cos_theta * s.cos_theta * a * a - polar;
  // eta(r_c) carries a 1/a^2 factor, so its rounding error grows like eps/a^2
  const double noise = 64.0 * std::numeric_limits<double>::epsilon()
                       * std::max({1.0, std::abs(eta), polar}) * std::max(1.0, 1.0 / (a * a));
  if (!at_root && th < -noise)
    throw DomainError("Theta*(r_c) = " + std::to_string(th) + " < 0 at r_c = "
                      + std::to_string(r_c) + ": outside [r1*, r2*]");
  th = at_root ? 0.0 : std::max(th, 0.0);

  const double num = u0 * (s.rho2 * (lambda - omega * (r0 * r0 + a * a) * s2)
                           + 2.0 * r0 * (1.0 - a * omega * s2) * (a * s2 - lambda));
  const double den = s.rho * s.sin_theta * s.sqrt_delta * std::sqrt(th);
  return {std::acos(std::min(arg, 1.0)), std::atan2(num, den)};
}

}  // namespace

BoundaryAngles boundary_angles(double r_c, const ObserverSpec &obs, const KerrParams &params)
{
  return angles_at(r_c, obs, params, false);
}

ShadowCurve shadow_curve(const ObserverSpec &obs, const KerrParams &params,
                         std::size_t samples_per_branch)
{
  require_shadow_spin(params);
  ShadowCurve curve;
  const ThetaStarRoots roots = theta_star_roots(obs, params);
  curve.r1_star = roots.r1_star;
  curve.r2_star = roots.r2_star;
  const double r0 = obs.r0();

  std::vector<double> grid;
  const std::size_t n = std::max<std::size_t>(samples_per_branch, 2);
  if (r0 > roots.r2_star)
  {
    curve.statement_case = 1;
    cosine_spaced(roots.r1_star, roots.r2_star, n, grid);
  }
  else if (r0 < roots.r1_star)
  {
    curve.statement_case = 2;
    cosine_spaced(roots.r1_star, roots.r2_star, n, grid);
  }
  else
  {
    curve.statement_case = 3;
    const double f = (r0 - roots.r1_star) / (roots.r2_star - roots.r1_star);
    const std::size_t n_low = std::clamp<std::size_t>(
        static_cast<std::size_t>(f * static_cast<double>(n)), 2, n);
    const std::size_t n_high = std::max<std::size_t>(n - n_low + 1, 2);
    cosine_spaced(roots.r1_star, r0, n_low, grid);
    cosine_spaced(r0, roots.r2_star, n_high, grid);
  }

  struct Point
  {
    double r_c;
    BoundaryAngles b;
    int form;
  };
  std::vector<Point> points;
  points.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
  {
    const double r_c = grid[k];
    // the seam r_c = r0 appears twice in case 3, once per form
    const bool seam_second = k > 0 && grid[k - 1] == r_c;
    const int form = (r_c < r0 || (r_c == r0 && !seam_second)) ? 1 : 2;
    if (k > 0 && grid[k - 1] == r_c && curve.statement_case != 3)
      continue;
    const bool at_root = r_c == roots.r1_star || r_c == roots.r2_star;
    points.push_back({r_c, angles_at(r_c, obs, params, at_root), form});
  }

  auto emit = [&](const Point &p, int branch)
  {
    ShadowSample s{};
    s.r_c = p.r_c;
    s.form = p.form;
    s.branch = branch;
    s.alpha = p.form == 1 ? p.b.B_alpha : kPi - p.b.B_alpha;
    s.beta = wrap_two_pi(branch == 0 ? kPi + p.b.B_beta : 2.0 * kPi - p.b.B_beta);
    const PlanePoint xy = stereographic({s.alpha, s.beta});
    s.X = xy.X;
    s.Y = xy.Y;
    curve.samples.push_back(s);
  };
  for (const Point &p : points)
    emit(p, 0);
  for (auto it = points.rbegin(); it != points.rend(); ++it)
    emit(*it, 1);
  return curve;
}

void write_shadow_csv(std::ostream &out, const ShadowCurve &curve)
{
  out << "r_c,alpha,beta,X,Y,case\n" << std::setprecision(17);
  for (const ShadowSample &s : curve.samples)
    out << s.r_c << ',' << s.alpha << ',' << s.beta << ',' << s.X << ',' << s.Y << ',' << s.form
        << '\n';
}

//--------------------------------------------------------------------------------------------------

RayInit ray_from_angles(const DirectionAngles &angles, const ObserverSpec &obs,
                        const KerrParams &params)
{
  const Tetrad e = tetrad(obs, params);
  const double n1 = std::sin(angles.alpha) * std::cos(angles.beta);
  const double n2 = std::sin(angles.alpha) * std::sin(angles.beta);
  const double n3 = std::cos(angles.alpha);
  Vec4 w{};
  for (int i = 0; i < 4; ++i)
    w[i] = -e.e_t[i] + n1 * e.e_theta[i] + n2 * e.e_phi[i] + n3 * e.e_r[i];
  const Mat4 g = covariant_metric(obs.r0(), obs.theta0(), params);
  Vec4 p = lower_index(g, w);
  const double W = 1.0 / -p[0];
  for (double &x : p)
    x *= W;

  RayInit out;
  out.W = W;
  out.state.point = {0.0, obs.r0(), obs.theta0(), obs.phi0()};
  out.state.p_r = p[1];
  out.state.p_theta = p[2];
  const double a = params.a();
  const double s = std::sin(obs.theta0());
  const double L = p[3];
  const double k = a * s - L / s;
  out.conserved = ConservedSet::from_momenta(1.0, L, p[2] * p[2] + k * k, a);
  return out;
}

DirectionAngles angles_from_ray(const PhaseState &state, const ConservedSet &c,
                                const ObserverSpec &obs, const KerrParams &params)
{
  const ObserverScalars s = observer_scalars(obs, params);
  const Tetrad e = tetrad(obs, params);
  const double denom = 1.0 - obs.omega() * c.lambda;
  if (std::abs(denom) < 1.0e-14)
    throw DomainError("ray direction degenerate: 1 - Omega lambda = 0");
  const double dr_dtau = s.delta * state.p_r / s.rho2;
  const double dtheta_dtau = state.p_theta / s.rho2;
  const double scale = e.u0 * c.E * denom;
  const double n3 = s.rho * dr_dtau / (scale * s.sqrt_delta);
  const double n1 = s.rho * dtheta_dtau / scale;
  // N_i = g(w, e_i) / g(w, e_t) with g(w, e_t) = -u0 E (1 - Omega lambda)
  const double n2 = (-c.E * e.e_phi[0] + c.L * e.e_phi[3]) / -scale;
  return {std::atan2(std::hypot(n1, n2), n3), wrap_two_pi(std::atan2(n2, n1))};
}

}  // namespace kerr
