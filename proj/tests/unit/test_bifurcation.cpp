#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "kerr/bifurcation.hpp"
#include "kerr/errors.hpp"
#include "kerr/geodesic.hpp"
#include "kerr/integrator.hpp"

using namespace kerr;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Expanded quartic R(r) = r^4 + (a^2 - l^2 - eta) r^2 + 2 (eta + (l - a)^2) r - a^2 eta
double R(double r, double a, double l, double eta)
{
  return r * r * r * r + (a * a - l * l - eta) * r * r + 2.0 * (eta + (l - a) * (l - a)) * r
         - a * a * eta;
}
double dR(double r, double a, double l, double eta)
{
  return 4.0 * r * r * r + 2.0 * (a * a - l * l - eta) * r + 2.0 * (eta + (l - a) * (l - a));
}

double theta_pot(double th, double a, double l, double eta)
{
  const double c = std::cos(th);
  const double s = std::sin(th);
  return eta + c * c * (a * a - l * l / (s * s));
}

bool feasible_on_grid(double a, double l, double eta)
{
  for (int k = 1; k < 20000; ++k)
    if (theta_pot(kPi * k / 20000.0, a, l, eta) >= 0.0)
      return true;
  return false;
}

// Equatorial circular photon orbit: eta = 0 and R = R' = 0 in (r, lambda), by Newton iteration
// continued in a from the Schwarzschild values (3, +-sqrt 27)
std::array<double, 2> newton_ring(double a_target, double sign)
{
  double r = 3.0;
  double l = sign * std::sqrt(27.0);
  const int stages = 200;
  for (int k = 1; k <= stages; ++k)
  {
    const double a = a_target * k / stages;
    for (int it = 0; it < 100; ++it)
    {
      const double f1 = R(r, a, l, 0.0);
      const double f2 = dR(r, a, l, 0.0);
      const double j11 = dR(r, a, l, 0.0);
      const double j12 = -2.0 * l * r * r + 4.0 * (l - a) * r;
      const double j21 = 12.0 * r * r + 2.0 * (a * a - l * l);
      const double j22 = -4.0 * l * r + 4.0 * (l - a);
      const double det = j11 * j22 - j12 * j21;
      if (det == 0.0)
        break;
      const double dr = (f1 * j22 - f2 * j12) / det;
      const double dl = (j11 * f2 - j21 * f1) / det;
      r -= dr;
      l -= dl;
      if (std::abs(dr) + std::abs(dl) < 1e-15)
        break;
    }
  }
  return {r, l};
}

}  // namespace

TEST_CASE("photon ring radii")
{
  const PhotonRingRadii s = photon_ring_radii(KerrParams(0.0));
  CHECK(s.r1 == Approx(3.0).epsilon(1e-15));
  CHECK(s.r2 == Approx(3.0).epsilon(1e-15));
  const PhotonRingRadii e = photon_ring_radii(KerrParams(1.0));
  CHECK(e.r1 == Approx(1.0).epsilon(1e-15));
  CHECK(e.r2 == Approx(4.0).epsilon(1e-15));

  for (double a : {0.1, 0.5, 0.97})
  {
    const PhotonRingRadii p = photon_ring_radii(KerrParams(a));
    CHECK(std::abs(p.r1 - newton_ring(a, +1.0)[0]) < 1e-10);
    CHECK(std::abs(p.r2 - newton_ring(a, -1.0)[0]) < 1e-10);
  }
  const PhotonRingRadii k = photon_ring_radii(KerrParams(0.97));
  CHECK(k.r1 == Approx(1.2956604).epsilon(1e-7));
  CHECK(k.r2 == Approx(3.9732587).epsilon(1e-7));
}

TEST_CASE("spherical orbit curve")
{
  const CriticalCurvePoint p = sigma_r(3.0, KerrParams(1.0));
  CHECK(p.lambda == Approx(-2.0));
  CHECK(p.eta == Approx(27.0));
  CHECK(R(3.0, 1.0, p.lambda, p.eta) == Approx(0.0).scale(1.0));
  CHECK(dR(3.0, 1.0, p.lambda, p.eta) == Approx(0.0).scale(1.0));

  const KerrParams params(0.97);
  const PhotonRingRadii rings = photon_ring_radii(params);
  CHECK(std::abs(sigma_r(rings.r1, params).eta) < 1e-10);
  CHECK(std::abs(sigma_r(rings.r2, params).eta) < 1e-10);
  // delta_1 prograde, delta_2 retrograde
  CHECK(sigma_r(rings.r1, params).lambda > 0.0);
  CHECK(sigma_r(rings.r2, params).lambda < 0.0);
  CHECK(sigma_r(rings.r1, params).lambda == Approx(newton_ring(0.97, 1.0)[1]).epsilon(1e-9));

  CHECK_THROWS_AS(sigma_r(3.0, KerrParams(0.0)), InvalidSpin);
  CHECK_THROWS_AS(sigma_r(rings.r2 + 0.1, params), DomainError);
  CHECK_THROWS_AS(sigma_r(rings.r1 - 0.01, params), DomainError);

  for (const CriticalCurvePoint &q : sample_sigma_r(params, 512))
  {
    const double scale = std::max(1.0, std::pow(q.coordinate, 4));
    CHECK(std::abs(R(q.coordinate, 0.97, q.lambda, q.eta)) < 1e-10 * scale);
    CHECK(std::abs(dR(q.coordinate, 0.97, q.lambda, q.eta)) < 1e-10 * scale);
    CHECK(q.branch == CriticalBranch::SigmaR);
  }
}

TEST_CASE("polar critical curves")
{
  const double a = 0.97;
  const KerrParams params(a);
  for (int sign : {+1, -1})
  {
    const CriticalCurvePoint eq = sigma_theta(kPi / 2, sign, params);
    CHECK(eq.lambda == Approx(sign * a));
    CHECK(eq.eta == Approx(0.0).scale(1.0));
    const CriticalCurvePoint axis = sigma_theta(0.0, sign, params);
    CHECK(axis.lambda == Approx(0.0).scale(1.0));
    CHECK(axis.eta == Approx(-a * a));
    const CriticalCurvePoint q = sigma_theta(kPi / 4, sign, params);
    CHECK(q.lambda == Approx(sign * 0.485));
    CHECK(q.eta == Approx(-0.235225));

    const auto curve = sample_sigma_theta(params, sign, 512);
    CHECK(curve.front().lambda == Approx(0.0).scale(1.0));
    CHECK(curve.front().eta == Approx(-a * a));
    for (const CriticalCurvePoint &c : curve)
    {
      if (c.coordinate <= 0.0)
        continue;  // the axis limit has no interior theta_c
      const double th = c.coordinate;
      const double h = 1e-6;
      CHECK(std::abs(theta_pot(th, a, c.lambda, c.eta)) < 1e-10);
      const double d = (theta_pot(th + h, a, c.lambda, c.eta) - theta_pot(th - h, a, c.lambda, c.eta))
                       / (2 * h);
      CHECK(std::abs(d) < 1e-8);
      CHECK(std::abs(polar_potential_derivative(th, c.lambda, c.eta, params)) < 1e-10);
    }
  }
  const CriticalCurvePoint zero = sigma_theta0(1.7);
  CHECK(zero.eta == 0.0);
  CHECK(zero.lambda == 1.7);
}

TEST_CASE("spurious critical branch is rejected")
{
  const double a = 0.97;
  const KerrParams params(a);
  for (double r_c : {1.5, 2.0, 3.0, 3.9})
  {
    const ImpactPair p = spurious_critical_branch(r_c, params);
    CHECK(std::abs(R(r_c, a, p.lambda, p.eta)) < 1e-10 * std::pow(r_c, 4));
    CHECK(std::abs(dR(r_c, a, p.lambda, p.eta)) < 1e-10 * std::pow(r_c, 4));
    CHECK_FALSE(feasible_on_grid(a, p.lambda, p.eta));
    CHECK_FALSE(polar_feasible(p.lambda, p.eta, params));
    CHECK(classify(p.lambda, p.eta, 10.0, params).kind == TrajectoryKind::Forbidden);
  }
}

TEST_CASE("polar feasibility matches a brute-force theta grid")
{
  const double a = 0.97;
  const KerrParams params(a);
  CHECK_FALSE(polar_feasible(0.0, -a * a - 0.1, params));
  CHECK_FALSE(feasible_on_grid(a, 0.0, -a * a - 0.1));
  CHECK(polar_feasible(5.0, 0.5, params));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ul(-2.0, 2.0);
  std::uniform_real_distribution<double> ue(-1.2, 0.5);
  int checked = 0;
  for (int n = 0; n < 2000; ++n)
  {
    const double l = ul(rng);
    const double eta = ue(rng);
    // skip a thin band around the boundary where the grid resolution decides
    const double margin = std::abs(l) < a ? eta + (a - std::abs(l)) * (a - std::abs(l)) : eta;
    if (std::abs(margin) < 1e-3 || std::abs(std::abs(l) - a) < 1e-3)
      continue;
    CHECK(polar_feasible(l, eta, params) == feasible_on_grid(a, l, eta));
    ++checked;
  }
  CHECK(checked > 1500);
}

TEST_CASE("feasibility raster")
{
  const double a = 0.97;
  const KerrParams params(a);
  const ScanGrid grid;
  const FeasibilityRaster raster = diagram_scan(params, grid);
  REQUIRE(raster.feasible.size() == grid.n_lambda * grid.n_eta);
  for (std::size_t j = 0; j < grid.n_eta; ++j)
    for (std::size_t i = 0; i < grid.n_lambda; ++i)
    {
      const double l = raster.lambda_at(i);
      const double eta = raster.eta_at(j);
      CHECK(raster.at(i, j) == polar_feasible(l, eta, params));
      if (eta >= 0.0)
        CHECK(raster.at(i, j));
    }
  // below eta = 0 only the wedge between Sigma+ and Sigma- survives
  std::size_t below = 0;
  for (std::size_t j = 0; j < grid.n_eta; ++j)
    for (std::size_t i = 0; i < grid.n_lambda; ++i)
      if (raster.eta_at(j) < 0.0 && raster.at(i, j))
      {
        ++below;
        CHECK(std::abs(raster.lambda_at(i)) < a);
        CHECK(raster.eta_at(j) >= -a * a);
      }
  CHECK(below > 0);

  std::ostringstream csv;
  write_raster_csv(csv, raster);
  CHECK(csv.str().rfind("lambda,eta,feasible\n", 0) == 0);
}

TEST_CASE("classification")
{
  const double a = 0.97;
  const KerrParams params(a);
  const double lambda = -0.6;
  double r_c = 0.0;
  REQUIRE(critical_radius_for_lambda(lambda, params, r_c));
  const double eta_c = sigma_r_eta(r_c, a);

  CHECK(classify(lambda, eta_c - 2.0, 10.0, params).kind == TrajectoryKind::HorizonInfinity);
  CHECK(classify(lambda, eta_c + 2.0, params.horizon() + 1e-3, params).kind
        == TrajectoryKind::HorizonHorizon);
  CHECK(classify(lambda, eta_c + 2.0, 20.0, params).kind == TrajectoryKind::InfinityInfinity);
  CHECK(classify(lambda, eta_c + 2.0, r_c, params).kind == TrajectoryKind::Forbidden);
  CHECK(classify(lambda, eta_c, 10.0, params).kind == TrajectoryKind::SphericalCritical);
  CHECK(classify(0.0, 27.0, 10.0, KerrParams(0.0)).kind == TrajectoryKind::SphericalCritical);
  CHECK(classify(0.5, -0.1, 10.0, params).vortical);
  CHECK_THROWS_AS(classify(0.0, 1.0, 1.0, params), DomainError);
  CHECK(to_string(TrajectoryKind::HorizonInfinity) == "horizon/infinity");
}

TEST_CASE("classification agrees with integration")
{
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  int kinds[3] = {0, 0, 0};
  while (checked < 100)
  {
    const KerrParams params(0.1 + 0.85 * u(rng));
    const double a = params.a();
    const double lambda = -6.0 + 12.0 * u(rng);
    const double eta = 40.0 * u(rng) * u(rng);
    const double r0 = params.horizon() + 0.02 + 15.0 * std::pow(u(rng), 3);
    const double theta0 = 0.3 + 2.5 * u(rng);
    if (radial_potential(r0, lambda, eta, params) <= 0.0
        || polar_potential(theta0, lambda, eta, params) < 0.0)
      continue;
    // stay clear of the measure-zero critical level, where the outcome is decided by rounding
    double r_c = 0.0;
    if (critical_radius_for_lambda(lambda, params, r_c)
        && std::abs(eta - sigma_r_eta(r_c, a)) < 1e-2 * std::max(1.0, eta))
      continue;
    const TrajectoryClass cls = classify(lambda, eta, r0, params);
    REQUIRE(cls.kind != TrajectoryKind::Forbidden);
    REQUIRE(cls.kind != TrajectoryKind::SphericalCritical);

    const ConservedSet c = ConservedSet::from_impact(lambda, eta, a);
    PhaseState s;
    s.point = {0.0, r0, theta0, 0.0};
    s.p_r = std::sqrt(radial_potential(r0, lambda, eta, params)) / delta(r0, a);
    s.p_theta = std::sqrt(polar_potential(theta0, lambda, eta, params));
    IntegratorControls forward;
    forward.record = false;
    IntegratorControls backward = forward;
    backward.direction = -1;
    const TerminationReason f = integrate(s, c, params, forward).reason;
    const TerminationReason b = integrate(s, c, params, backward).reason;
    const int horizon = (f == TerminationReason::HorizonReached) + (b == TerminationReason::HorizonReached);
    const int escaped = (f == TerminationReason::Escaped) + (b == TerminationReason::Escaped);
    switch (cls.kind)
    {
      case TrajectoryKind::HorizonInfinity:
        CHECK((horizon == 1 && escaped == 1));
        ++kinds[0];
        break;
      case TrajectoryKind::HorizonHorizon:
        CHECK(horizon == 2);
        ++kinds[1];
        break;
      case TrajectoryKind::InfinityInfinity:
        CHECK(escaped == 2);
        ++kinds[2];
        break;
      default:
        break;
    }
    ++checked;
  }
  CHECK(kinds[0] > 0);
  CHECK(kinds[1] > 0);
  CHECK(kinds[2] > 0);
}

TEST_CASE("separatrix closed form")
{
  const double a = 0.97;
  const KerrParams params(a);
  const PhotonRingRadii rings = photon_ring_radii(params);
  for (double f : {0.1, 0.5, 0.9})
  {
    const double r_c = rings.r1 + f * (rings.r2 - rings.r1);
    CHECK(separatrix_r(0.0, 10.0, r_c, params) == Approx(10.0).epsilon(1e-15));
    CHECK(separatrix_r(40.0, 10.0, r_c, params) == Approx(r_c).epsilon(1e-12));
    CHECK(separatrix_r(1.0, r_c, r_c, params) == r_c);

    // R = (r - r_c)^2 (r^2 + 2 r_c r - 3 r_c^2 + Z^2)
    const double z = separatrix_Z(r_c, params);
    const CriticalCurvePoint p = sigma_r(r_c, params);
    for (double r : {1.5, 2.5, 7.0})
      CHECK(R(r, a, p.lambda, p.eta)
            == Approx((r - r_c) * (r - r_c) * (r * r + 2 * r_c * r - 3 * r_c * r_c + z * z)));

    // monotone approach and (dr/dsigma)^2 = R by central differences
    double prev = 10.0;
    for (double s = 0.05; s < 4.0; s += 0.05)
    {
      const double r = separatrix_r(s, 10.0, r_c, params);
      CHECK(r < prev);
      CHECK(r > r_c);
      prev = r;
      const double h = 1e-5;
      const double d = (separatrix_r(s + h, 10.0, r_c, params) - separatrix_r(s - h, 10.0, r_c, params))
                       / (2 * h);
      const double rr = R(r, a, p.lambda, p.eta);
      CHECK(std::abs(d * d - rr) < 1e-6 * std::abs(rr) + 1e-11);
    }
    // from inside the orbit the separatrix climbs towards r_c
    const double inner = 0.5 * (params.horizon() + r_c);
    CHECK(separatrix_r(2.0, inner, r_c, params) > inner);
    CHECK(separatrix_r(2.0, inner, r_c, params) < r_c);
  }
}

TEST_CASE("curve CSV export")
{
  std::ostringstream out;
  write_curve_csv(out, sample_sigma_r(KerrParams(0.97), 4));
  CHECK(out.str().rfind("r_c,lambda,eta,branch\n", 0) == 0);
  CHECK(out.str().find("sigma_r") != std::string::npos);
}
