#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kerr/bifurcation.hpp"
#include "kerr/geodesic.hpp"

using namespace kerr;
using doctest::Approx;

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

// H from the inverse metric contracted with p = (-E, p_r, p_theta, L)
double hamiltonian_oracle(const PhaseState &s, double E, double L, const KerrParams &params)
{
  const Mat4 gi = contravariant_metric(s.point.r, s.point.theta, params);
  const Vec4 p{-E, s.p_r, s.p_theta, L};
  double h = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      h += 0.5 * gi[i][j] * p[i] * p[j];
  return h;
}

ConservedSet with_EL(double E, double L)
{
  ConservedSet c;
  c.E = E;
  c.L = L;
  c.lambda = L / E;
  return c;
}

// Null state at (r, theta) with momenta from R and Theta, both signs positive
PhaseState null_state(double r, double theta, double lambda, double eta, const KerrParams &p)
{
  PhaseState s;
  s.point = {0.0, r, theta, 0.0};
  s.p_r = std::sqrt(radial_potential(r, lambda, eta, p)) / delta(r, p.a());
  s.p_theta = std::sqrt(polar_potential(theta, lambda, eta, p));
  return s;
}

}  // namespace

TEST_CASE("Hamiltonian matches the inverse-metric contraction")
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 200; ++n)
  {
    const KerrParams params(u(rng));
    PhaseState s;
    s.point = {0.0, params.horizon() + 0.05 + 20.0 * u(rng), 0.1 + 2.9 * u(rng), 0.0};
    s.p_r = 4.0 * u(rng) - 2.0;
    s.p_theta = 6.0 * u(rng) - 3.0;
    const double E = 0.2 + u(rng);
    const double L = 8.0 * u(rng) - 4.0;
    const double h = hamiltonian(s, with_EL(E, L), params);
    CHECK(h == Approx(hamiltonian_oracle(s, E, L, params)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("Hamiltonian vanishes on null states")
{
  const KerrParams params(0.97);
  const PhaseState s = null_state(5.0, kHalfPi, -0.6, 3.0, params);
  CHECK(std::abs(hamiltonian(s, ConservedSet::from_impact(-0.6, 3.0, 0.97), params)) < 1e-12);

  PhaseState zero;
  zero.point = {0.0, 5.0, 1.0, 0.0};
  CHECK(hamiltonian(zero, with_EL(0.0, 0.0), params) == 0.0);
}

TEST_CASE("Carter integral")
{
  const double a = 0.8;
  const KerrParams params(a);
  PhaseState s;
  s.point = {0.0, 6.0, kHalfPi, 0.0};
  CHECK(carter_integral(s, with_EL(1.0, a), params) == Approx(0.0).scale(1.0));

  // a = 0, p_theta = 0: F = (L / sin)^2 exactly, whatever p_r
  const KerrParams schw(0.0);
  PhaseState t;
  t.point = {0.0, 7.0, 0.6, 0.0};
  t.p_r = 0.3;
  const double L = 2.5;
  CHECK(carter_integral(t, with_EL(1.0, L), schw)
        == Approx(std::pow(L / std::sin(0.6), 2)).epsilon(1e-14));

  // on shell F = Q + (L - aE)^2 = eta + (lambda - a)^2
  const double lambda = 1.3;
  const double eta = 9.0;
  const PhaseState n = null_state(8.0, 1.1, lambda, eta, params);
  const ConservedSet c = ConservedSet::from_impact(lambda, eta, a);
  CHECK(carter_integral(n, c, params) == Approx(c.F).epsilon(1e-12));
  CHECK(c.F == Approx(eta + (lambda - a) * (lambda - a)));
}

TEST_CASE("conserved set constructors agree")
{
  const ConservedSet c = ConservedSet::from_impact(-1.2, 4.0, 0.5, 2.0);
  CHECK(c.L == Approx(-2.4));
  CHECK(c.Q == Approx(16.0));
  const ConservedSet d = ConservedSet::from_momenta(c.E, c.L, c.F, 0.5);
  CHECK(d.lambda == Approx(-1.2));
  CHECK(d.eta == Approx(4.0));
}

TEST_CASE("potentials")
{
  for (double a : {0.0, 0.4, 1.0})
    CHECK(polar_potential(kHalfPi, 1.7, 2.3, KerrParams(a)) == Approx(2.3));
  CHECK(radial_potential(3.0, -2.0, 27.0, KerrParams(1.0)) == Approx(0.0).scale(1.0));
  CHECK(radial_potential(3.0, 0.0, 27.0, KerrParams(0.0)) == Approx(0.0).scale(1.0));

  // derivatives against central differences
  const KerrParams params(0.9);
  const double h = 1e-6;
  for (double r : {1.8, 3.0, 9.0})
  {
    const double fd = (radial_potential(r + h, 0.7, 5.0, params)
                       - radial_potential(r - h, 0.7, 5.0, params))
                      / (2 * h);
    CHECK(radial_potential_derivative(r, 0.7, 5.0, params) == Approx(fd).epsilon(1e-7));
  }
  for (double th : {0.4, 1.0, 2.5})
  {
    const double fd = (polar_potential(th + h, 0.7, 5.0, params)
                       - polar_potential(th - h, 0.7, 5.0, params))
                      / (2 * h);
    CHECK(polar_potential_derivative(th, 0.7, 5.0, params) == Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("equations of motion are Hamilton's equations")
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 50; ++n)
  {
    const KerrParams params(u(rng));
    PhaseState s;
    s.point = {0.0, params.horizon() + 0.2 + 10.0 * u(rng), 0.2 + 2.7 * u(rng), 0.0};
    s.p_r = 2.0 * u(rng) - 1.0;
    s.p_theta = 4.0 * u(rng) - 2.0;
    const double E = 0.5 + u(rng);
    const double L = 6.0 * u(rng) - 3.0;
    const PhaseDerivative d = equations_of_motion(s, with_EL(E, L), params);

    const double h = 1e-5;
    auto H = [&](PhaseState st, double e, double l) { return hamiltonian(st, with_EL(e, l), params); };
    auto shifted = [&](double dr, double dth, double dpr, double dpth)
    {
      PhaseState t = s;
      t.point.r += dr;
      t.point.theta += dth;
      t.p_r += dpr;
      t.p_theta += dpth;
      return t;
    };
    const double dH_dpr = (H(shifted(0, 0, h, 0), E, L) - H(shifted(0, 0, -h, 0), E, L)) / (2 * h);
    const double dH_dpth = (H(shifted(0, 0, 0, h), E, L) - H(shifted(0, 0, 0, -h), E, L)) / (2 * h);
    const double dH_dr = (H(shifted(h, 0, 0, 0), E, L) - H(shifted(-h, 0, 0, 0), E, L)) / (2 * h);
    const double dH_dth = (H(shifted(0, h, 0, 0), E, L) - H(shifted(0, -h, 0, 0), E, L)) / (2 * h);
    const double dH_dL = (H(s, E, L + h) - H(s, E, L - h)) / (2 * h);
    const double dH_dE = (H(s, E + h, L) - H(s, E - h, L)) / (2 * h);

    const double tol = 1e-6;
    CHECK(d.dr == Approx(dH_dpr).epsilon(tol).scale(1.0));
    CHECK(d.dtheta == Approx(dH_dpth).epsilon(tol).scale(1.0));
    CHECK(d.dp_r == Approx(-dH_dr).epsilon(tol).scale(1.0));
    CHECK(d.dp_theta == Approx(-dH_dth).epsilon(tol).scale(1.0));
    CHECK(d.dphi == Approx(dH_dL).epsilon(tol).scale(1.0));
    CHECK(d.dt == Approx(-dH_dE).epsilon(tol).scale(1.0));
  }
}

TEST_CASE("equations of motion special cases")
{
  const KerrParams params(0.6);
  PhaseState s;
  const double lambda = 1.0;
  const double eta = 40.0;
  const std::vector<TurningPoint> roots = turning_points(lambda, eta, params).radial;
  REQUIRE(!roots.empty());
  s.point = {0.0, roots.back().value, 1.2, 0.0};
  s.p_theta = std::sqrt(polar_potential(1.2, lambda, eta, params));
  CHECK(equations_of_motion(s, ConservedSet::from_impact(lambda, eta, 0.6), params).dr == 0.0);

  const KerrParams schw(0.0);
  PhaseState radial;
  radial.point = {0.0, 7.0, kHalfPi, 0.0};
  radial.p_r = -1.0 / (1.0 - 2.0 / 7.0);
  CHECK(equations_of_motion(radial, ConservedSet::from_impact(0.0, 0.0, 0.0), schw).dphi == 0.0);
}

TEST_CASE("Mino-time rates")
{
  // dphi/dsigma and dt/dsigma are rho^2 times dphi/dtau and dt/dtau on a null state
  const KerrParams params(0.75);
  const double lambda = -2.0;
  const double eta = 15.0;
  const PhaseState s = null_state(6.0, 1.0, lambda, eta, params);
  const PhaseDerivative d = equations_of_motion(s, ConservedSet::from_impact(lambda, eta, 0.75), params);
  const double rho2 = metric_scalars(6.0, 1.0, params).rho2;
  CHECK(dphi_dsigma(6.0, 1.0, lambda, params) == Approx(rho2 * d.dphi).epsilon(1e-12));
  CHECK(dt_dsigma(6.0, 1.0, lambda, params) == Approx(rho2 * d.dt).epsilon(1e-12));
}

TEST_CASE("radial turning points")
{
  const double a = 0.97;
  const KerrParams params(a);
  const double lambda = -0.6;
  double r_c = 0.0;
  REQUIRE(critical_radius_for_lambda(lambda, params, r_c));
  const double eta_c = sigma_r_eta(r_c, a);

  CHECK(turning_points(lambda, eta_c - 1.0, params).radial.empty());
  const auto above = turning_points(lambda, eta_c + 1.0, params).radial;
  REQUIRE(above.size() == 2);
  for (const TurningPoint &t : above)
  {
    CHECK(t.value > params.horizon());
    CHECK(std::abs(radial_potential(t.value, lambda, eta_c + 1.0, params)) < 1e-8);
    CHECK_FALSE(t.critical);
  }
  CHECK(above[0].value < r_c);
  CHECK(above[1].value > r_c);

  const auto on = turning_points(lambda, eta_c, params).radial;
  REQUIRE(on.size() == 1);
  CHECK(on[0].critical);
  CHECK(on[0].value == Approx(r_c).epsilon(1e-6));
}

TEST_CASE("polar turning points")
{
  const KerrParams params(0.97);
  const auto eq = turning_points(2.0, 0.0, params).polar;
  REQUIRE(eq.size() == 1);
  CHECK(eq[0].value == Approx(kHalfPi));
  CHECK(eq[0].critical);

  // eta > 0 with lambda != 0: two roots symmetric about the equator
  const auto two = turning_points(3.0, 4.0, params).polar;
  REQUIRE(two.size() == 2);
  CHECK(two[0].value + two[1].value == Approx(std::numbers::pi));
  CHECK(polar_potential(two[0].value, 3.0, 4.0, params) == Approx(0.0).scale(1.0));

  // lambda = 0, eta > 0 passes over the poles
  CHECK(turning_points(0.0, 4.0, params).polar.empty());
}
