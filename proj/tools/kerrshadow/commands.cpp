// kerrshadow subcommands

#include "kerrshadow/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "kerr/bifurcation.hpp"
#include "kerr/dormand_prince.hpp"
#include "kerr/errors.hpp"
#include "kerr/geodesic.hpp"
#include "kerr/ppm.hpp"
#include "kerr/raytracer.hpp"
#include "kerr/shadow.hpp"

namespace kerrshadow {

namespace {

// Domain errors raised while checking preconditions are user errors
template <class F>
auto validated(F &&f)
{
  try
  {
    return f();
  }
  catch (const kerr::Error &e)
  {
    throw ValidationError(e.what());
  }
}

kerr::KerrParams spin(const RunConfig &c)
{
  return validated([&] { return kerr::KerrParams(c.a); });
}

kerr::ObserverSpec observer(const RunConfig &c, const kerr::KerrParams &params)
{
  return validated(
      [&]
      {
        const ObserverBlock &o = c.observer;
        if (o.kind)
        {
          const kerr::ObserverSpec named = kerr::named_observer(*o.kind, o.r0, o.theta0, params);
          return kerr::ObserverSpec::create(o.r0, o.theta0, named.omega(), params, o.phi0);
        }
        if (!o.omega)
          throw ValidationError("observer needs either observer.omega or observer.kind");
        return kerr::ObserverSpec::create(o.r0, o.theta0, *o.omega, params, o.phi0);
      });
}

std::ofstream open_output(const RunConfig &c, const std::string &name, bool binary = false)
{
  std::error_code ec;
  std::filesystem::create_directories(c.output.dir, ec);
  const std::filesystem::path path = c.output_path(name);
  std::ofstream out(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
  if (!out)
    throw kerr::Error("cannot open " + path.string() + " for writing");
  return out;
}

void write_observer_comment(std::ostream &out, const RunConfig &c, const kerr::ObserverSpec &obs)
{
  out << std::setprecision(17) << "# a=" << c.a << " r0=" << obs.r0() << " theta0=" << obs.theta0()
      << " omega=" << obs.omega() << " phi0=" << obs.phi0() << '\n';
}

// Half-width of a window holding the whole shadow with a 25% margin
double fitted_extent(const RunConfig &c, const kerr::ObserverSpec &obs,
                     const kerr::KerrParams &params, const kerr::ShadowCurve *curve)
{
  double half = 0.0;
  const double aspect = static_cast<double>(c.image.width) / c.image.height;
  if (curve && !curve->samples.empty())
  {
    for (const kerr::ShadowSample &s : curve->samples)
      half = std::max({half, std::abs(s.X), std::abs(s.Y) * aspect});
  }
  else
  {
    // nearly static Schwarzschild estimate: sin(alpha) = sqrt(27 (1 - 2/r0)) / r0
    const double r0 = obs.r0();
    const double s = std::min(1.0, std::sqrt(27.0 * std::max(0.0, 1.0 - 2.0 / r0)) / r0);
    double alpha = std::asin(s);
    if (r0 < 3.0)
      alpha = M_PI - alpha;
    half = 2.0 * std::tan(0.5 * std::min(alpha, 3.0)) * aspect;
  }
  (void)params;
  return 1.25 * half;
}

}  // namespace

//--------------------------------------------------------------------------------------------------

void cmd_shadow(const RunConfig &c, std::ostream &log)
{
  const kerr::KerrParams params = spin(c);
  const kerr::ObserverSpec obs = observer(c, params);
  if (c.a < kerr::kMinShadowSpin)
    throw ValidationError("shadow boundary needs a >= " + std::to_string(kerr::kMinShadowSpin));

  const kerr::ShadowCurve curve = kerr::shadow_curve(obs, params, c.shadow_samples);
  std::ofstream out = open_output(c, c.output.shadow);
  write_observer_comment(out, c, obs);
  kerr::write_shadow_csv(out, curve);
  log << "shadow: case " << curve.statement_case << ", r1*=" << curve.r1_star
      << ", r2*=" << curve.r2_star << ", " << curve.samples.size() << " samples -> "
      << c.output_path(c.output.shadow).string() << '\n';
}

void cmd_render(const RunConfig &c, std::ostream &log)
{
  const kerr::KerrParams params = spin(c);
  const kerr::ObserverSpec obs = observer(c, params);
  validated([&] { c.scene.validate(); });
  if (!(obs.r0() < c.scene.r_celestial))
    throw ValidationError("observer.r0 must be below scene.r_celestial");
  if (c.image.overlay && c.a < kerr::kMinShadowSpin)
    throw ValidationError("--overlay-boundary needs a >= " + std::to_string(kerr::kMinShadowSpin));

  std::optional<kerr::ShadowCurve> curve;
  if (c.a >= kerr::kMinShadowSpin && (c.image.overlay || !c.image.extent))
    curve = kerr::shadow_curve(obs, params, c.shadow_samples);

  kerr::ImagePlane plane;
  plane.width = c.image.width;
  plane.height = c.image.height;
  plane.extent = c.image.extent ? *c.image.extent
                                : fitted_extent(c, obs, params, curve ? &*curve : nullptr);
  validated([&] { plane.validate(); });

  kerr::RenderResult result =
      kerr::render(obs, c.scene, plane, params, c.integrator, c.image.workers);
  if (c.image.overlay)
    kerr::overlay_boundary(result.image, *curve, plane, c.scene.overlay);

  std::ofstream image = open_output(c, c.output.image, true);
  kerr::write_ppm(image, result.image);
  image.close();

  std::ofstream manifest = open_output(c, c.output.manifest);
  manifest << std::setprecision(17);
  const kerr::IntegratorControls &ic = c.integrator;
  manifest << "a=" << c.a << "\nr0=" << obs.r0() << "\ntheta0=" << obs.theta0()
           << "\nomega=" << obs.omega() << "\nphi0=" << obs.phi0() << "\nwidth=" << plane.width
           << "\nheight=" << plane.height << "\nextent=" << plane.extent
           << "\nflat=" << (c.scene.flat ? "true" : "false")
           << "\noverlay=" << (c.image.overlay ? "true" : "false")
           << "\nr_celestial=" << c.scene.r_celestial << "\nrtol=" << ic.rtol
           << "\natol=" << ic.atol << "\nhorizon_shell=" << ic.horizon_shell
           << "\nmax_steps=" << ic.max_steps << "\nsigma_budget=" << ic.sigma_budget
           << "\npixels=" << result.stats.pixels << "\nhorizon_hits=" << result.stats.horizon
           << "\nescapes=" << result.stats.escaped << "\ntrapped=" << result.stats.trapped
           << "\nfailures=" << result.stats.failed << '\n';

  log << "render: " << plane.width << "x" << plane.height << ", extent " << plane.extent << ", "
      << result.stats.horizon << " horizon, " << result.stats.escaped << " escaped, "
      << result.stats.trapped << " trapped, " << result.stats.failed << " failed -> "
      << c.output_path(c.output.image).string() << '\n';
}

void cmd_bifurcation(const RunConfig &c, std::ostream &log)
{
  const kerr::KerrParams params = spin(c);
  if (c.a == 0.0)
    throw ValidationError(
        "the spherical-orbit curve is undefined at a = 0: every critical ray then has "
        "eta + lambda^2 = 27 and r_c = 3");

  const auto sigma_r = kerr::sample_sigma_r(params, c.curve_samples);
  const auto plus = kerr::sample_sigma_theta(params, +1, c.curve_samples);
  const auto minus = kerr::sample_sigma_theta(params, -1, c.curve_samples);
  const kerr::ScanGrid grid;
  const auto zero = kerr::sample_sigma_theta0(grid.lambda_min, grid.lambda_max, c.curve_samples);
  const kerr::FeasibilityRaster raster = kerr::diagram_scan(params, grid);

  const std::string &p = c.output.bifurcation_prefix;
  auto write_curve = [&](const std::string &suffix, const auto &points)
  {
    std::ofstream out = open_output(c, p + suffix);
    kerr::write_curve_csv(out, points);
    log << "bifurcation: " << points.size() << " points -> "
        << c.output_path(p + suffix).string() << '\n';
  };
  write_curve("_sigma_r.csv", sigma_r);
  write_curve("_sigma_theta_plus.csv", plus);
  write_curve("_sigma_theta_minus.csv", minus);
  write_curve("_sigma_theta0.csv", zero);
  std::ofstream out = open_output(c, p + "_raster.csv");
  kerr::write_raster_csv(out, raster);
  log << "bifurcation: " << raster.feasible.size() << " raster cells -> "
      << c.output_path(p + "_raster.csv").string() << '\n';
}

void cmd_classify(const RunConfig &c, std::ostream &out)
{
  const kerr::KerrParams params = spin(c);
  if (!c.lambda || !c.eta || !c.r_start)
    throw ValidationError("classify needs lambda, eta and r_start");
  if (!(*c.r_start > params.horizon()))
    throw ValidationError("r_start must lie outside the horizon r+ = "
                          + std::to_string(params.horizon()));

  const kerr::TrajectoryClass cls = kerr::classify(*c.lambda, *c.eta, *c.r_start, params);
  const kerr::TurningPoints tp = kerr::turning_points(*c.lambda, *c.eta, params);
  out << std::setprecision(12) << "a: " << c.a << "\nlambda: " << *c.lambda
      << "\neta: " << *c.eta << "\nr_start: " << *c.r_start
      << "\nclass: " << kerr::to_string(cls.kind)
      << "\nvortical: " << (cls.vortical ? "yes" : "no") << "\nradial turning points:";
  for (const kerr::TurningPoint &t : tp.radial)
    out << ' ' << t.value << (t.critical ? "(double)" : "");
  out << "\npolar turning points:";
  for (const kerr::TurningPoint &t : tp.polar)
    out << ' ' << t.value << (t.critical ? "(double)" : "");
  out << '\n';
}

void cmd_separatrix(const RunConfig &c, std::ostream &log)
{
  const kerr::KerrParams params = spin(c);
  if (!c.r_c)
    throw ValidationError("separatrix needs r_c");
  const double r_c = *c.r_c;
  const double r0 = c.observer.r0;
  const double theta0 = c.separatrix_theta0;
  const kerr::CriticalCurvePoint crit = validated([&] { return kerr::sigma_r(r_c, params); });
  if (!(r0 > params.horizon()))
    throw ValidationError("r0 must lie outside the horizon");
  if (!(theta0 > 0.0 && theta0 < M_PI))
    throw ValidationError("separatrix.theta0 must lie in (0, pi)");
  const double theta_pot = kerr::polar_potential(theta0, crit.lambda, crit.eta, params);
  if (theta_pot < 0.0)
    throw ValidationError("Theta(theta0) < 0 on the critical level of r_c: the ray cannot pass "
                          "through theta0");
  if (r0 != r_c)
  {
    const double z = kerr::separatrix_Z(r_c, params);
    if (r0 * r0 + 2.0 * r_c * r0 - 3.0 * r_c * r_c + z * z < 0.0)
      throw ValidationError("r0 is not reached by the separatrix of r_c (R(r0) < 0)");
  }

  // theta and phi follow from theta'' = Theta'/2 and phi' along the closed-form r(sigma)
  using Y = kerr::State<3>;
  Y y{theta0, std::sqrt(theta_pot), 0.0};
  auto rhs = [&](double sigma, const Y &s, Y &dy)
  {
    const double r = kerr::separatrix_r(sigma, r0, r_c, params);
    if (!std::isfinite(r) || !(r > params.horizon()))
      return false;
    dy[0] = s[1];
    dy[1] = 0.5 * kerr::polar_potential_derivative(s[0], crit.lambda, crit.eta, params);
    dy[2] = kerr::dphi_dsigma(r, s[0], crit.lambda, params);
    return true;
  };

  std::ofstream out = open_output(c, c.output.separatrix);
  out << "sigma,r,theta,phi\n" << std::setprecision(17);
  const std::size_t n = c.separatrix_samples;
  double sigma = 0.0;
  for (std::size_t k = 0; k < n; ++k)
  {
    const double target = c.separatrix_sigma * static_cast<double>(k) / static_cast<double>(n - 1);
    if (target > sigma)
    {
      if (!kerr::integrate_to<3>(rhs, sigma, target, y, c.integrator.rtol, c.integrator.atol,
                                 c.integrator.initial_step))
        throw kerr::StepFailure("separatrix integration failed at sigma = "
                                + std::to_string(sigma));
      sigma = target;
    }
    out << sigma << ',' << kerr::separatrix_r(sigma, r0, r_c, params) << ',' << y[0] << ','
        << y[2] << '\n';
  }
  log << "separatrix: lambda=" << crit.lambda << ", eta=" << crit.eta << ", " << n
      << " samples -> " << c.output_path(c.output.separatrix).string() << '\n';
}

void cmd_observer_info(const RunConfig &c, std::ostream &out)
{
  const kerr::KerrParams params = spin(c);
  const kerr::ObserverSpec obs = observer(c, params);
  const kerr::OmegaBounds bounds = kerr::omega_bounds(obs.r0(), obs.theta0(), params);
  const kerr::ObserverScalars s = kerr::observer_scalars(obs, params);
  const kerr::Tetrad e = kerr::tetrad(obs, params);
  out << std::setprecision(12) << "a: " << c.a << "\nhorizon r+: " << params.horizon()
      << "\nr0: " << obs.r0() << "\ntheta0: " << obs.theta0() << "\nomega: " << obs.omega()
      << "\nomega bounds: (" << bounds.minus << ", " << bounds.plus << ")"
      << "\nframe dragging omega0: " << s.omega_frame << "\nu0: " << e.u0 << "\nin ergosphere: "
      << (obs.r0() * obs.r0() - 2.0 * obs.r0() + c.a * c.a * s.cos_theta * s.cos_theta <= 0.0
              ? "yes"
              : "no")
      << '\n';
  const char *names[4] = {"e_t", "e_r", "e_theta", "e_phi"};
  const auto legs = e.legs();
  for (int k = 0; k < 4; ++k)
  {
    out << names[k] << ":";
    for (double x : legs[static_cast<std::size_t>(k)])
      out << ' ' << x;
    out << '\n';
  }
  if (c.a >= kerr::kMinShadowSpin)
  {
    const kerr::ThetaStarRoots roots = kerr::theta_star_roots(obs, params);
    const int statement_case = obs.r0() > roots.r2_star ? 1 : (obs.r0() < roots.r1_star ? 2 : 3);
    out << "r1*: " << roots.r1_star << "\nr2*: " << roots.r2_star
        << "\nshadow case: " << statement_case << '\n';
  }
}

}  // namespace kerrshadow
