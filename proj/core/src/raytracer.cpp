// kerrshadow backward ray tracing onto a four-coloured celestial sphere

// C++ headers
#include <algorithm>  // max, min
#include <atomic>     // atomic
#include <cmath>      // acos, atan2, ceil, cos, floor, fmod, hypot, sin, sqrt
#include <numbers>    // pi
#include <string>     // to_string
#include <thread>     // thread

// kerrshadow headers
#include "kerr/errors.hpp"
#include "kerr/raytracer.hpp"

namespace kerr {

namespace {

constexpr double kPi = std::numbers::pi;

// Straight line from the observer to the sphere |x| = r_celestial in flat space, a neglected
PixelResult trace_flat(const DirectionAngles &dir, const ObserverSpec &obs,
                       const SceneConfig &scene)
{
  const double st = std::sin(obs.theta0());
  const double ct = std::cos(obs.theta0());
  const double sp = std::sin(obs.phi0());
  const double cp = std::cos(obs.phi0());
  const std::array<double, 3> r_hat{st * cp, st * sp, ct};
  const std::array<double, 3> th_hat{ct * cp, ct * sp, -st};
  const std::array<double, 3> ph_hat{-sp, cp, 0.0};
  const double n1 = std::sin(dir.alpha) * std::cos(dir.beta);
  const double n2 = std::sin(dir.alpha) * std::sin(dir.beta);
  const double n3 = std::cos(dir.alpha);

  // sky direction N points along the legs e_theta, e_phi, e_r, which face decreasing theta and r
  std::array<double, 3> x0{};
  std::array<double, 3> d{};
  for (int k = 0; k < 3; ++k)
  {
    x0[k] = obs.r0() * r_hat[k];
    d[k] = -n1 * th_hat[k] + n2 * ph_hat[k] - n3 * r_hat[k];
  }
  // |x0 + s d|^2 = R^2 with |d| = 1
  const double b = x0[0] * d[0] + x0[1] * d[1] + x0[2] * d[2];
  const double c = obs.r0() * obs.r0() - scene.r_celestial * scene.r_celestial;
  const double s = -b + std::sqrt(b * b - c);
  std::array<double, 3> x{};
  for (int k = 0; k < 3; ++k)
    x[k] = x0[k] + s * d[k];
  const double theta = std::acos(std::clamp(x[2] / scene.r_celestial, -1.0, 1.0));
  const double phi = std::atan2(x[1], x[0]);
  return {celestial_color(theta, phi, obs.phi0(), scene), PixelOutcome::Escaped};
}

}  // namespace

//--------------------------------------------------------------------------------------------------

void SceneConfig::validate() const
{
  if (!(r_celestial > 10.0))
    throw DomainError("celestial sphere radius must exceed 10, got "
                      + std::to_string(r_celestial));
}

void ImagePlane::validate() const
{
  if (width <= 0 || height <= 0)
    throw DomainError("image dimensions must be positive, got " + std::to_string(width) + "x"
                      + std::to_string(height));
  if (!(extent > 0.0) || !std::isfinite(extent))
    throw DomainError("image extent must be positive and finite, got " + std::to_string(extent));
}

PlanePoint ImagePlane::to_plane(double i, double j) const noexcept
{
  const double half = 0.5 * pixel_size();
  const double x = extent * (2.0 * i / width - 1.0) + half;
  const double y = extent * static_cast<double>(height) / width * (1.0 - 2.0 * j / height) - half;
  return {x, y};
}

std::pair<double, double> ImagePlane::to_pixel(const PlanePoint &p) const noexcept
{
  const double i = (p.X / extent + 1.0) * 0.5 * width;
  const double j = (1.0 - p.Y * width / (extent * height)) * 0.5 * height;
  return {i, j};
}

//--------------------------------------------------------------------------------------------------

Rgb celestial_color(double theta, double phi, double phi0, const SceneConfig &scene) noexcept
{
  double rel = std::fmod(phi - phi0, 2.0 * kPi);
  if (rel < 0.0)
    rel += 2.0 * kPi;
  const int index = 2 * (theta > 0.5 * kPi ? 1 : 0) + (rel >= kPi ? 1 : 0);
  return scene.palette[static_cast<std::size_t>(index)];
}

PixelResult trace_pixel(int i, int j, const ObserverSpec &obs, const SceneConfig &scene,
                        const ImagePlane &plane, const KerrParams &params,
                        const IntegratorControls &controls)
{
  if (i < 0 || j < 0 || i >= plane.width || j >= plane.height)
    throw DomainError("pixel (" + std::to_string(i) + ", " + std::to_string(j)
                      + ") outside the image");
  const DirectionAngles dir = inverse_stereographic(plane.to_plane(i, j));
  if (scene.flat)
    return trace_flat(dir, obs, scene);

  try
  {
    const RayInit ray = ray_from_angles(dir, obs, params);
    IntegratorControls c = controls;
    c.direction = -1;
    c.record = false;
    c.r_max = scene.r_celestial;
    const Trajectory traj = integrate(ray.state, ray.conserved, params, c);
    switch (traj.reason)
    {
      case TerminationReason::HorizonReached:
        return {scene.shadow, PixelOutcome::Horizon};
      case TerminationReason::Escaped:
      {
        const BLPoint &p = traj.last().state.point;
        return {celestial_color(p.theta, p.phi, obs.phi0(), scene), PixelOutcome::Escaped};
      }
      case TerminationReason::MaxSteps:
      case TerminationReason::TurningBounded:
        return {scene.shadow, PixelOutcome::Trapped};
    }
  }
  catch (const Error &)
  {
  }
  return {scene.failure, PixelOutcome::Failed};
}

RenderResult render(const ObserverSpec &obs, const SceneConfig &scene, const ImagePlane &plane,
                    const KerrParams &params, const IntegratorControls &controls,
                    unsigned workers)
{
  scene.validate();
  plane.validate();
  if (!(obs.r0() < scene.r_celestial))
    throw DomainError("observer must sit inside the celestial sphere");

  const std::size_t n = static_cast<std::size_t>(plane.width) * static_cast<std::size_t>(plane.height);
  std::vector<PixelResult> results(n);
  std::atomic<std::size_t> next_row{0};
  auto work = [&]
  {
    for (std::size_t row = next_row++; row < static_cast<std::size_t>(plane.height); row = next_row++)
      for (int i = 0; i < plane.width; ++i)
        results[row * static_cast<std::size_t>(plane.width) + static_cast<std::size_t>(i)] =
            trace_pixel(i, static_cast<int>(row), obs, scene, plane, params, controls);
  };

  if (workers == 0)
    workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(plane.height));
  if (workers <= 1)
    work();
  else
  {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(work);
    for (std::thread &t : pool)
      t.join();
  }

  RenderResult out{Image(plane.width, plane.height), {}};
  out.stats.pixels = n;
  for (int j = 0; j < plane.height; ++j)
    for (int i = 0; i < plane.width; ++i)
    {
      const PixelResult &p =
          results[static_cast<std::size_t>(j) * static_cast<std::size_t>(plane.width)
                  + static_cast<std::size_t>(i)];
      out.image.at(i, j) = p.color;
      switch (p.outcome)
      {
        case PixelOutcome::Horizon:
          ++out.stats.horizon;
          break;
        case PixelOutcome::Escaped:
          ++out.stats.escaped;
          break;
        case PixelOutcome::Trapped:
          ++out.stats.trapped;
          break;
        case PixelOutcome::Failed:
          ++out.stats.failed;
          break;
      }
    }
  if (out.stats.failed * 1000 > n)
    throw RenderFailure(std::to_string(out.stats.failed) + " of " + std::to_string(n)
                        + " pixels failed to integrate");
  return out;
}

//--------------------------------------------------------------------------------------------------

void overlay_boundary(Image &image, const ShadowCurve &curve, const ImagePlane &plane, Rgb color)
{
  const auto &s = curve.samples;
  auto plot = [&](double fi, double fj)
  {
    const int i = static_cast<int>(std::floor(fi));
    const int j = static_cast<int>(std::floor(fj));
    if (image.contains(i, j))
      image.at(i, j) = color;
  };
  if (s.size() == 1)
  {
    const auto [i, j] = plane.to_pixel({s[0].X, s[0].Y});
    plot(i, j);
    return;
  }
  for (std::size_t k = 0; k < s.size(); ++k)
  {
    const ShadowSample &p = s[k];
    const ShadowSample &q = s[(k + 1) % s.size()];
    const auto [i0, j0] = plane.to_pixel({p.X, p.Y});
    const auto [i1, j1] = plane.to_pixel({q.X, q.Y});
    const double len = std::hypot(i1 - i0, j1 - j0);
    const int steps = std::max(1, static_cast<int>(std::ceil(4.0 * len)));
    if (steps > 1000000)
      continue;  // far outside the window
    for (int m = 0; m <= steps; ++m)
    {
      const double f = static_cast<double>(m) / steps;
      plot(i0 + f * (i1 - i0), j0 + f * (j1 - j0));
    }
  }
}

std::vector<std::pair<int, int>> region_edge(const Image &image, Rgb color)
{
  std::vector<std::pair<int, int>> edge;
  for (int j = 0; j < image.height(); ++j)
    for (int i = 0; i < image.width(); ++i)
    {
      if (!(image.at(i, j) == color))
        continue;
      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k)
      {
        const int ni = i + di[k];
        const int nj = j + dj[k];
        if (image.contains(ni, nj) && !(image.at(ni, nj) == color))
        {
          edge.emplace_back(i, j);
          break;
        }
      }
    }
  return edge;
}

}  // namespace kerr
