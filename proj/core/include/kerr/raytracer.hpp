// kerrshadow backward ray tracing onto a four-coloured celestial sphere
//
// Each pixel of the image plane P is mapped to a sky direction by inverse stereographic
// projection, launched as a photon arriving at the observer and integrated backwards in time.
// Rays that fall into the hole or stay trapped are drawn black; the rest take the colour of
// the celestial-sphere quadrant they reach.

#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "kerr/integrator.hpp"
#include "kerr/metric.hpp"
#include "kerr/observer.hpp"
#include "kerr/ppm.hpp"
#include "kerr/shadow.hpp"

namespace kerr {

struct SceneConfig
{
  double r_celestial = 1000.0;
  // indexed by 2 * (theta > pi/2) + ((phi - phi0) mod 2 pi >= pi)
  std::array<Rgb, 4> palette{Rgb{230, 159, 0}, Rgb{86, 180, 233}, Rgb{0, 158, 115},
                             Rgb{240, 228, 66}};
  Rgb shadow{0, 0, 0};
  Rgb overlay{255, 0, 0};
  Rgb failure{255, 0, 255};
  bool flat = false;  // straight rays in flat space, no integration

  void validate() const;
};

// Pixel (i, j) covers X in extent * [2i/w - 1, 2(i+1)/w - 1] and the matching band in Y, with
// square pixels and row 0 at the top
struct ImagePlane
{
  int width = 512;
  int height = 512;
  double extent = 10.0;

  void validate() const;
  double pixel_size() const noexcept { return 2.0 * extent / width; }
  PlanePoint to_plane(double i, double j) const noexcept;
  // fractional pixel coordinates, pixel centres at .5
  std::pair<double, double> to_pixel(const PlanePoint &p) const noexcept;
};

enum class PixelOutcome : unsigned char
{
  Horizon,
  Escaped,
  Trapped,  // MaxSteps or sigma budget
  Failed,
};

struct PixelResult
{
  Rgb color;
  PixelOutcome outcome;
};

struct RenderStats
{
  std::size_t pixels = 0;
  std::size_t horizon = 0;
  std::size_t escaped = 0;
  std::size_t trapped = 0;
  std::size_t failed = 0;
};

struct RenderResult
{
  Image image;
  RenderStats stats;
};

// Quadrant colour for a point of the celestial sphere
Rgb celestial_color(double theta, double phi, double phi0, const SceneConfig &scene) noexcept;

PixelResult trace_pixel(int i, int j, const ObserverSpec &obs, const SceneConfig &scene,
                        const ImagePlane &plane, const KerrParams &params,
                        const IntegratorControls &controls);

// workers = 0 picks std::thread::hardware_concurrency(). Throws RenderFailure when more than
// 0.1% of the pixels fail.
RenderResult render(const ObserverSpec &obs, const SceneConfig &scene, const ImagePlane &plane,
                    const KerrParams &params, const IntegratorControls &controls,
                    unsigned workers = 0);

// Draws the closed curve as a polyline in the given colour
void overlay_boundary(Image &image, const ShadowCurve &curve, const ImagePlane &plane, Rgb color);

// Pixels of the given colour with at least one 4-neighbour of another colour
std::vector<std::pair<int, int>> region_edge(const Image &image, Rgb color);

}  // namespace kerr
