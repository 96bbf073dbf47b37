#include <benchmark/benchmark.h>

#include <numbers>

#include "kerr/bifurcation.hpp"
#include "kerr/integrator.hpp"
#include "kerr/observer.hpp"
#include "kerr/raytracer.hpp"
#include "kerr/shadow.hpp"

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

void BM_IntegrateEscapingRay(benchmark::State &state)
{
  const kerr::KerrParams params(0.9);
  const kerr::ObserverSpec obs = kerr::ObserverSpec::create(10.0, kHalfPi, 0.0, params);
  const kerr::RayInit ray = kerr::ray_from_angles({2.0, 1.0}, obs, params);
  kerr::IntegratorControls controls;
  controls.record = false;
  controls.direction = -1;
  for (auto _ : state)
    benchmark::DoNotOptimize(kerr::integrate(ray.state, ray.conserved, params, controls));
}
BENCHMARK(BM_IntegrateEscapingRay);

void BM_ShadowCurve(benchmark::State &state)
{
  const kerr::KerrParams params(0.98);
  const kerr::ObserverSpec obs = kerr::ObserverSpec::create(5.0, kHalfPi, 0.0, params);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        kerr::shadow_curve(obs, params, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ShadowCurve)->Arg(256)->Arg(2048);

void BM_TracePixel(benchmark::State &state)
{
  const kerr::KerrParams params(0.98);
  const kerr::ObserverSpec obs = kerr::ObserverSpec::create(5.0, kHalfPi, 0.0, params);
  const kerr::SceneConfig scene;
  const kerr::ImagePlane plane{64, 64, 4.0};
  const kerr::IntegratorControls controls;
  for (auto _ : state)
    benchmark::DoNotOptimize(kerr::trace_pixel(5, 20, obs, scene, plane, params, controls));
}
BENCHMARK(BM_TracePixel);

void BM_Render64(benchmark::State &state)
{
  const kerr::KerrParams params(0.98);
  const kerr::ObserverSpec obs = kerr::ObserverSpec::create(5.0, kHalfPi, 0.0, params);
  const kerr::ImagePlane plane{64, 64, 4.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(kerr::render(obs, kerr::SceneConfig{}, plane, params, {}, 1));
  state.SetItemsProcessed(state.iterations() * 64 * 64);
}
BENCHMARK(BM_Render64)->Unit(benchmark::kMillisecond);

void BM_SigmaRSampling(benchmark::State &state)
{
  const kerr::KerrParams params(0.97);
  for (auto _ : state)
    benchmark::DoNotOptimize(kerr::sample_sigma_r(params, 512));
}
BENCHMARK(BM_SigmaRSampling);

}  // namespace

BENCHMARK_MAIN();
