#include <benchmark/benchmark.h>

#include "blurfisher/blur.hpp"
#include "blurfisher/blur_estimator.hpp"
#include "blurfisher/fisher.hpp"
#include "blurfisher/scenes.hpp"
#include "blurfisher/vrf.hpp"

using namespace blurfisher;

static void BM_VisualMap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto img = synth_natural_image(1.0, n, 1);
  const auto k = make_vntf(2.5, FrequencyGrid(img.geometry), SpreadConvention{});
  for (auto _ : state) benchmark::DoNotOptimize(visual_map(img, k));
}
BENCHMARK(BM_VisualMap)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_EquivSpreadDisc(benchmark::State& state) {
  double R = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(equiv_spread_disc(R, 2.5));
    R = R < 10.0 ? R + 0.5 : 2.0;
  }
}
BENCHMARK(BM_EquivSpreadDisc)->Unit(benchmark::kMicrosecond);

static void BM_EstimateBlur(benchmark::State& state) {
  const auto ref = render_dead_leaves(512, 3);
  const auto blurred = apply_otf(ref, BlurOtf::gaussian(2.0), SpreadConvention::stddev_form());
  for (auto _ : state) benchmark::DoNotOptimize(estimate_blur_sigma(ref, blurred));
}
BENCHMARK(BM_EstimateBlur)->Unit(benchmark::kMillisecond);

static void BM_DetailEnergyMap(benchmark::State& state) {
  const auto img = synth_natural_image(1.0, 512, 2);
  const auto map = visual_map(img, make_vntf(2.5, FrequencyGrid(img.geometry), SpreadConvention{}));
  const auto w = DetailWindow::gaussian(kDefaultWindowSigma, img.geometry);
  for (auto _ : state) benchmark::DoNotOptimize(detail_energy_map(map, w));
}
BENCHMARK(BM_DetailEnergyMap)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
