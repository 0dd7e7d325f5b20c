// Serial vs OpenMP-parallel timings for the hot kernels. Each benchmark takes
// the execution mode as its argument: 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include <memory>

#include "enkcf/features.hpp"
#include "enkcf/kcf.hpp"
#include "enkcf/particle_filter.hpp"
#include "enkcf/tracker.hpp"
#include "prototype_color_table.hpp"
#include "support/synthetic.hpp"

using namespace enkcf;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

const ColorNamingTable& table() {
  static const ColorNamingTable t(tools::prototype_color_rows());
  return t;
}

void BM_Fhog(benchmark::State& state) {
  const Image patch = testing::random_image(256, 256, 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(extract_fhog(patch, 4, mode(state)));
}

void BM_ColorNaming(benchmark::State& state) {
  const Image patch = testing::random_image(256, 256, 3, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_color_naming(patch, table(), 4, mode(state)));
  }
}

void BM_GaussianCorrelation(benchmark::State& state) {
  const FeatureMap x = extract_fhog(testing::random_image(256, 256, 3, 3), 4);
  const FeatureMap z = extract_fhog(testing::random_image(256, 256, 3, 4), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gaussian_correlation(x, z, 0.6, DistanceScaling::per_element, mode(state)));
  }
}

void BM_Detect(benchmark::State& state) {
  const FeatureMap x = extract_fhog(testing::random_image(256, 256, 3, 5), 4);
  const FeatureMap z = extract_fhog(testing::random_image(256, 256, 3, 6), 4);
  const FilterModel model = train(x, FilterParams{}, mode(state));
  for (auto _ : state) benchmark::DoNotOptimize(detect(model, z, mode(state)));
}

void BM_ParticleWeigh(benchmark::State& state) {
  const Roi roi{320, 240, 256, 256};
  const FeatureMap x = extract_fhog(testing::random_image(256, 256, 3, 7), 4);
  const FilterModel model = train(x, FilterParams{});
  const ResponseMap response = detect(model, x);
  ParticleSet set(1000, roi.center_x, roi.center_y, 8);
  set.predict(10, 2);
  for (auto _ : state) {
    set.weigh(response, roi, 5, 10.0, mode(state));
    benchmark::ClobberMemory();
  }
}

void BM_TrackerStep(benchmark::State& state) {
  testing::SyntheticSpec spec;
  spec.width = 640;
  spec.height = 360;
  spec.frames = 40;
  spec.object_width = spec.object_height = 64;
  const auto seq = testing::make_sequence(spec);
  auto shared = std::make_shared<const ColorNamingTable>(tools::prototype_color_rows());
  Tracker tracker =
      Tracker::init(seq.frames[0], seq.boxes[0].to_roi(), SchedulerConfig{}, shared, 42, mode(state));
  std::size_t i = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tracker.step(seq.frames[i]));
    i = i + 1 < seq.frames.size() ? i + 1 : 1;
  }
}

}  // namespace

BENCHMARK(BM_Fhog)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ColorNaming)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GaussianCorrelation)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Detect)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ParticleWeigh)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TrackerStep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
