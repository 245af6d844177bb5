#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hsi/colorimetry.hpp"
#include "hsi/kernels.hpp"
#include "hsi/simulate.hpp"

namespace {

constexpr std::size_t kWidth = 2048;
constexpr std::size_t kHeight = 1088;

std::vector<float> random_frame(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> dist(0.0f, 1.0f);
    std::vector<float> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

const hsi::SensorModel& sensor() {
    static const auto s = hsi::build_synthetic_sensor({4, {470.0, 620.0}, 15.0, 0.2, 1.0});
    return s;
}

void BM_WhiteBalance(benchmark::State& state) {
    const auto raw = random_frame(kWidth * kHeight, 1);
    const std::vector<float> white(raw.size(), 1.0f), dark(raw.size(), 0.0f);
    std::vector<float> out(raw.size());
    for (auto _ : state) {
        hsi::kernels::white_balance(raw, white, dark, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_WhiteBalance)->Unit(benchmark::kMillisecond);

void BM_BilinearDemosaic(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const hsi::kernels::BilinearPlan plan(kWidth, kHeight, hsi::MosaicPattern::row_major(n));
    const auto mosaic = random_frame(kWidth * kHeight, 2);
    std::vector<float> out(kWidth * kHeight * n * n);
    for (auto _ : state) {
        plan.run(mosaic, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_BilinearDemosaic)->Arg(2)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Correction(benchmark::State& state) {
    const auto fit = hsi::fit_calibration(sensor(), sensor().knot_grid());
    const Eigen::MatrixXf c = fit.matrix.entries().cast<float>();
    const std::size_t pixels = kWidth * kHeight;
    const auto cube = random_frame(pixels * 16, 3);
    std::vector<float> out(pixels * 16);
    for (auto _ : state) {
        hsi::kernels::correct(cube, pixels, c, out, true);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_Correction)->Unit(benchmark::kMillisecond);

void BM_XyzToSrgb(benchmark::State& state) {
    const std::size_t pixels = kWidth * kHeight;
    const auto xyz = random_frame(pixels * 3, 4);
    std::vector<float> rgb(pixels * 3);
    for (auto _ : state) {
        hsi::xyz_to_srgb(xyz, rgb);
        benchmark::DoNotOptimize(rgb.data());
    }
}
BENCHMARK(BM_XyzToSrgb)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
