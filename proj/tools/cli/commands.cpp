#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hsi/colorimetry.hpp"
#include "hsi/demosaic.hpp"
#include "hsi/error.hpp"
#include "hsi/frame_pipeline.hpp"
#include "hsi/io.hpp"
#include "hsi/spectra.hpp"

namespace hsi::cli {
namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::unwritable_path, path.string(), "cannot write " + path.string());
    out << text;
    if (!out) fail(Errc::unwritable_path, path.string(), "write failed for " + path.string());
}

RGBImage to_rgb(const Hypercube& cube) { return xyz_to_srgb(cube_to_xyz(cube)); }

StageStats summarize(std::string name, std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    const double median = n % 2 == 1 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
    // Nearest-rank percentile.
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
    return {std::move(name), samples.front(), median, samples[std::max<std::size_t>(rank, 1) - 1]};
}

}  // namespace

void simulate(const SimulateOptions& options) {
    const auto hr = read_cube(options.cube);
    const auto sensor = read_sensor(options.sensor);
    const auto intermediate = simulate_spectral(hr, sensor);
    const auto ideal = simulate_ideal(hr, sensor);
    const auto mosaic = subsample(intermediate, sensor.pattern());
    const auto fit = fit_calibration(sensor, sensor.knot_grid());
    write_mosaic(mosaic, options.out_prefix + ".mosaic");
    write_cube(intermediate, options.out_prefix + ".intermediate.cube");
    write_cube(ideal, options.out_prefix + ".ideal.cube");
    write_calibration(fit, options.out_prefix + ".calib");
}

void demosaic(const DemosaicOptions& options) {
    const auto mosaic = read_mosaic(options.mosaic);
    const auto sensor = read_sensor(options.sensor);
    const auto fit = read_calibration(options.calib);
    std::optional<Hypercube> refined;
    if (options.refined) refined = read_cube(*options.refined);
    write_cube(demosaic_pipeline(mosaic, sensor, fit.matrix, refined), options.out);
}

void rgb(const RgbOptions& options) {
    const auto image = to_rgb(read_cube(options.cube));
    write_png(image, options.out);
    if (options.raw) write_rgb_raw(image.width(), image.height(), image.data(), *options.raw);
}

void oxy(const OxyOptions& options) { write_png(oxygenation_map(read_cube(options.cube)), options.out); }

QualityReport eval(const EvalOptions& options) {
    if (options.pred.empty() || options.pred.size() != options.ref.size()) {
        fail(Errc::invalid_argument, "--pred", "need matching, non-empty --pred and --ref lists");
    }
    std::vector<QualityRecord> records;
    for (std::size_t i = 0; i < options.pred.size(); ++i) {
        const auto pred = read_cube(options.pred[i]);
        const auto ref = read_cube(options.ref[i]);
        if (!pred.same_shape(ref)) {
            fail(Errc::shape_mismatch, options.pred[i].string(), "prediction and reference differ in shape");
        }
        const auto name = options.pred[i].filename().string();
        if (options.rgb) {
            const auto a = to_rgb(pred);
            const auto b = to_rgb(ref);
            records.push_back(evaluate_pair(name, a.view(), b.view()));
        } else {
            records.push_back(evaluate_pair(name, pred.view(), ref.view()));
        }
    }
    auto report = aggregate(std::move(records));
    write_text(options.out_prefix + ".csv", report.to_csv());
    write_text(options.out_prefix + ".txt", report.to_text());
    return report;
}

double BenchReport::stage_median_sum() const {
    double sum = 0.0;
    for (const auto& s : stages) sum += s.median_ms;
    return sum;
}

std::string BenchReport::to_text() const {
    std::string out = fmt::format("frame {}x{}, {}x{} mosaic, {} iteration(s)\n", width, height, tile,
                                  tile, iterations);
    out += fmt::format("{:<15}{:>10}{:>12}{:>10}\n", "stage", "min_ms", "median_ms", "p95_ms");
    const auto row = [](const StageStats& s) {
        return fmt::format("{:<15}{:>10.3f}{:>12.3f}{:>10.3f}\n", s.name, s.min_ms, s.median_ms, s.p95_ms);
    };
    for (const auto& s : stages) out += row(s);
    out += row(total);
    out += fmt::format("stage medians sum to {:.3f} ms ({:.1f}% of total median)\n", stage_median_sum(),
                       100.0 * stage_median_sum() / total.median_ms);
    return out;
}

BenchReport bench(const BenchOptions& options) {
    if (options.iterations == 0) fail(Errc::invalid_argument, "--iters", "need at least one iteration");
    const auto sensor = read_sensor(options.sensor);
    const auto fit = fit_calibration(sensor, sensor.knot_grid());
    const std::size_t pixels = options.width * options.height;

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<float> reflectance(0.05f, 0.95f);
    std::uniform_real_distribution<float> jitter(-0.02f, 0.02f);
    std::vector<float> white(pixels), dark(pixels), raw(pixels);
    for (std::size_t i = 0; i < pixels; ++i) {
        dark[i] = 0.02f + 0.25f * jitter(rng);
        white[i] = 0.9f + jitter(rng);
        raw[i] = dark[i] + (white[i] - dark[i]) * reflectance(rng);
    }

    FramePipeline pipeline(options.width, options.height, sensor, fit.matrix, std::move(white), std::move(dark));
    pipeline.process(raw);  // warm-up: first-touch page faults and table setup

    std::vector<std::vector<double>> stage_samples(FramePipeline::kStages);
    std::vector<double> totals;
    for (std::size_t it = 0; it < options.iterations; ++it) {
        const auto t = pipeline.process(raw);
        for (std::size_t s = 0; s < FramePipeline::kStages; ++s) stage_samples[s].push_back(t.stage_ms[s]);
        totals.push_back(t.total_ms);
    }
    BenchReport report{options.width, options.height, options.iterations, sensor.pattern().n(), {}, {}};
    for (std::size_t s = 0; s < FramePipeline::kStages; ++s) {
        report.stages.push_back(summarize(std::string(FramePipeline::kStageNames[s]), stage_samples[s]));
    }
    report.total = summarize("total", totals);
    return report;
}

void make_sensor(const SensorOptions& options) {
    write_sensor(build_synthetic_sensor(options.params), options.out);
}

void phantom(const PhantomOptions& options) {
    if (options.width == 0 || options.height == 0) fail(Errc::invalid_argument, "--width", "empty phantom");
    const auto wl = Wavelengths::stepped(450.0, 650.0, 2.0);
    const auto& ext = hemoglobin_extinction();
    std::vector<double> eps_oxy(wl.size()), eps_deoxy(wl.size());
    for (std::size_t l = 0; l < wl.size(); ++l) {
        eps_oxy[l] = ext.oxy.at(wl[l]);
        eps_deoxy[l] = ext.deoxy.at(wl[l]);
    }

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> noise(-1.0, 1.0);
    const double w = static_cast<double>(options.width);
    const double h = static_cast<double>(options.height);
    const double phase = std::numbers::pi * noise(rng);
    std::vector<float> data(options.width * options.height * wl.size());
    for (std::size_t y = 0; y < options.height; ++y) {
        for (std::size_t x = 0; x < options.width; ++x) {
            const double u = (static_cast<double>(x) + 0.5) / w;
            const double v = (static_cast<double>(y) + 0.5) / h;
            double so2 = 0.3 + 0.6 * u;
            double conc = 0.5 + 0.2 * std::sin(2.0 * std::numbers::pi * (2.0 * v + u) + phase);
            double baseline = 0.75 + 0.05 * std::cos(6.0 * std::numbers::pi * u * v) + 0.02 * noise(rng);
            // A meandering vessel with high saturation and blood volume.
            const double centre = 0.5 + 0.2 * std::sin(2.0 * std::numbers::pi * u + phase);
            if (std::abs(v - centre) * h < std::max(1.5, 0.04 * h)) {
                so2 = 0.97;
                conc = 1.4;
                baseline = 0.7;
            }
            float* px = data.data() + (y * options.width + x) * wl.size();
            for (std::size_t l = 0; l < wl.size(); ++l) {
                const double mu = conc * (so2 * eps_oxy[l] + (1.0 - so2) * eps_deoxy[l]);
                px[l] = static_cast<float>(baseline * std::exp(-mu));
            }
        }
    }
    write_cube(Hypercube(options.width, options.height, wl, std::move(data)), options.out);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Snapshot mosaic hyperspectral simulation, demosaicking and evaluation"};
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Synthesize mosaic, intermediate and ideal cubes from a high-resolution cube");
    sim_cmd->add_option("--cube", sim.cube, "High-resolution input cube")->required();
    sim_cmd->add_option("--sensor", sim.sensor, "Sensor model file")->required();
    sim_cmd->add_option("--out", sim.out_prefix, "Output prefix")->required();

    DemosaicOptions dem;
    std::string refined;
    auto* dem_cmd = app.add_subcommand("demosaic", "Bilinear (or refined) demosaic followed by spectral correction");
    dem_cmd->add_option("--mosaic", dem.mosaic, "Mosaic image")->required();
    dem_cmd->add_option("--sensor", dem.sensor, "Sensor model file")->required();
    dem_cmd->add_option("--calib", dem.calib, "Calibration file")->required();
    dem_cmd->add_option("--refined", refined, "Refined intermediate cube replacing the bilinear estimate");
    dem_cmd->add_option("--out", dem.out, "Output cube")->required();

    RgbOptions rgb_opts;
    std::string raw;
    auto* rgb_cmd = app.add_subcommand("rgb", "Render a cube to sRGB");
    rgb_cmd->add_option("--cube", rgb_opts.cube, "Input cube")->required();
    rgb_cmd->add_option("--out", rgb_opts.out, "Output PNG")->required();
    rgb_cmd->add_option("--raw", raw, "Also write float RGB in the exchange format");

    OxyOptions oxy_opts;
    auto* oxy_cmd = app.add_subcommand("oxy", "Oxygen saturation map");
    oxy_cmd->add_option("--cube", oxy_opts.cube, "Input cube")->required();
    oxy_cmd->add_option("--out", oxy_opts.out, "Output PNG")->required();

    EvalOptions ev;
    auto* eval_cmd = app.add_subcommand("eval", "L1 / PSNR / SSIM report");
    eval_cmd->add_option("--pred", ev.pred, "Predicted cube(s)")->required();
    eval_cmd->add_option("--ref", ev.ref, "Reference cube(s), paired with --pred in order")->required();
    eval_cmd->add_flag("--rgb", ev.rgb, "Compare sRGB renderings instead of spectra");
    eval_cmd->add_option("--out", ev.out_prefix, "Report prefix (.csv and .txt)")->required();

    BenchOptions be;
    auto* bench_cmd = app.add_subcommand("bench", "Per-frame latency of the classical path");
    bench_cmd->add_option("--width", be.width, "Frame width")->capture_default_str();
    bench_cmd->add_option("--height", be.height, "Frame height")->capture_default_str();
    bench_cmd->add_option("--iters", be.iterations, "Timed iterations")->capture_default_str();
    bench_cmd->add_option("--sensor", be.sensor, "Sensor model file")->required();

    SensorOptions so;
    auto* sensor_cmd = app.add_subcommand("sensor", "Write a synthetic sensor model");
    sensor_cmd->add_option("--n", so.params.n, "Mosaic tile size")->capture_default_str();
    sensor_cmd->add_option("--min", so.params.range.min, "Lower range limit, nm")->capture_default_str();
    sensor_cmd->add_option("--max", so.params.range.max, "Upper range limit, nm")->capture_default_str();
    sensor_cmd->add_option("--fwhm", so.params.fwhm, "Band FWHM, nm")->capture_default_str();
    sensor_cmd->add_option("--leakage", so.params.leakage, "Cross-talk fraction in [0, 0.5)")->capture_default_str();
    sensor_cmd->add_option("--out", so.out, "Output sensor file")->required();

    PhantomOptions ph;
    auto* phantom_cmd = app.add_subcommand("phantom", "Write a synthetic tissue-like high-resolution cube");
    phantom_cmd->add_option("--width", ph.width, "Width")->capture_default_str();
    phantom_cmd->add_option("--height", ph.height, "Height")->capture_default_str();
    phantom_cmd->add_option("--seed", ph.seed, "Random seed")->capture_default_str();
    phantom_cmd->add_option("--out", ph.out, "Output cube")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*sim_cmd) {
            simulate(sim);
        } else if (*dem_cmd) {
            if (!refined.empty()) dem.refined = refined;
            demosaic(dem);
        } else if (*rgb_cmd) {
            if (!raw.empty()) rgb_opts.raw = raw;
            rgb(rgb_opts);
        } else if (*oxy_cmd) {
            oxy(oxy_opts);
        } else if (*eval_cmd) {
            out << eval(ev).to_text();
        } else if (*bench_cmd) {
            out << bench(be).to_text();
        } else if (*sensor_cmd) {
            make_sensor(so);
        } else if (*phantom_cmd) {
            phantom(ph);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_numeric_failure(e.code()) ? kExitNumeric : kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitOk;
}

}  // namespace hsi::cli
