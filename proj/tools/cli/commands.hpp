#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hsi/metrics.hpp"
#include "hsi/simulate.hpp"

namespace hsi::cli {

namespace fs = std::filesystem;

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;

struct SimulateOptions {
    fs::path cube;
    fs::path sensor;
    std::string out_prefix;
};

/// Writes <prefix>.mosaic, <prefix>.intermediate.cube, <prefix>.ideal.cube
/// and <prefix>.calib.
void simulate(const SimulateOptions& options);

struct DemosaicOptions {
    fs::path mosaic;
    fs::path sensor;
    fs::path calib;
    std::optional<fs::path> refined;
    fs::path out;
};

void demosaic(const DemosaicOptions& options);

struct RgbOptions {
    fs::path cube;
    fs::path out;
    std::optional<fs::path> raw;
};

void rgb(const RgbOptions& options);

struct OxyOptions {
    fs::path cube;
    fs::path out;
};

void oxy(const OxyOptions& options);

struct EvalOptions {
    std::vector<fs::path> pred;
    std::vector<fs::path> ref;
    bool rgb = false;
    std::string out_prefix;
};

/// Writes <prefix>.csv and <prefix>.txt and returns the report.
QualityReport eval(const EvalOptions& options);

struct BenchOptions {
    std::size_t width = 2048;
    std::size_t height = 1088;
    std::size_t iterations = 20;
    fs::path sensor;
    std::uint64_t seed = 20240501;
};

struct StageStats {
    std::string name;
    double min_ms;
    double median_ms;
    double p95_ms;
};

struct BenchReport {
    std::size_t width;
    std::size_t height;
    std::size_t iterations;
    std::size_t tile;
    std::vector<StageStats> stages;  ///< one row per pipeline stage
    StageStats total;

    double stage_median_sum() const;
    std::string to_text() const;
};

/// Times the classical per-frame path on a fixed-seed synthetic frame.
BenchReport bench(const BenchOptions& options);

struct SensorOptions {
    SyntheticSensorParams params;
    fs::path out;
};

void make_sensor(const SensorOptions& options);

struct PhantomOptions {
    std::size_t width = 64;
    std::size_t height = 64;
    std::uint64_t seed = 1;
    fs::path out;
};

/// Tissue-like high-resolution cube (450-650 nm, 2 nm) with a spatially
/// varying oxygen saturation, for demos and end-to-end tests.
void phantom(const PhantomOptions& options);

/// Full command line: parses `argv`, runs the subcommand, maps failures to
/// exit codes (0 ok, 2 usage or input error, 3 numeric failure).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hsi::cli
