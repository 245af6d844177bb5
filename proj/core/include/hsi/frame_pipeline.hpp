#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "hsi/kernels.hpp"
#include "hsi/sensor.hpp"

namespace hsi {

/// Classical per-frame path with preallocated buffers:
/// white balance -> bilinear demosaic -> correction (clamped) -> sRGB.
/// After white balance the frame is streamed row by row so intermediate
/// cubes stay in cache; stage times are accumulated over rows.
class FramePipeline {
public:
    static constexpr std::size_t kStages = 4;
    static constexpr std::array<std::string_view, kStages> kStageNames{
        "white_balance", "demosaic", "correction", "srgb"};

    /// Wall-clock milliseconds per stage and for the whole frame.
    struct Timings {
        std::array<double, kStages> stage_ms{};
        double total_ms = 0.0;
    };

    FramePipeline(std::size_t width, std::size_t height, const SensorModel& sensor,
                  const CalibrationMatrix& calibration, std::vector<float> white,
                  std::vector<float> dark);

    /// Processes one raw frame. When `corrected` is non-empty it receives
    /// the corrected cube (width*height*n_i values interleaved by pixel).
    Timings process(std::span<const float> raw, std::span<float> corrected = {});

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t output_bands() const noexcept { return static_cast<std::size_t>(correction_.rows()); }
    std::span<const float> rgb() const noexcept { return rgb_; }

private:
    std::size_t width_;
    std::size_t height_;
    kernels::BilinearPlan plan_;
    Eigen::MatrixXf correction_;
    Eigen::MatrixXf to_rgb_;   // bands -> linear sRGB
    std::vector<float> white_;
    std::vector<float> dark_;
    std::vector<float> balanced_;
    kernels::BilinearPlan::RowCache cache_;
    std::vector<float> demosaiced_;   // one row
    std::vector<float> corrected_;    // one row
    std::vector<float> rgb_;
};

}  // namespace hsi
