#include "hsi/frame_pipeline.hpp"

#include <algorithm>
#include <chrono>

#include "hsi/colorimetry.hpp"
#include "hsi/error.hpp"

namespace hsi {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point from, Clock::time_point to) {
    return std::chrono::duration<double, std::milli>(to - from).count();
}

}  // namespace

FramePipeline::FramePipeline(std::size_t width, std::size_t height, const SensorModel& sensor,
                             const CalibrationMatrix& calibration, std::vector<float> white,
                             std::vector<float> dark)
    : width_(width),
      height_(height),
      plan_(width, height, sensor.pattern()),
      correction_(calibration.entries().cast<float>()),
      white_(std::move(white)),
      dark_(std::move(dark)) {
    calibration.check_compatible(sensor);
    const std::size_t pixels = width * height;
    if (white_.size() != pixels || dark_.size() != pixels) {
        fail(Errc::shape_mismatch, "white", "reference frames must match the frame size");
    }
    // Band -> XYZ -> linear sRGB folded into one 3 x n_i matrix.
    const auto rows = xyz_weights(calibration.output_wavelengths());
    Eigen::MatrixXd to_xyz(3, static_cast<Eigen::Index>(calibration.rows()));
    Eigen::Matrix3d to_linear;
    for (Eigen::Index c = 0; c < 3; ++c) {
        for (Eigen::Index b = 0; b < to_xyz.cols(); ++b) {
            to_xyz(c, b) = rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)];
        }
        for (Eigen::Index j = 0; j < 3; ++j) to_linear(c, j) = kXyzToLinearSrgb[c][j];
    }
    to_rgb_ = (to_linear * to_xyz).cast<float>();
    balanced_.resize(pixels);
    demosaiced_.resize(width * plan_.bands());
    corrected_.resize(width * calibration.rows());
    rgb_.resize(pixels * 3);
}

FramePipeline::Timings FramePipeline::process(std::span<const float> raw, std::span<float> corrected) {
    const std::size_t pixels = width_ * height_;
    const std::size_t bands = output_bands();
    if (raw.size() != pixels) fail(Errc::shape_mismatch, "raw", "frame size does not match the pipeline");
    if (!corrected.empty() && corrected.size() != pixels * bands) {
        fail(Errc::shape_mismatch, "corrected", "buffer does not match the corrected cube");
    }
    Timings t;
    const auto start = Clock::now();
    kernels::white_balance(raw, white_, dark_, balanced_);
    auto last = Clock::now();
    t.stage_ms[0] = elapsed_ms(start, last);
    const auto lap = [&](std::size_t stage) {
        const auto now = Clock::now();
        t.stage_ms[stage] += elapsed_ms(last, now);
        last = now;
    };
    for (std::size_t y = 0; y < height_; ++y) {
        plan_.row(balanced_, y, demosaiced_, cache_);
        lap(1);
        kernels::correct(demosaiced_, width_, correction_, corrected_, true);
        if (!corrected.empty()) {
            std::copy(corrected_.begin(), corrected_.end(), corrected.begin() + static_cast<std::ptrdiff_t>(y * width_ * bands));
        }
        lap(2);
        const std::span<float> rgb_row(rgb_.data() + y * width_ * 3, width_ * 3);
        kernels::correct(corrected_, width_, to_rgb_, rgb_row, false);
        kernels::srgb_encode(rgb_row, rgb_row);
        lap(3);
    }
    t.total_ms = elapsed_ms(start, last);
    return t;
}

}  // namespace hsi
