#pragma once

// Buffer-level kernels behind the value-returning pipeline API. They write
// into caller-owned storage so a streaming frame loop can reuse buffers.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hsi/mosaic.hpp"

namespace hsi::kernels {

/// Flat-field correction of `raw` into `out` (all the same length).
void white_balance(std::span<const float> raw, std::span<const float> white,
                   std::span<const float> dark, std::span<float> out);

/// Precomputed interpolation tables for bilinear demosaicking of one
/// frame geometry. Each band is interpolated on its own stride-n lattice
/// using its true sample offsets; outside the outermost samples the
/// nearest sample is repeated.
class BilinearPlan {
public:
    BilinearPlan(std::size_t width, std::size_t height, const MosaicPattern& pattern);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t bands() const noexcept { return n_ * n_; }

    /// Horizontally interpolated sample rows kept between calls to `row`.
    /// Rows are cheapest to produce in increasing order.
    struct RowCache {
        std::vector<float> rows;         // per row class, 2 slots of width*n
        std::vector<std::size_t> tags;   // sample index held by each slot
    };

    /// `mosaic` holds width*height values; `out` receives width*height*n^2
    /// values interleaved by pixel.
    void run(std::span<const float> mosaic, std::span<float> out) const;

    /// Writes output row `y` (width*n^2 values interleaved by pixel).
    void row(std::span<const float> mosaic, std::size_t y, std::span<float> out,
             RowCache& cache) const;

private:
    struct Tap {
        std::size_t lo;
        std::size_t hi;
        float t;
    };

    const float* sample_row(std::span<const float> mosaic, std::size_t r, std::size_t j,
                            std::size_t keep, RowCache& cache) const;

    std::size_t width_;
    std::size_t height_;
    std::size_t n_;
    std::vector<std::size_t> destination_;   // tile slot -> band index
    std::vector<std::int32_t> x_lo_;         // per x and column class
    std::vector<std::int32_t> x_hi_;
    std::vector<float> x_t_;
    std::vector<std::vector<Tap>> y_taps_;   // per row class, per y
    bool identity_;
};

/// sRGB encoding of clamped linear values, elementwise (lookup table).
void srgb_encode(std::span<const float> linear, std::span<float> out);

/// out (rows x pixels) = matrix (rows x cols) * in (cols x pixels), both
/// interleaved by pixel. Negative results are set to 0 when `clamp`.
void correct(std::span<const float> in, std::size_t pixels, const Eigen::MatrixXf& matrix,
             std::span<float> out, bool clamp);

}  // namespace hsi::kernels
