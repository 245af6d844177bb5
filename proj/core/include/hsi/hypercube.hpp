#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hsi/wavelengths.hpp"

namespace hsi {

/// Read-only view of an interleaved multi-channel image, row-major by
/// (y, x, channel). Metrics operate on this so cubes and RGB images share
/// one code path.
struct ImageView {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t channels = 0;
    std::span<const float> data;

    bool same_shape(const ImageView& other) const noexcept {
        return width == other.width && height == other.height && channels == other.channels;
    }
};

/// X x Y x B reflectance cube, band-interleaved by pixel.
///
/// Values must be finite. Negative values are permitted because spectral
/// correction produces them before the final clamp. Wavelengths are stored
/// at 32-bit float precision so the on-disk format round-trips exactly.
class Hypercube {
public:
    Hypercube(std::size_t width, std::size_t height, Wavelengths wavelengths,
              std::vector<float> data);

    /// Cube filled with a constant value.
    static Hypercube filled(std::size_t width, std::size_t height, Wavelengths wavelengths,
                            float value);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t bands() const noexcept { return wavelengths_.size(); }
    std::size_t pixel_count() const noexcept { return width_ * height_; }
    const Wavelengths& wavelengths() const noexcept { return wavelengths_; }

    float at(std::size_t x, std::size_t y, std::size_t band) const noexcept {
        return data_[(y * width_ + x) * bands() + band];
    }
    std::span<const float> pixel(std::size_t x, std::size_t y) const noexcept {
        return std::span<const float>(data_).subspan((y * width_ + x) * bands(), bands());
    }
    std::span<const float> data() const noexcept { return data_; }

    ImageView view() const noexcept { return {width_, height_, bands(), data_}; }

    bool same_shape(const Hypercube& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_ && bands() == other.bands();
    }

    /// Bit-level equality of shape, wavelengths and payload.
    bool identical(const Hypercube& other) const noexcept;

private:
    std::size_t width_;
    std::size_t height_;
    Wavelengths wavelengths_;
    std::vector<float> data_;
};

}  // namespace hsi
