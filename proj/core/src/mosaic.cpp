#include "hsi/mosaic.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "hsi/error.hpp"

namespace hsi {

MosaicPattern::MosaicPattern(std::size_t n, std::vector<std::size_t> band_at)
    : n_(n), band_at_(std::move(band_at)) {
    if (n_ < 1) fail(Errc::invalid_argument, "pattern", "tile size must be positive");
    if (band_at_.size() != n_ * n_) {
        fail(Errc::size_mismatch, "pattern",
             "expected " + std::to_string(n_ * n_) + " band indices, got " +
                 std::to_string(band_at_.size()));
    }
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    position_.assign(n_ * n_, unset);
    for (std::size_t i = 0; i < band_at_.size(); ++i) {
        const std::size_t b = band_at_[i];
        if (b >= n_ * n_ || position_[b] != unset) {
            fail(Errc::invalid_argument, "pattern",
                 "band indices must be a permutation of 0.." + std::to_string(n_ * n_ - 1));
        }
        position_[b] = i;
    }
}

MosaicPattern MosaicPattern::row_major(std::size_t n) {
    std::vector<std::size_t> layout(n * n);
    for (std::size_t i = 0; i < layout.size(); ++i) layout[i] = i;
    return MosaicPattern(n, std::move(layout));
}

MosaicImage::MosaicImage(std::size_t width, std::size_t height, MosaicPattern pattern,
                         std::vector<float> data)
    : width_(width), height_(height), pattern_(std::move(pattern)), data_(std::move(data)) {
    if (width_ == 0 || height_ == 0) {
        fail(Errc::invalid_argument, width_ == 0 ? "width" : "height", "mosaic must be non-empty");
    }
    if (data_.size() != width_ * height_) {
        fail(Errc::size_mismatch, "data",
             "expected " + std::to_string(width_ * height_) + " values, got " +
                 std::to_string(data_.size()));
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!std::isfinite(data_[i])) {
            fail(Errc::non_finite_value, "data", "element " + std::to_string(i));
        }
        if (data_[i] < 0.0f) {
            fail(Errc::out_of_range, "data", "negative mosaic value at element " + std::to_string(i));
        }
    }
}

bool MosaicImage::identical(const MosaicImage& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ && pattern_ == other.pattern_ &&
           std::memcmp(data_.data(), other.data_.data(), data_.size() * sizeof(float)) == 0;
}

}  // namespace hsi
