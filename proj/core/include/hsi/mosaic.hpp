#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace hsi {

/// n x n filter layout. band_at(row, col) is a bijection onto [0, n^2).
class MosaicPattern {
public:
    MosaicPattern(std::size_t n, std::vector<std::size_t> band_at);

    /// Default layout: band_at[r][c] = r * n + c.
    static MosaicPattern row_major(std::size_t n);

    std::size_t n() const noexcept { return n_; }
    std::size_t band_count() const noexcept { return n_ * n_; }
    std::size_t band_at(std::size_t row, std::size_t col) const noexcept {
        return band_at_[row * n_ + col];
    }
    /// Band sampled at image position (x, y).
    std::size_t band_at_pixel(std::size_t x, std::size_t y) const noexcept {
        return band_at_[(y % n_) * n_ + (x % n_)];
    }
    /// (row, col) of a band within the tile.
    std::pair<std::size_t, std::size_t> position_of(std::size_t band) const noexcept {
        return {position_[band] / n_, position_[band] % n_};
    }
    std::span<const std::size_t> layout() const noexcept { return band_at_; }

    bool operator==(const MosaicPattern& other) const noexcept {
        return n_ == other.n_ && band_at_ == other.band_at_;
    }

private:
    std::size_t n_;
    std::vector<std::size_t> band_at_;
    std::vector<std::size_t> position_;
};

/// Single-plane snapshot frame. Values finite and non-negative.
class MosaicImage {
public:
    MosaicImage(std::size_t width, std::size_t height, MosaicPattern pattern,
                std::vector<float> data);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    const MosaicPattern& pattern() const noexcept { return pattern_; }
    float at(std::size_t x, std::size_t y) const noexcept { return data_[y * width_ + x]; }
    std::span<const float> data() const noexcept { return data_; }

    bool identical(const MosaicImage& other) const noexcept;

private:
    std::size_t width_;
    std::size_t height_;
    MosaicPattern pattern_;
    std::vector<float> data_;
};

}  // namespace hsi
