#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hsi/hypercube.hpp"
#include "hsi/spectra.hpp"

namespace hsi {

/// D65 reference white in XYZ (Y = 1).
inline constexpr std::array<double, 3> kD65White{0.95047, 1.0, 1.08883};

/// Per-pixel XYZ triples, row-major.
struct XyzImage {
    std::size_t width;
    std::size_t height;
    std::vector<float> xyz;
};

/// Gamma-encoded sRGB, channels clamped to [0, 1].
class RGBImage {
public:
    RGBImage(std::size_t width, std::size_t height, std::vector<float> rgb);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::span<const float> data() const noexcept { return rgb_; }
    std::array<float, 3> at(std::size_t x, std::size_t y) const noexcept {
        const float* p = rgb_.data() + (y * width_ + x) * 3;
        return {p[0], p[1], p[2]};
    }
    ImageView view() const noexcept { return {width_, height_, 3, rgb_}; }

    /// round(255 v) per channel.
    std::vector<std::uint8_t> to_bytes() const;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<float> rgb_;
};

/// Oxygen saturation per pixel; pixels without a hemoglobin signal are invalid.
class OxyMap {
public:
    OxyMap(std::size_t width, std::size_t height, std::vector<float> so2, std::vector<std::uint8_t> valid);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    bool valid(std::size_t x, std::size_t y) const noexcept { return valid_[y * width_ + x] != 0; }
    /// Saturation in [0, 1]; 0 for invalid pixels.
    float so2(std::size_t x, std::size_t y) const noexcept { return so2_[y * width_ + x]; }
    std::span<const float> data() const noexcept { return so2_; }

    /// Gray levels round(255 SO2); invalid pixels are 0.
    std::vector<std::uint8_t> to_bytes() const;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<float> so2_;
    std::vector<std::uint8_t> valid_;
};

/// Weights turning a spectrum on `wavelengths` into XYZ. Row c holds
/// trapezoid weight * CMF_c * illuminant, scaled so that a unit-reflectance
/// spectrum lands on `white`. With white Y = 1 the Y row is the usual
/// 1 / sum(w ybar S) normalisation.
///
/// A channel whose CMF vanishes on every band (e.g. Z above 650 nm) is zero.
std::array<std::vector<double>, 3> xyz_weights(const Wavelengths& wavelengths,
                                                const SampledSpectrum& illuminant = d65_illuminant(),
                                                const std::array<double, 3>& white = kD65White);

/// Spectral cube to XYZ under `illuminant`. Wavelengths must lie in 360-830 nm.
XyzImage cube_to_xyz(const Hypercube& cube, const SampledSpectrum& illuminant = d65_illuminant());

/// Standard sRGB transfer function for a linear value in [0, 1].
double srgb_gamma(double linear) noexcept;
/// Inverse of srgb_gamma.
double srgb_gamma_inverse(double encoded) noexcept;

/// Linear XYZ -> sRGB primaries (D65), matrix only.
inline constexpr double kXyzToLinearSrgb[3][3] = {
    {3.2404542, -1.5371385, -0.4985314},
    {-0.9692660, 1.8760108, 0.0415560},
    {0.0556434, -0.2040259, 1.0572252},
};

/// Matrix, clamp to [0, 1], gamma encode. The encode step uses a 64k-entry
/// interpolated table; it agrees with srgb_gamma to better than 1e-6.
RGBImage xyz_to_srgb(const XyzImage& xyz);

/// Buffer form of xyz_to_srgb: `xyz` and `rgb` both hold pixels * 3 values.
void xyz_to_srgb(std::span<const float> xyz, std::span<float> rgb);

/// Per-pixel Beer-Lambert unmixing: absorbance -log(max(r, 1e-4)) fitted
/// by least squares to c_oxy * e_oxy + c_deoxy * e_deoxy + offset over the
/// bands inside the extinction table; SO2 = c_oxy / (c_oxy + c_deoxy)
/// clamped to [0, 1]. Pixels with c_oxy + c_deoxy <= 1e-9 are invalid.
OxyMap oxygenation_map(const Hypercube& cube,
                       const HemoglobinExtinction& extinction = hemoglobin_extinction());

inline constexpr double kAbsorbanceFloor = 1e-4;
inline constexpr double kMinHemoglobin = 1e-9;

void write_png(const RGBImage& image, const std::filesystem::path& path);
void write_png(const OxyMap& map, const std::filesystem::path& path);

}  // namespace hsi
