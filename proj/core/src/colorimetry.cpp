#include "hsi/colorimetry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>

#include "hsi/error.hpp"
#include "hsi/io.hpp"
#include "hsi/kernels.hpp"

namespace hsi {
namespace {

std::uint8_t to_byte(float v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f));
}

}  // namespace

RGBImage::RGBImage(std::size_t width, std::size_t height, std::vector<float> rgb)
    : width_(width), height_(height), rgb_(std::move(rgb)) {
    if (rgb_.size() != width_ * height_ * 3) fail(Errc::size_mismatch, "rgb", "expected width*height*3 values");
    for (float v : rgb_) {
        if (!std::isfinite(v)) fail(Errc::non_finite_value, "rgb", "");
        if (v < 0.0f || v > 1.0f) fail(Errc::out_of_range, "rgb", "channel outside [0, 1]");
    }
}

std::vector<std::uint8_t> RGBImage::to_bytes() const {
    std::vector<std::uint8_t> out(rgb_.size());
    std::transform(rgb_.begin(), rgb_.end(), out.begin(), to_byte);
    return out;
}

OxyMap::OxyMap(std::size_t width, std::size_t height, std::vector<float> so2, std::vector<std::uint8_t> valid)
    : width_(width), height_(height), so2_(std::move(so2)), valid_(std::move(valid)) {
    if (so2_.size() != width_ * height_ || valid_.size() != so2_.size()) {
        fail(Errc::size_mismatch, "so2", "expected width*height values");
    }
    for (std::size_t i = 0; i < so2_.size(); ++i) {
        if (valid_[i] && !(so2_[i] >= 0.0f && so2_[i] <= 1.0f)) {
            fail(Errc::out_of_range, "so2", "valid saturation outside [0, 1]");
        }
        if (!valid_[i]) so2_[i] = 0.0f;
    }
}

std::vector<std::uint8_t> OxyMap::to_bytes() const {
    std::vector<std::uint8_t> out(so2_.size());
    for (std::size_t i = 0; i < so2_.size(); ++i) out[i] = valid_[i] ? to_byte(so2_[i]) : 0;
    return out;
}

std::array<std::vector<double>, 3> xyz_weights(const Wavelengths& wavelengths,
                                                const SampledSpectrum& illuminant,
                                                const std::array<double, 3>& white) {
    const auto& cmf = cie1931_observer();
    const SampledSpectrum* curves[3] = {&cmf.x, &cmf.y, &cmf.z};
    const auto trapz = wavelengths.trapezoid_weights();
    std::array<std::vector<double>, 3> rows;
    for (std::size_t c = 0; c < 3; ++c) {
        rows[c].resize(wavelengths.size());
        double norm = 0.0;
        for (std::size_t b = 0; b < wavelengths.size(); ++b) {
            rows[c][b] = trapz[b] * curves[c]->at(wavelengths[b]) * illuminant.at(wavelengths[b]);
            norm += rows[c][b];
        }
        const double scale = norm > 0.0 ? white[c] / norm : 0.0;
        for (double& w : rows[c]) w *= scale;
    }
    return rows;
}

XyzImage cube_to_xyz(const Hypercube& cube, const SampledSpectrum& illuminant) {
    const auto rows = xyz_weights(cube.wavelengths(), illuminant);
    Eigen::MatrixXf matrix(3, static_cast<Eigen::Index>(cube.bands()));
    for (Eigen::Index c = 0; c < 3; ++c) {
        for (Eigen::Index b = 0; b < matrix.cols(); ++b) {
            matrix(c, b) = static_cast<float>(rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)]);
        }
    }
    XyzImage out{cube.width(), cube.height(), std::vector<float>(cube.pixel_count() * 3)};
    kernels::correct(cube.data(), cube.pixel_count(), matrix, out.xyz, false);
    return out;
}

double srgb_gamma(double linear) noexcept {
    return linear <= 0.0031308 ? 12.92 * linear : 1.055 * std::pow(linear, 1.0 / 2.4) - 0.055;
}

double srgb_gamma_inverse(double encoded) noexcept {
    return encoded <= 0.04045 ? encoded / 12.92 : std::pow((encoded + 0.055) / 1.055, 2.4);
}

void xyz_to_srgb(std::span<const float> xyz, std::span<float> rgb) {
    if (xyz.size() != rgb.size() || xyz.size() % 3 != 0) {
        fail(Errc::size_mismatch, "xyz", "buffers must hold the same number of triples");
    }
    float m[3][3];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m[i][j] = static_cast<float>(kXyzToLinearSrgb[i][j]);
    }
    for (std::size_t p = 0; p < xyz.size(); p += 3) {
        const float x = xyz[p];
        const float y = xyz[p + 1];
        const float z = xyz[p + 2];
        for (int c = 0; c < 3; ++c) rgb[p + static_cast<std::size_t>(c)] = m[c][0] * x + m[c][1] * y + m[c][2] * z;
    }
    kernels::srgb_encode(rgb, rgb);
}

RGBImage xyz_to_srgb(const XyzImage& xyz) {
    std::vector<float> rgb(xyz.xyz.size());
    xyz_to_srgb(xyz.xyz, rgb);
    return RGBImage(xyz.width, xyz.height, std::move(rgb));
}

OxyMap oxygenation_map(const Hypercube& cube, const HemoglobinExtinction& extinction) {
    std::vector<std::size_t> usable;
    for (std::size_t b = 0; b < cube.bands(); ++b) {
        const double w = cube.wavelengths()[b];
        if (extinction.oxy.covers(w) && extinction.deoxy.covers(w)) usable.push_back(b);
    }
    if (usable.size() < 3) {
        fail(Errc::invalid_argument, "wavelengths",
             "need at least 3 bands inside the extinction table, found " + std::to_string(usable.size()));
    }
    const auto n = static_cast<Eigen::Index>(usable.size());
    Eigen::MatrixXd design(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = cube.wavelengths()[usable[static_cast<std::size_t>(i)]];
        design(i, 0) = extinction.oxy.at(w);
        design(i, 1) = extinction.deoxy.at(w);
        design(i, 2) = 1.0;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < 3) fail(Errc::degenerate_responses, "extinction", "unmixing design is rank deficient");
    // Least-squares solution operator, shared by every pixel.
    const Eigen::MatrixXd solver = qr.solve(Eigen::MatrixXd::Identity(n, n));

    std::vector<float> so2(cube.pixel_count(), 0.0f);
    std::vector<std::uint8_t> valid(cube.pixel_count(), 0);
    Eigen::VectorXd absorbance(n);
    for (std::size_t p = 0; p < cube.pixel_count(); ++p) {
        const auto spectrum = cube.data().subspan(p * cube.bands(), cube.bands());
        for (Eigen::Index i = 0; i < n; ++i) {
            const double r = spectrum[usable[static_cast<std::size_t>(i)]];
            absorbance(i) = -std::log(std::max(r, kAbsorbanceFloor));
        }
        const Eigen::Vector3d c = solver * absorbance;
        const double total = c(0) + c(1);
        if (total > kMinHemoglobin) {
            so2[p] = static_cast<float>(std::clamp(c(0) / total, 0.0, 1.0));
            valid[p] = 1;
        }
    }
    return OxyMap(cube.width(), cube.height(), std::move(so2), std::move(valid));
}

void write_png(const RGBImage& image, const std::filesystem::path& path) {
    write_png(path, image.width(), image.height(), 3, image.to_bytes());
}

void write_png(const OxyMap& map, const std::filesystem::path& path) {
    write_png(path, map.width(), map.height(), 1, map.to_bytes());
}

}  // namespace hsi
