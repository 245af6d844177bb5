#include "hsi/hypercube.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "hsi/error.hpp"

namespace hsi {
namespace {

Wavelengths to_float_precision(const Wavelengths& w) {
    std::vector<double> v(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = static_cast<double>(static_cast<float>(w[i]));
    return Wavelengths(std::move(v));
}

}  // namespace

Hypercube::Hypercube(std::size_t width, std::size_t height, Wavelengths wavelengths,
                     std::vector<float> data)
    : width_(width),
      height_(height),
      wavelengths_(to_float_precision(wavelengths)),
      data_(std::move(data)) {
    if (width_ == 0 || height_ == 0) {
        fail(Errc::invalid_argument, width_ == 0 ? "width" : "height", "cube must be non-empty");
    }
    if (data_.size() != width_ * height_ * bands()) {
        fail(Errc::size_mismatch, "data",
             "expected " + std::to_string(width_ * height_ * bands()) + " values, got " +
                 std::to_string(data_.size()));
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!std::isfinite(data_[i])) {
            fail(Errc::non_finite_value, "data", "element " + std::to_string(i));
        }
    }
}

Hypercube Hypercube::filled(std::size_t width, std::size_t height, Wavelengths wavelengths,
                            float value) {
    const std::size_t n = width * height * wavelengths.size();
    return Hypercube(width, height, std::move(wavelengths), std::vector<float>(n, value));
}

bool Hypercube::identical(const Hypercube& other) const noexcept {
    return same_shape(other) && wavelengths_ == other.wavelengths_ &&
           std::memcmp(data_.data(), other.data_.data(), data_.size() * sizeof(float)) == 0;
}

}  // namespace hsi
