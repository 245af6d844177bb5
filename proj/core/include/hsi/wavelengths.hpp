#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hsi {

/// Ordered wavelength samples in nm. Strictly increasing, each value in
/// (200, 2500), at least one sample.
class Wavelengths {
public:
    explicit Wavelengths(std::vector<double> values);

    /// `count` samples evenly spaced on [first, last], both ends included.
    static Wavelengths linspace(double first, double last, std::size_t count);
    /// first, first + step, ... up to and including `last` (within 1e-9 nm).
    static Wavelengths stepped(double first, double last, double step);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double front() const noexcept { return values_.front(); }
    double back() const noexcept { return values_.back(); }
    std::span<const double> values() const noexcept { return values_; }

    /// Trapezoidal quadrature weights on this (possibly non-uniform) grid.
    /// A single-sample grid gets weight 1.
    std::vector<double> trapezoid_weights() const;

    bool operator==(const Wavelengths&) const = default;

private:
    std::vector<double> values_;
};

}  // namespace hsi
