#include "hsi/wavelengths.hpp"

#include <cmath>
#include <string>

#include "hsi/error.hpp"

namespace hsi {

Wavelengths::Wavelengths(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        fail(Errc::invalid_argument, "wavelengths", "at least one wavelength required");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double w = values_[i];
        if (!std::isfinite(w)) {
            fail(Errc::non_finite_value, "wavelengths", "wavelength " + std::to_string(i));
        }
        if (w <= 200.0 || w >= 2500.0) {
            fail(Errc::out_of_range, "wavelengths",
                 std::to_string(w) + " nm outside (200, 2500)");
        }
        if (i > 0 && !(w > values_[i - 1])) {
            fail(Errc::non_increasing_wavelengths, "wavelengths",
                 "sample " + std::to_string(i) + " is not above its predecessor");
        }
    }
}

Wavelengths Wavelengths::linspace(double first, double last, std::size_t count) {
    if (count == 0) fail(Errc::invalid_argument, "count", "empty grid");
    if (count == 1) return Wavelengths({first});
    std::vector<double> v(count);
    const double step = (last - first) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) v[i] = first + step * static_cast<double>(i);
    v.back() = last;
    return Wavelengths(std::move(v));
}

Wavelengths Wavelengths::stepped(double first, double last, double step) {
    if (!(step > 0.0)) fail(Errc::invalid_argument, "step", "step must be positive");
    std::vector<double> v;
    for (std::size_t i = 0;; ++i) {
        const double w = first + step * static_cast<double>(i);
        if (w > last + 1e-9) break;
        v.push_back(w);
    }
    return Wavelengths(std::move(v));
}

std::vector<double> Wavelengths::trapezoid_weights() const {
    std::vector<double> w(values_.size(), 0.0);
    if (values_.size() == 1) {
        w[0] = 1.0;
        return w;
    }
    for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
        const double half = 0.5 * (values_[i + 1] - values_[i]);
        w[i] += half;
        w[i + 1] += half;
    }
    return w;
}

}  // namespace hsi
