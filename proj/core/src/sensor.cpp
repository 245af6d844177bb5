#include "hsi/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsi/error.hpp"

namespace hsi {

ResponseCurve::ResponseCurve(Wavelengths wavelengths, std::vector<double> response)
    : wavelengths_(std::move(wavelengths)), response_(std::move(response)) {
    if (response_.size() != wavelengths_.size()) {
        fail(Errc::wavelength_count_mismatch, "response",
             std::to_string(response_.size()) + " responses for " +
                 std::to_string(wavelengths_.size()) + " wavelengths");
    }
    if (response_.size() < 2) {
        fail(Errc::invalid_argument, "response", "a curve needs at least two samples");
    }
    for (double r : response_) {
        if (!std::isfinite(r)) fail(Errc::non_finite_value, "response", "");
        if (r < 0.0 || r > 1.5) {
            fail(Errc::out_of_range, "response", std::to_string(r) + " outside [0, 1.5]");
        }
    }
}

double ResponseCurve::evaluate(double lambda) const noexcept {
    const auto w = wavelengths_.values();
    if (lambda < w.front() || lambda > w.back()) return 0.0;
    auto hi = std::lower_bound(w.begin(), w.end(), lambda);
    const auto i = static_cast<std::size_t>(hi - w.begin());
    if (*hi == lambda) return response_[i];
    const double t = (lambda - w[i - 1]) / (w[i] - w[i - 1]);
    return response_[i - 1] + t * (response_[i] - response_[i - 1]);
}

double ResponseCurve::peak_wavelength() const noexcept {
    const auto it = std::max_element(response_.begin(), response_.end());
    return wavelengths_[static_cast<std::size_t>(it - response_.begin())];
}

ResponseCurve resample_curve(const ResponseCurve& curve, const Wavelengths& target) {
    std::vector<double> out(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) out[i] = curve.evaluate(target[i]);
    if (out.size() < 2) {
        fail(Errc::invalid_argument, "target", "resampling needs at least two target samples");
    }
    return ResponseCurve(target, std::move(out));
}

void IdealBandSpec::validate() const {
    if (!std::isfinite(lambda0) || !std::isfinite(qe) || !std::isfinite(fwhm)) {
        fail(Errc::non_finite_value, "ideal", "");
    }
    if (!(qe > 0.0 && qe <= 1.0)) fail(Errc::out_of_range, "qe", "QE must lie in (0, 1]");
    if (!(fwhm > 0.0)) fail(Errc::out_of_range, "fwhm", "FWHM must be positive");
    if (!(fwhm < lambda0)) fail(Errc::out_of_range, "fwhm", "FWHM must be below lambda0");
}

SensorModel::SensorModel(MosaicPattern pattern, std::vector<ResponseCurve> measured,
                         std::vector<IdealBandSpec> ideal, SpectralRange range)
    : pattern_(std::move(pattern)),
      measured_(std::move(measured)),
      ideal_(std::move(ideal)),
      range_(range) {
    if (!(range_.min < range_.max) || range_.min <= 200.0 || range_.max >= 2500.0) {
        fail(Errc::out_of_range, "range", "need 200 < min < max < 2500");
    }
    if (measured_.size() != pattern_.band_count()) {
        fail(Errc::size_mismatch, "measured",
             "expected " + std::to_string(pattern_.band_count()) + " measured curves, got " +
                 std::to_string(measured_.size()));
    }
    if (ideal_.size() > measured_.size()) {
        fail(Errc::invalid_argument, "ideal", "more ideal bands than measured bands");
    }
    for (std::size_t k = 0; k < ideal_.size(); ++k) {
        ideal_[k].validate();
        if (!range_.contains(ideal_[k].lambda0)) {
            fail(Errc::out_of_range, "ideal", "band " + std::to_string(k) + " centre outside range");
        }
        if (k > 0 && !(ideal_[k].lambda0 > ideal_[k - 1].lambda0)) {
            fail(Errc::non_increasing_wavelengths, "ideal", "ideal centres must increase");
        }
    }
    for (std::size_t k = 1; k < measured_.size(); ++k) {
        if (!(measured_[k].peak_wavelength() > measured_[k - 1].peak_wavelength())) {
            fail(Errc::non_increasing_wavelengths, "measured",
                 "measured peaks must increase with band index (band " + std::to_string(k) + ")");
        }
    }
}

Wavelengths SensorModel::measured_centers() const {
    std::vector<double> c(measured_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = measured_[k].peak_wavelength();
    return Wavelengths(std::move(c));
}

Wavelengths SensorModel::ideal_centers() const {
    if (ideal_.empty()) fail(Errc::empty_ideal_bands, "ideal", "");
    std::vector<double> c(ideal_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = ideal_[k].lambda0;
    return Wavelengths(std::move(c));
}

Wavelengths SensorModel::knot_grid() const {
    std::vector<double> knots;
    for (const auto& curve : measured_) {
        for (double w : curve.wavelengths().values()) {
            if (range_.contains(w)) knots.push_back(w);
        }
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    if (knots.empty()) fail(Errc::no_overlap, "measured", "no curve knots inside the sensor range");
    return Wavelengths(std::move(knots));
}

bool SensorModel::operator==(const SensorModel& other) const noexcept {
    if (!(pattern_ == other.pattern_) || !(range_ == other.range_) || ideal_ != other.ideal_ ||
        measured_.size() != other.measured_.size()) {
        return false;
    }
    for (std::size_t k = 0; k < measured_.size(); ++k) {
        const auto& a = measured_[k];
        const auto& b = other.measured_[k];
        if (!(a.wavelengths() == b.wavelengths()) ||
            !std::equal(a.response().begin(), a.response().end(), b.response().begin(),
                        b.response().end())) {
            return false;
        }
    }
    return true;
}

CalibrationMatrix::CalibrationMatrix(Eigen::MatrixXd entries, Wavelengths output_wavelengths)
    : entries_(std::move(entries)), output_wavelengths_(std::move(output_wavelengths)) {
    if (entries_.rows() == 0 || entries_.cols() == 0) {
        fail(Errc::invalid_argument, "calibration", "empty matrix");
    }
    if (static_cast<std::size_t>(entries_.rows()) != output_wavelengths_.size()) {
        fail(Errc::wavelength_count_mismatch, "calibration",
             std::to_string(entries_.rows()) + " rows but " +
                 std::to_string(output_wavelengths_.size()) + " output wavelengths");
    }
    if (!entries_.allFinite()) fail(Errc::non_finite_value, "calibration", "");
}

void CalibrationMatrix::check_compatible(const SensorModel& sensor) const {
    if (rows() != sensor.ideal_band_count() || cols() != sensor.measured_band_count()) {
        fail(Errc::shape_mismatch, "calibration",
             "matrix is " + std::to_string(rows()) + "x" + std::to_string(cols()) +
                 ", sensor needs " + std::to_string(sensor.ideal_band_count()) + "x" +
                 std::to_string(sensor.measured_band_count()));
    }
}

}  // namespace hsi
