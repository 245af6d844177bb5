#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hsi/mosaic.hpp"
#include "hsi/wavelengths.hpp"

namespace hsi {

/// Sampled quantum-efficiency curve. Responses lie in [0, 1.5]; the
/// headroom above 1 leaves space for synthetic harmonic lobes.
class ResponseCurve {
public:
    ResponseCurve(Wavelengths wavelengths, std::vector<double> response);

    const Wavelengths& wavelengths() const noexcept { return wavelengths_; }
    std::span<const double> response() const noexcept { return response_; }
    std::size_t size() const noexcept { return response_.size(); }

    /// Piecewise-linear value at `lambda`; zero outside [front, back].
    double evaluate(double lambda) const noexcept;

    /// Wavelength of the largest sample (first one on ties).
    double peak_wavelength() const noexcept;

private:
    Wavelengths wavelengths_;
    std::vector<double> response_;
};

/// Piecewise-linear resampling onto `target`, zero outside the curve's support.
ResponseCurve resample_curve(const ResponseCurve& curve, const Wavelengths& target);

/// Parameters of a Lorentzian band-pass response.
struct IdealBandSpec {
    double lambda0;  ///< centre wavelength, nm
    double qe;       ///< peak quantum efficiency, (0, 1]
    double fwhm;     ///< full width at half maximum in wavelength, nm

    void validate() const;
    bool operator==(const IdealBandSpec&) const = default;
};

struct SpectralRange {
    double min;
    double max;
    bool contains(double lambda) const noexcept { return lambda >= min && lambda <= max; }
    bool operator==(const SpectralRange&) const = default;
};

/// Snapshot sensor: filter layout, one measured response per mosaic band
/// and the ideal bands the calibration should map onto.
///
/// The band index order of measured curves must follow their peak
/// wavelengths, which label the bands of intermediate cubes.
class SensorModel {
public:
    SensorModel(MosaicPattern pattern, std::vector<ResponseCurve> measured,
                std::vector<IdealBandSpec> ideal, SpectralRange range);

    const MosaicPattern& pattern() const noexcept { return pattern_; }
    std::span<const ResponseCurve> measured() const noexcept { return measured_; }
    std::span<const IdealBandSpec> ideal() const noexcept { return ideal_; }
    const SpectralRange& range() const noexcept { return range_; }

    std::size_t measured_band_count() const noexcept { return measured_.size(); }
    std::size_t ideal_band_count() const noexcept { return ideal_.size(); }

    /// Band labels of intermediate (measured-band) cubes: curve peaks.
    Wavelengths measured_centers() const;
    /// Band labels of ideal cubes: the Lorentzian centres.
    Wavelengths ideal_centers() const;

    /// Sorted union of all measured-curve knots inside the sensor range.
    Wavelengths knot_grid() const;

    bool operator==(const SensorModel& other) const noexcept;

private:
    MosaicPattern pattern_;
    std::vector<ResponseCurve> measured_;
    std::vector<IdealBandSpec> ideal_;
    SpectralRange range_;
};

/// n_i x n_s linear map from measured to ideal bands, plus the wavelength
/// labels of its output bands.
class CalibrationMatrix {
public:
    CalibrationMatrix(Eigen::MatrixXd entries, Wavelengths output_wavelengths);

    std::size_t rows() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
    std::size_t cols() const noexcept { return static_cast<std::size_t>(entries_.cols()); }
    const Eigen::MatrixXd& entries() const noexcept { return entries_; }
    const Wavelengths& output_wavelengths() const noexcept { return output_wavelengths_; }

    /// Throws shape_mismatch unless rows = |ideal| and cols = n^2.
    void check_compatible(const SensorModel& sensor) const;

private:
    Eigen::MatrixXd entries_;
    Wavelengths output_wavelengths_;
};

/// Fitted calibration with the RMS of the response-space residual.
struct CalibrationFit {
    CalibrationMatrix matrix;
    double residual_rms;
};

}  // namespace hsi
