#pragma once

#include <cstddef>

#include "hsi/hypercube.hpp"
#include "hsi/mosaic.hpp"
#include "hsi/sensor.hpp"

namespace hsi {

/// Lorentzian band-pass response expressed in wavelength:
///
///   f(l) = QE * a l^2 / ((l - l0)^2 + a l^2),
///   a    = (sqrt(l0^2 + FWHM^2) - l0)^2 / FWHM^2
///
/// Its half-maximum points lie exactly FWHM apart.
double lorentzian(double lambda, const IdealBandSpec& spec) noexcept;

/// Measured-band (intermediate) cube: for every pixel and band k, the
/// trapezoidal integral of the spectrum times measured response k on the
/// source grid, divided by the integral of the response alone. Responses
/// are zero outside the sensor range. A flat spectrum maps to itself.
Hypercube simulate_spectral(const Hypercube& hr, const SensorModel& sensor);

/// Same integral with the ideal Lorentzian responses.
Hypercube simulate_ideal(const Hypercube& hr, const SensorModel& sensor);

/// Keeps one band per pixel: out(x, y) = cube(x, y, band_at[y mod n][x mod n]).
MosaicImage subsample(const Hypercube& intermediate, const MosaicPattern& pattern);

/// Least-squares C minimising sum over grid of |ideal(l) - C measured(l)|^2,
/// with every response scaled to unit area over the grid (the same
/// normalisation as the simulated cubes), so C maps intermediate cubes to
/// ideal cubes. Each row of C is constrained to sum to 1 (as an exact fit
/// must), so flat spectra map to themselves. Responses are zero outside
/// the sensor range. Throws degenerate_responses when the measured
/// responses are rank deficient.
CalibrationFit fit_calibration(const SensorModel& sensor, const Wavelengths& grid);

/// Flat-field correction max(0, (raw - dark) / (white - dark)); elements
/// whose denominator is below 1e-6 become 0.
Hypercube white_balance(const Hypercube& raw, const Hypercube& white, const Hypercube& dark);

struct SyntheticSensorParams {
    std::size_t n = 4;
    SpectralRange range{470.0, 620.0};
    double fwhm = 15.0;
    double leakage = 0.0;
    double curve_step = 1.0;  ///< sampling of the measured curves, nm
};

/// Stand-in for factory sensor data. n^2 ideal Lorentzians (QE 0.85)
/// evenly spaced over the range; measured curve k adds `leakage` times the
/// mean of its spectral neighbours plus a harmonic lobe at 1.35 l0 with
/// amplitude leakage / 2, all truncated to the range.
SensorModel build_synthetic_sensor(const SyntheticSensorParams& params);

inline constexpr double kSyntheticQe = 0.85;
inline constexpr double kHarmonicShift = 0.35;

}  // namespace hsi
