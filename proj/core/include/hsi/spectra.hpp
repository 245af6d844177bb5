#pragma once

#include <vector>

#include "hsi/wavelengths.hpp"

namespace hsi {

/// Tabulated spectral quantity with linear interpolation between samples.
class SampledSpectrum {
public:
    SampledSpectrum(Wavelengths wavelengths, std::vector<double> values);

    const Wavelengths& wavelengths() const noexcept { return wavelengths_; }
    const std::vector<double>& values() const noexcept { return values_; }
    bool covers(double lambda) const noexcept {
        return lambda >= wavelengths_.front() && lambda <= wavelengths_.back();
    }

    /// Throws out_of_range outside the tabulated interval.
    double at(double lambda) const;

private:
    Wavelengths wavelengths_;
    std::vector<double> values_;
};

struct ColorMatchingFunctions {
    SampledSpectrum x;
    SampledSpectrum y;
    SampledSpectrum z;
};

/// CIE 1931 2-degree observer, 360-830 nm at 5 nm.
const ColorMatchingFunctions& cie1931_observer();

/// CIE standard illuminant D65 relative power, 360-830 nm at 5 nm.
const SampledSpectrum& d65_illuminant();

/// Molar extinction spectra of oxy- and deoxyhemoglobin, 450-650 nm at
/// 2 nm, divided by the largest tabulated coefficient (103292 cm^-1/M) so
/// that values lie in (0, 1]. Ratios, and hence SO2, are unaffected.
struct HemoglobinExtinction {
    SampledSpectrum oxy;
    SampledSpectrum deoxy;
};

const HemoglobinExtinction& hemoglobin_extinction();

}  // namespace hsi
