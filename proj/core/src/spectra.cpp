#include "hsi/spectra.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "hsi/error.hpp"
#include "spectra_tables.hpp"

namespace hsi {
namespace {

/// Numeric columns of an embedded CSV; '#' comments and the header row are skipped.
std::vector<std::vector<double>> parse_csv(const char* text, std::size_t columns) {
    std::vector<std::vector<double>> cols(columns);
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream row(line);
        std::string cell;
        for (std::size_t c = 0; c < columns; ++c) {
            if (!std::getline(row, cell, ',')) fail(Errc::malformed_header, "table", "short row: " + line);
            cols[c].push_back(std::stod(cell));
        }
    }
    return cols;
}

}  // namespace

SampledSpectrum::SampledSpectrum(Wavelengths wavelengths, std::vector<double> values)
    : wavelengths_(std::move(wavelengths)), values_(std::move(values)) {
    if (values_.size() != wavelengths_.size()) {
        fail(Errc::wavelength_count_mismatch, "spectrum", "value count differs from wavelength count");
    }
}

double SampledSpectrum::at(double lambda) const {
    if (!covers(lambda)) {
        fail(Errc::out_of_range, "wavelengths",
             std::to_string(lambda) + " nm outside table range [" + std::to_string(wavelengths_.front()) +
                 ", " + std::to_string(wavelengths_.back()) + "]");
    }
    const auto w = wavelengths_.values();
    const auto it = std::lower_bound(w.begin(), w.end(), lambda);
    const auto i = static_cast<std::size_t>(it - w.begin());
    if (*it == lambda) return values_[i];
    const double t = (lambda - w[i - 1]) / (w[i] - w[i - 1]);
    return values_[i - 1] + t * (values_[i] - values_[i - 1]);
}

const ColorMatchingFunctions& cie1931_observer() {
    static const ColorMatchingFunctions cmf = [] {
        auto cols = parse_csv(detail::kCie1931Csv, 4);
        const Wavelengths wl(cols[0]);
        return ColorMatchingFunctions{SampledSpectrum(wl, std::move(cols[1])),
                                      SampledSpectrum(wl, std::move(cols[2])),
                                      SampledSpectrum(wl, std::move(cols[3]))};
    }();
    return cmf;
}

const SampledSpectrum& d65_illuminant() {
    static const SampledSpectrum d65 = [] {
        auto cols = parse_csv(detail::kD65Csv, 2);
        return SampledSpectrum(Wavelengths(std::move(cols[0])), std::move(cols[1]));
    }();
    return d65;
}

const HemoglobinExtinction& hemoglobin_extinction() {
    static const HemoglobinExtinction table = [] {
        auto cols = parse_csv(detail::kHemoglobinCsv, 3);
        double peak = 0.0;
        for (std::size_t c = 1; c < 3; ++c) {
            for (double v : cols[c]) peak = std::max(peak, v);
        }
        for (std::size_t c = 1; c < 3; ++c) {
            for (double& v : cols[c]) v /= peak;
        }
        const Wavelengths wl(cols[0]);
        return HemoglobinExtinction{SampledSpectrum(wl, std::move(cols[1])),
                                    SampledSpectrum(wl, std::move(cols[2]))};
    }();
    return table;
}

}  // namespace hsi
