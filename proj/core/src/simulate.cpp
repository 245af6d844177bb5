#include "hsi/simulate.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "hsi/error.hpp"

namespace hsi {
namespace {

/// Per-band quadrature weights w_l * r_k(l_l) on the source grid, with
/// their sums as normalisers.
struct BandIntegrator {
    std::size_t bands = 0;
    std::size_t samples = 0;
    std::vector<double> weights;  // bands x samples
    std::vector<double> norms;
};

BandIntegrator make_integrator(const Wavelengths& grid, const SpectralRange& range,
                               std::size_t bands,
                               const std::function<double(std::size_t, double)>& response) {
    const auto trapz = grid.trapezoid_weights();
    bool overlap = false;
    for (double w : grid.values()) overlap = overlap || range.contains(w);
    if (!overlap) {
        fail(Errc::no_overlap, "wavelengths",
             "cube spans [" + std::to_string(grid.front()) + ", " + std::to_string(grid.back()) +
                 "] nm, sensor range is [" + std::to_string(range.min) + ", " +
                 std::to_string(range.max) + "] nm");
    }
    BandIntegrator out{bands, grid.size(), std::vector<double>(bands * grid.size(), 0.0),
                       std::vector<double>(bands, 0.0)};
    for (std::size_t k = 0; k < bands; ++k) {
        double norm = 0.0;
        for (std::size_t l = 0; l < grid.size(); ++l) {
            if (!range.contains(grid[l])) continue;
            const double w = trapz[l] * response(k, grid[l]);
            out.weights[k * grid.size() + l] = w;
            norm += w;
        }
        if (!(norm > 0.0)) {
            fail(Errc::degenerate_responses, "response",
                 "band " + std::to_string(k) + " has no response on the cube's wavelength grid");
        }
        out.norms[k] = norm;
    }
    return out;
}

Hypercube integrate(const Hypercube& hr, const BandIntegrator& integ, Wavelengths labels) {
    const std::size_t src_bands = hr.bands();
    std::vector<float> out(hr.pixel_count() * integ.bands);
    const auto src = hr.data();
    for (std::size_t p = 0; p < hr.pixel_count(); ++p) {
        const float* spectrum = src.data() + p * src_bands;
        for (std::size_t k = 0; k < integ.bands; ++k) {
            const double* w = integ.weights.data() + k * integ.samples;
            double acc = 0.0;
            for (std::size_t l = 0; l < src_bands; ++l) acc += w[l] * static_cast<double>(spectrum[l]);
            out[p * integ.bands + k] = static_cast<float>(acc / integ.norms[k]);
        }
    }
    return Hypercube(hr.width(), hr.height(), std::move(labels), std::move(out));
}

}  // namespace

double lorentzian(double lambda, const IdealBandSpec& spec) noexcept {
    const double root = std::sqrt(spec.lambda0 * spec.lambda0 + spec.fwhm * spec.fwhm) - spec.lambda0;
    const double alpha = root * root / (spec.fwhm * spec.fwhm);
    const double scaled = alpha * lambda * lambda;
    const double offset = lambda - spec.lambda0;
    return spec.qe * scaled / (offset * offset + scaled);
}

Hypercube simulate_spectral(const Hypercube& hr, const SensorModel& sensor) {
    const auto measured = sensor.measured();
    const auto integ = make_integrator(hr.wavelengths(), sensor.range(), measured.size(),
                                       [&](std::size_t k, double l) { return measured[k].evaluate(l); });
    return integrate(hr, integ, sensor.measured_centers());
}

Hypercube simulate_ideal(const Hypercube& hr, const SensorModel& sensor) {
    const auto ideal = sensor.ideal();
    if (ideal.empty()) fail(Errc::empty_ideal_bands, "ideal", "sensor defines no ideal bands");
    const auto integ = make_integrator(hr.wavelengths(), sensor.range(), ideal.size(),
                                       [&](std::size_t k, double l) { return lorentzian(l, ideal[k]); });
    return integrate(hr, integ, sensor.ideal_centers());
}

MosaicImage subsample(const Hypercube& intermediate, const MosaicPattern& pattern) {
    if (intermediate.bands() != pattern.band_count()) {
        fail(Errc::shape_mismatch, "bands",
             "cube has " + std::to_string(intermediate.bands()) + " bands, pattern needs " +
                 std::to_string(pattern.band_count()));
    }
    std::vector<float> out(intermediate.pixel_count());
    for (std::size_t y = 0; y < intermediate.height(); ++y) {
        for (std::size_t x = 0; x < intermediate.width(); ++x) {
            out[y * intermediate.width() + x] = intermediate.at(x, y, pattern.band_at_pixel(x, y));
        }
    }
    return MosaicImage(intermediate.width(), intermediate.height(), pattern, std::move(out));
}

CalibrationFit fit_calibration(const SensorModel& sensor, const Wavelengths& grid) {
    const auto measured = sensor.measured();
    const auto ideal = sensor.ideal();
    if (ideal.empty()) fail(Errc::empty_ideal_bands, "ideal", "sensor defines no ideal bands");
    const auto rows = static_cast<Eigen::Index>(grid.size());
    const auto ns = static_cast<Eigen::Index>(measured.size());
    const auto ni = static_cast<Eigen::Index>(ideal.size());
    if (rows < ns) {
        fail(Errc::degenerate_responses, "grid",
             "grid has fewer samples than measured bands");
    }

    // One row per grid wavelength: measured responses and ideal targets.
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, ns);
    Eigen::MatrixXd target = Eigen::MatrixXd::Zero(rows, ni);
    for (Eigen::Index l = 0; l < rows; ++l) {
        const double lambda = grid[static_cast<std::size_t>(l)];
        if (!sensor.range().contains(lambda)) continue;
        for (Eigen::Index k = 0; k < ns; ++k) m(l, k) = measured[static_cast<std::size_t>(k)].evaluate(lambda);
        for (Eigen::Index k = 0; k < ni; ++k) target(l, k) = lorentzian(lambda, ideal[static_cast<std::size_t>(k)]);
    }
    // Unit-area responses, matching the normalisation of simulated cubes.
    const auto trapz = grid.trapezoid_weights();
    const Eigen::Map<const Eigen::RowVectorXd> weights(trapz.data(), rows);
    const auto normalise = [&](Eigen::MatrixXd& responses, const char* field) {
        for (Eigen::Index k = 0; k < responses.cols(); ++k) {
            const double area = weights * responses.col(k);
            if (!(area > 0.0)) {
                fail(Errc::degenerate_responses, field,
                     "band " + std::to_string(k) + " has no response inside the sensor range");
            }
            responses.col(k) /= area;
        }
    };
    normalise(m, "measured");
    normalise(target, "ideal");

    // Unit-area responses force an exact fit to have unit row sums, so
    // impose that: flat spectra then pass through C unchanged. Eliminate
    // the last coefficient, c_last = 1 - sum(others), and solve the rest.
    const Eigen::VectorXd last = m.col(ns - 1);
    const Eigen::MatrixXd reduced = m.leftCols(ns - 1).colwise() - last;
    Eigen::MatrixXd ct(ns, ni);
    if (ns > 1) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(reduced);
        qr.setThreshold(1e-10);
        if (qr.rank() < ns - 1) {
            fail(Errc::degenerate_responses, "measured",
                 "measured response matrix has rank " + std::to_string(qr.rank() + 1) + " < " +
                     std::to_string(ns));
        }
        ct.topRows(ns - 1) = qr.solve(target.colwise() - last);
    }
    ct.row(ns - 1) = Eigen::RowVectorXd::Ones(ni) - ct.topRows(ns - 1).colwise().sum();
    const Eigen::MatrixXd residual = target - m * ct;
    const double rms = std::sqrt(residual.squaredNorm() / static_cast<double>(residual.size()));
    return {CalibrationMatrix(ct.transpose(), sensor.ideal_centers()), rms};
}

Hypercube white_balance(const Hypercube& raw, const Hypercube& white, const Hypercube& dark) {
    if (!raw.same_shape(white) || !raw.same_shape(dark)) {
        fail(Errc::shape_mismatch, !raw.same_shape(white) ? "white" : "dark",
             "white/dark references must match the raw cube's shape");
    }
    const auto r = raw.data();
    const auto w = white.data();
    const auto d = dark.data();
    std::vector<float> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const float denom = w[i] - d[i];
        out[i] = denom < 1e-6f ? 0.0f : std::max(0.0f, (r[i] - d[i]) / denom);
    }
    return Hypercube(raw.width(), raw.height(), raw.wavelengths(), std::move(out));
}

SensorModel build_synthetic_sensor(const SyntheticSensorParams& p) {
    if (p.n < 2) fail(Errc::invalid_argument, "n", "tile size must be at least 2");
    if (!(p.range.min < p.range.max)) fail(Errc::invalid_argument, "range", "need min < max");
    if (!(p.leakage >= 0.0 && p.leakage < 0.5)) fail(Errc::invalid_argument, "leakage", "need 0 <= leakage < 0.5");
    if (!(p.fwhm > 0.0)) fail(Errc::invalid_argument, "fwhm", "FWHM must be positive");

    const std::size_t bands = p.n * p.n;
    const auto centers = Wavelengths::linspace(p.range.min, p.range.max, bands);
    const auto grid = Wavelengths::stepped(p.range.min, p.range.max, p.curve_step);

    std::vector<IdealBandSpec> ideal;
    for (std::size_t k = 0; k < bands; ++k) {
        ideal.push_back({centers[k], kSyntheticQe, p.fwhm});
        ideal.back().validate();
    }

    std::vector<ResponseCurve> measured;
    for (std::size_t k = 0; k < bands; ++k) {
        std::vector<double> r(grid.size());
        for (std::size_t l = 0; l < grid.size(); ++l) {
            const double lambda = grid[l];
            double v = lorentzian(lambda, ideal[k]);
            if (p.leakage > 0.0) {
                double neighbours = 0.0;
                int count = 0;
                if (k > 0) neighbours += lorentzian(lambda, ideal[k - 1]), ++count;
                if (k + 1 < bands) neighbours += lorentzian(lambda, ideal[k + 1]), ++count;
                v += p.leakage * neighbours / count;
                const IdealBandSpec harmonic{ideal[k].lambda0 * (1.0 + kHarmonicShift),
                                             kSyntheticQe * p.leakage / 2.0, p.fwhm};
                v += lorentzian(lambda, harmonic);
            }
            r[l] = v;
        }
        measured.emplace_back(grid, std::move(r));
    }
    return SensorModel(MosaicPattern::row_major(p.n), std::move(measured), std::move(ideal), p.range);
}

}  // namespace hsi
