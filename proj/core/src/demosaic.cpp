#include "hsi/demosaic.hpp"

#include <string>

#include "hsi/error.hpp"
#include "hsi/kernels.hpp"

namespace hsi {

std::vector<BandSamples> split_bands(const MosaicImage& mosaic) {
    const auto& pattern = mosaic.pattern();
    std::vector<BandSamples> groups(pattern.band_count());
    for (std::size_t b = 0; b < groups.size(); ++b) groups[b].band = b;
    for (std::size_t y = 0; y < mosaic.height(); ++y) {
        for (std::size_t x = 0; x < mosaic.width(); ++x) {
            groups[pattern.band_at_pixel(x, y)].samples.push_back({x, y, mosaic.at(x, y)});
        }
    }
    return groups;
}

Hypercube bilinear_demosaic(const MosaicImage& mosaic, const Wavelengths& band_labels) {
    const kernels::BilinearPlan plan(mosaic.width(), mosaic.height(), mosaic.pattern());
    if (band_labels.size() != plan.bands()) {
        fail(Errc::wavelength_count_mismatch, "band_labels",
             std::to_string(band_labels.size()) + " labels for " + std::to_string(plan.bands()) + " bands");
    }
    std::vector<float> out(mosaic.width() * mosaic.height() * plan.bands());
    plan.run(mosaic.data(), out);
    return Hypercube(mosaic.width(), mosaic.height(), band_labels, std::move(out));
}

Hypercube bilinear_demosaic(const MosaicImage& mosaic, const SensorModel& sensor) {
    if (!(mosaic.pattern() == sensor.pattern())) {
        fail(Errc::shape_mismatch, "pattern", "mosaic pattern differs from the sensor's");
    }
    return bilinear_demosaic(mosaic, sensor.measured_centers());
}

Hypercube apply_correction(const Hypercube& cube, const CalibrationMatrix& calibration,
                           NegativeValues negatives) {
    if (cube.bands() != calibration.cols()) {
        fail(Errc::shape_mismatch, "calibration",
             "cube has " + std::to_string(cube.bands()) + " bands, matrix expects " +
                 std::to_string(calibration.cols()));
    }
    const Eigen::MatrixXf matrix = calibration.entries().cast<float>();
    std::vector<float> out(cube.pixel_count() * calibration.rows());
    kernels::correct(cube.data(), cube.pixel_count(), matrix, out, negatives == NegativeValues::clamp);
    return Hypercube(cube.width(), cube.height(), calibration.output_wavelengths(), std::move(out));
}

Hypercube demosaic_pipeline(const MosaicImage& mosaic, const SensorModel& sensor,
                            const CalibrationMatrix& calibration,
                            const std::optional<Hypercube>& refined) {
    calibration.check_compatible(sensor);
    if (refined) {
        if (refined->width() != mosaic.width() || refined->height() != mosaic.height() ||
            refined->bands() != sensor.measured_band_count()) {
            fail(Errc::shape_mismatch, "refined",
                 "refined cube is " + std::to_string(refined->width()) + "x" +
                     std::to_string(refined->height()) + "x" + std::to_string(refined->bands()) +
                     ", expected " + std::to_string(mosaic.width()) + "x" +
                     std::to_string(mosaic.height()) + "x" +
                     std::to_string(sensor.measured_band_count()));
        }
        return apply_correction(*refined, calibration, NegativeValues::clamp);
    }
    return apply_correction(bilinear_demosaic(mosaic, sensor), calibration, NegativeValues::clamp);
}

}  // namespace hsi
