#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hsi/hypercube.hpp"
#include "hsi/mosaic.hpp"
#include "hsi/sensor.hpp"

namespace hsi {

struct BandSample {
    std::size_t x;
    std::size_t y;
    float value;
};

/// Sparse samples of one band, in row-major scan order.
struct BandSamples {
    std::size_t band;
    std::vector<BandSample> samples;
};

/// Groups mosaic pixels by the band they sample. Every pixel lands in
/// exactly one group; result is indexed by band.
std::vector<BandSamples> split_bands(const MosaicImage& mosaic);

/// Full-resolution n^2-band cube by separable linear interpolation of each
/// band between its own samples, edge-clamped. `band_labels` supplies the
/// output wavelengths (one per band).
Hypercube bilinear_demosaic(const MosaicImage& mosaic, const Wavelengths& band_labels);

/// Same, labelled with the sensor's measured-band centres.
Hypercube bilinear_demosaic(const MosaicImage& mosaic, const SensorModel& sensor);

enum class NegativeValues { keep, clamp };

/// Per-pixel matrix-vector product with C. Keep negatives for loss
/// computation, clamp them for final products.
Hypercube apply_correction(const Hypercube& cube, const CalibrationMatrix& calibration,
                           NegativeValues negatives = NegativeValues::keep);

/// Bilinear demosaic (or the supplied refined cube in its place), then
/// correction, clamped to >= 0.
Hypercube demosaic_pipeline(const MosaicImage& mosaic, const SensorModel& sensor,
                            const CalibrationMatrix& calibration,
                            const std::optional<Hypercube>& refined = std::nullopt);

}  // namespace hsi
