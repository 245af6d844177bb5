#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>

#include "hsi/hypercube.hpp"
#include "hsi/mosaic.hpp"
#include "hsi/sensor.hpp"

namespace hsi {

// Exchange formats. Cubes and mosaics share a text header of `key:value`
// lines ended by a blank line, followed by little-endian float32 payload:
//
//   magic:HSICUBE1            magic:HSIMOSA1
//   width:<u32>               width:<u32>
//   height:<u32>              height:<u32>
//   bands:<u32>               bands:1
//   wavelengths:<f32,...>     pattern:<n>;<n^2 band indices, row-major>
//   <blank line>              <blank line>
//   payload (y, x, band)      payload (y, x)
//
// Sensor models and calibration matrices are plain text; numbers are
// written in shortest round-trip form so reading them back is exact.

Hypercube read_cube(const std::filesystem::path& path);
void write_cube(const Hypercube& cube, const std::filesystem::path& path);

MosaicImage read_mosaic(const std::filesystem::path& path);
void write_mosaic(const MosaicImage& mosaic, const std::filesystem::path& path);

SensorModel read_sensor(const std::filesystem::path& path);
void write_sensor(const SensorModel& sensor, const std::filesystem::path& path);

CalibrationFit read_calibration(const std::filesystem::path& path);
void write_calibration(const CalibrationFit& fit, const std::filesystem::path& path);

/// Float RGB triples: `magic:HSIRGBF1`, width, height, `channels:3`, blank
/// line, then width*height*3 little-endian float32.
void write_rgb_raw(std::size_t width, std::size_t height, std::span<const float> rgb,
                   const std::filesystem::path& path);

/// 8-bit PNG, `channels` = 1 (gray) or 3 (RGB). Output bytes are
/// deterministic for identical input.
void write_png(const std::filesystem::path& path, std::size_t width, std::size_t height,
               std::size_t channels, std::span<const std::uint8_t> pixels);

}  // namespace hsi
