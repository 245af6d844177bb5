#pragma once

#include "hsi/colorimetry.hpp"
#include "hsi/demosaic.hpp"
#include "hsi/error.hpp"
#include "hsi/frame_pipeline.hpp"
#include "hsi/hypercube.hpp"
#include "hsi/io.hpp"
#include "hsi/metrics.hpp"
#include "hsi/mosaic.hpp"
#include "hsi/sensor.hpp"
#include "hsi/simulate.hpp"
#include "hsi/spectra.hpp"
#include "hsi/wavelengths.hpp"
