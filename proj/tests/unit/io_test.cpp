#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "hsi/io.hpp"
#include "hsi/simulate.hpp"
#include "support/expect_error.hpp"
#include "support/oracles.hpp"

namespace {

using hsi::Errc;

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out << bytes;
}

std::string le_floats(std::initializer_list<float> values) {
    std::string out;
    for (float v : values) out.append(reinterpret_cast<const char*>(&v), sizeof v);
    return out;
}

hsi::Hypercube hashed_cube(std::size_t w, std::size_t h, const hsi::Wavelengths& wl, std::uint64_t seed) {
    return hsi::Hypercube(w, h, wl, oracle::hash_plane(seed, w * h * wl.size()));
}

// --- Wavelengths -----------------------------------------------------------

TEST(Wavelengths, RejectsInvalidGrids) {
    EXPECT_HSI_ERROR(hsi::Wavelengths({}), Errc::invalid_argument);
    EXPECT_HSI_ERROR(hsi::Wavelengths({500.0, 500.0}), Errc::non_increasing_wavelengths);
    EXPECT_HSI_ERROR(hsi::Wavelengths({510.0, 500.0}), Errc::non_increasing_wavelengths);
    EXPECT_HSI_ERROR(hsi::Wavelengths({200.0, 500.0}), Errc::out_of_range);
    EXPECT_HSI_ERROR(hsi::Wavelengths({500.0, 2500.0}), Errc::out_of_range);
    EXPECT_HSI_ERROR(hsi::Wavelengths({500.0, std::nan("")}), Errc::non_finite_value);
}

TEST(Wavelengths, LinspaceAndStepped) {
    const auto a = hsi::Wavelengths::linspace(470.0, 620.0, 16);
    ASSERT_EQ(a.size(), 16u);
    EXPECT_DOUBLE_EQ(a.front(), 470.0);
    EXPECT_DOUBLE_EQ(a.back(), 620.0);
    EXPECT_DOUBLE_EQ(a[1] - a[0], 10.0);
    const auto b = hsi::Wavelengths::stepped(450.0, 650.0, 2.0);
    EXPECT_EQ(b.size(), 101u);
    EXPECT_DOUBLE_EQ(b.back(), 650.0);
}

TEST(Wavelengths, TrapezoidWeightsMatchHandQuadrature) {
    const std::vector<double> x{400.0, 401.5, 405.0, 412.0, 413.0};
    const std::vector<double> y{0.2, 0.9, 0.4, 0.7, 0.1};
    const auto w = hsi::Wavelengths(x).trapezoid_weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * y[i];
    EXPECT_NEAR(sum, oracle::trapezoid(x, y), 1e-12);
    EXPECT_DOUBLE_EQ(hsi::Wavelengths({550.0}).trapezoid_weights()[0], 1.0);
}

// --- Hypercube, MosaicPattern, MosaicImage ---------------------------------

TEST(Hypercube, EnforcesInvariants) {
    const hsi::Wavelengths wl({500.0, 510.0, 520.0});
    EXPECT_HSI_ERROR(hsi::Hypercube(2, 2, wl, std::vector<float>(11)), Errc::size_mismatch);
    std::vector<float> nan(12, 0.5f);
    nan[7] = std::numeric_limits<float>::quiet_NaN();
    EXPECT_HSI_ERROR(hsi::Hypercube(2, 2, wl, nan), Errc::non_finite_value);
    std::vector<float> inf(12, 0.5f);
    inf[0] = std::numeric_limits<float>::infinity();
    EXPECT_HSI_ERROR(hsi::Hypercube(2, 2, wl, inf), Errc::non_finite_value);
    // Correction intermediates may be negative.
    EXPECT_NO_THROW(hsi::Hypercube(2, 2, wl, std::vector<float>(12, -0.25f)));
}

TEST(Hypercube, LayoutIsBandInterleavedByPixel) {
    const hsi::Wavelengths wl({500.0, 510.0});
    std::vector<float> data(3 * 2 * 2);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = float(i);
    const hsi::Hypercube cube(3, 2, wl, data);
    EXPECT_EQ(cube.at(2, 1, 1), float((1 * 3 + 2) * 2 + 1));
    EXPECT_EQ(cube.pixel(1, 0)[0], 2.0f);
}

TEST(MosaicPattern, RequiresBijection) {
    EXPECT_NO_THROW(hsi::MosaicPattern(2, {3, 1, 0, 2}));
    EXPECT_HSI_ERROR(hsi::MosaicPattern(2, {0, 1, 1, 2}), Errc::invalid_argument);
    EXPECT_HSI_ERROR(hsi::MosaicPattern(2, {0, 1, 2, 4}), Errc::invalid_argument);
    EXPECT_HSI_ERROR(hsi::MosaicPattern(2, {0, 1, 2}), Errc::size_mismatch);
}

TEST(MosaicPattern, RowMajorAndPositions) {
    const auto p = hsi::MosaicPattern::row_major(4);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            EXPECT_EQ(p.band_at(r, c), r * 4 + c);
            EXPECT_EQ(p.position_of(p.band_at(r, c)), std::make_pair(r, c));
        }
    }
    const hsi::MosaicPattern q(2, {3, 1, 0, 2});
    for (std::size_t b = 0; b < 4; ++b) {
        const auto [r, c] = q.position_of(b);
        EXPECT_EQ(q.band_at(r, c), b);
    }
    EXPECT_EQ(q.band_at_pixel(5, 7), q.band_at(1, 1));
}

TEST(MosaicImage, RejectsNegativeAndNonFinite) {
    const auto p = hsi::MosaicPattern::row_major(2);
    EXPECT_HSI_ERROR(hsi::MosaicImage(2, 2, p, {0.1f, -0.1f, 0.2f, 0.3f}), Errc::out_of_range);
    EXPECT_HSI_ERROR(hsi::MosaicImage(2, 2, p, {0.1f, std::nanf(""), 0.2f, 0.3f}), Errc::non_finite_value);
    EXPECT_HSI_ERROR(hsi::MosaicImage(2, 2, p, {0.1f}), Errc::size_mismatch);
}

// --- Cube files -------------------------------------------------------------

TEST(CubeFile, RoundTripConstantCube) {
    const oracle::TempDir dir;
    const auto cube = hsi::Hypercube::filled(2, 2, hsi::Wavelengths({500.0, 550.0, 600.0}), 0.5f);
    hsi::write_cube(cube, dir / "c.cube");
    EXPECT_TRUE(hsi::read_cube(dir / "c.cube").identical(cube));
}

TEST(CubeFile, RoundTripIsBitExactForArbitraryValues) {
    const oracle::TempDir dir;
    // Irregular grid and values that need all 24 mantissa bits.
    const hsi::Wavelengths wl({401.123456789, 433.3333333, 500.0, 612.7});
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto values = oracle::hash_plane(seed, 7 * 5 * 4);
        for (std::size_t i = 0; i < values.size(); ++i) values[i] = (values[i] - 0.3f) * float(1 + i % 1000);
        const hsi::Hypercube cube(7, 5, wl, values);
        hsi::write_cube(cube, dir / "c.cube");
        EXPECT_TRUE(hsi::read_cube(dir / "c.cube").identical(cube)) << "seed " << seed;
    }
}

TEST(CubeFile, WritingTwiceGivesIdenticalBytes) {
    const oracle::TempDir dir;
    const auto cube = hashed_cube(6, 4, hsi::Wavelengths::linspace(470.0, 620.0, 16), 3);
    hsi::write_cube(cube, dir / "a.cube");
    hsi::write_cube(cube, dir / "b.cube");
    EXPECT_EQ(slurp(dir / "a.cube"), slurp(dir / "b.cube"));
}

TEST(CubeFile, SingleVoxelFileIsHeaderPlusFourBytes) {
    const oracle::TempDir dir;
    hsi::write_cube(hsi::Hypercube::filled(1, 1, hsi::Wavelengths({500.0}), 0.25f), dir / "one.cube");
    const auto bytes = slurp(dir / "one.cube");
    const std::string header = "magic:HSICUBE1\nwidth:1\nheight:1\nbands:1\nwavelengths:500\n\n";
    ASSERT_EQ(bytes.size(), header.size() + 4);
    EXPECT_EQ(bytes.substr(0, header.size()), header);
    EXPECT_EQ(bytes.substr(header.size()), le_floats({0.25f}));
}

TEST(CubeFile, WavelengthCountMismatch) {
    const oracle::TempDir dir;
    spit(dir / "bad.cube", "magic:HSICUBE1\nwidth:1\nheight:1\nbands:4\nwavelengths:500,510,520\n\n" +
                               le_floats({0, 0, 0, 0}));
    EXPECT_HSI_ERROR(hsi::read_cube(dir / "bad.cube"), Errc::wavelength_count_mismatch);
}

TEST(CubeFile, TruncatedPayload) {
    const oracle::TempDir dir;
    hsi::write_cube(hashed_cube(2, 2, hsi::Wavelengths({500.0, 510.0, 520.0}), 1), dir / "c.cube");
    auto bytes = slurp(dir / "c.cube");
    spit(dir / "short.cube", bytes.substr(0, bytes.size() - 4));
    EXPECT_HSI_ERROR(hsi::read_cube(dir / "short.cube"), Errc::size_mismatch);
    spit(dir / "long.cube", bytes + le_floats({1.0f}));
    EXPECT_HSI_ERROR(hsi::read_cube(dir / "long.cube"), Errc::size_mismatch);
}

TEST(CubeFile, MissingFileNamesThePath) {
    const oracle::TempDir dir;
    const auto path = dir / "nowhere.cube";
    try {
        hsi::read_cube(path);
        FAIL() << "expected missing_file";
    } catch (const hsi::Error& e) {
        EXPECT_EQ(e.code(), Errc::missing_file);
        EXPECT_EQ(e.field(), path.string());
        EXPECT_NE(std::string(e.what()).find(path.string()), std::string::npos);
    }
}

TEST(CubeFile, HeaderErrorsAreDistinct) {
    const oracle::TempDir dir;
    const auto payload = le_floats({0.1f, 0.2f});
    spit(dir / "order.cube", "magic:HSICUBE1\nwidth:1\nheight:1\nbands:2\nwavelengths:510,500\n\n" + payload);
    EXPECT_HSI_ERROR(hsi::read_cube(dir / "order.cube"), Errc::non_increasing_wavelengths);
    spit(dir / "magic.cube", "magic:HSICUBE9\nwidth:1\nheight:1\nbands:2\nwavelengths:500,510\n\n" + payload);
    EXPECT_HSI_ERROR(hsi::read_cube(dir / "magic.cube"), Errc::malformed_header);
    spit(dir / "field.cube", "magic:HSICUBE1\nwidth:1\nheight:1\nbands:2\nwavelengths:500,510\nextra:1\n\n" + payload);
    EXPECT_HSI_ERROR(hsi::read_cube(dir / "field.cube"), Errc::malformed_header);
    spit(dir / "missing.cube", "magic:HSICUBE1\nwidth:1\nbands:2\nwavelengths:500,510\n\n" + payload);
    EXPECT_HSI_ERROR(hsi::read_cube(dir / "missing.cube"), Errc::malformed_header);
    spit(dir / "number.cube", "magic:HSICUBE1\nwidth:one\nheight:1\nbands:2\nwavelengths:500,510\n\n" + payload);
    EXPECT_HSI_ERROR(hsi::read_cube(dir / "number.cube"), Errc::malformed_header);
    spit(dir / "noblank.cube", "magic:HSICUBE1\nwidth:1\nheight:1\nbands:2\nwavelengths:500,510\n");
    EXPECT_HSI_ERROR(hsi::read_cube(dir / "noblank.cube"), Errc::malformed_header);
}

TEST(CubeFile, NonFinitePayloadIsRejected) {
    const oracle::TempDir dir;
    spit(dir / "nan.cube", "magic:HSICUBE1\nwidth:1\nheight:1\nbands:2\nwavelengths:500,510\n\n" +
                               le_floats({0.1f, std::numeric_limits<float>::quiet_NaN()}));
    EXPECT_HSI_ERROR(hsi::read_cube(dir / "nan.cube"), Errc::non_finite_value);
}

TEST(CubeFile, UnwritablePath) {
    const oracle::TempDir dir;
    const auto cube = hsi::Hypercube::filled(1, 1, hsi::Wavelengths({500.0}), 0.5f);
    EXPECT_HSI_ERROR(hsi::write_cube(cube, dir / "no" / "such" / "dir.cube"), Errc::unwritable_path);
}

// --- Mosaic, sensor and calibration files -----------------------------------

TEST(MosaicFile, RoundTripWithCustomPattern) {
    const oracle::TempDir dir;
    const hsi::MosaicPattern pattern(3, {4, 0, 8, 1, 5, 2, 7, 3, 6});
    const hsi::MosaicImage mosaic(7, 5, pattern, oracle::hash_plane(9, 35));
    hsi::write_mosaic(mosaic, dir / "m.mosaic");
    EXPECT_TRUE(hsi::read_mosaic(dir / "m.mosaic").identical(mosaic));
    const auto bytes = slurp(dir / "m.mosaic");
    EXPECT_NE(bytes.find("bands:1\n"), std::string::npos);
    EXPECT_NE(bytes.find("pattern:3;4,0,8,1,5,2,7,3,6\n"), std::string::npos);
}

TEST(MosaicFile, RejectsPayloadAndPatternErrors) {
    const oracle::TempDir dir;
    const auto payload = le_floats({0.1f, 0.2f, 0.3f, 0.4f});
    spit(dir / "dup.mosaic", "magic:HSIMOSA1\nwidth:2\nheight:2\nbands:1\npattern:2;0,0,1,2\n\n" + payload);
    EXPECT_HSI_ERROR(hsi::read_mosaic(dir / "dup.mosaic"), Errc::invalid_argument);
    spit(dir / "bands.mosaic", "magic:HSIMOSA1\nwidth:2\nheight:2\nbands:2\npattern:2;0,1,2,3\n\n" + payload);
    EXPECT_HSI_ERROR(hsi::read_mosaic(dir / "bands.mosaic"), Errc::malformed_header);
    spit(dir / "short.mosaic", "magic:HSIMOSA1\nwidth:2\nheight:2\nbands:1\npattern:2;0,1,2,3\n\n" +
                                   le_floats({0.1f}));
    EXPECT_HSI_ERROR(hsi::read_mosaic(dir / "short.mosaic"), Errc::size_mismatch);
}

TEST(SensorFile, RoundTripSyntheticAndCustomSensors) {
    const oracle::TempDir dir;
    const auto synthetic = hsi::build_synthetic_sensor({4, {470.0, 620.0}, 15.0, 0.2, 1.0});
    hsi::write_sensor(synthetic, dir / "s.sensor");
    EXPECT_TRUE(hsi::read_sensor(dir / "s.sensor") == synthetic);

    std::vector<hsi::ResponseCurve> curves;
    for (double c : {505.0, 515.0, 531.0, 540.0}) {
        curves.emplace_back(hsi::Wavelengths({c - 10.0, c - 0.1, c + 7.3}), std::vector<double>{0.1, 1.2, 0.05});
    }
    const hsi::SensorModel custom(hsi::MosaicPattern(2, {1, 3, 0, 2}), curves,
                                  {{510.0, 0.7, 12.5}, {530.0, 0.9, 8.25}}, {500.0, 550.0});
    hsi::write_sensor(custom, dir / "c.sensor");
    EXPECT_TRUE(hsi::read_sensor(dir / "c.sensor") == custom);
}

TEST(SensorFile, MissingAndMalformed) {
    const oracle::TempDir dir;
    EXPECT_HSI_ERROR(hsi::read_sensor(dir / "none.sensor"), Errc::missing_file);
    spit(dir / "bad.sensor", "magic:HSISENSOR1\npattern:2;0,1,2,3\n");
    EXPECT_HSI_ERROR(hsi::read_sensor(dir / "bad.sensor"), Errc::malformed_header);
}

TEST(CalibrationFile, RoundTrip) {
    const oracle::TempDir dir;
    const auto sensor = hsi::build_synthetic_sensor({4, {470.0, 620.0}, 15.0, 0.1, 1.0});
    const auto fit = hsi::fit_calibration(sensor, sensor.knot_grid());
    hsi::write_calibration(fit, dir / "c.calib");
    const auto back = hsi::read_calibration(dir / "c.calib");
    EXPECT_EQ(back.matrix.entries(), fit.matrix.entries());
    EXPECT_EQ(back.matrix.output_wavelengths(), fit.matrix.output_wavelengths());
    EXPECT_EQ(back.residual_rms, fit.residual_rms);
}

// --- Response curves --------------------------------------------------------

TEST(ResponseCurve, EnforcesRange) {
    const hsi::Wavelengths wl({500.0, 510.0});
    EXPECT_HSI_ERROR(hsi::ResponseCurve(wl, {0.5, -0.01}), Errc::out_of_range);
    EXPECT_HSI_ERROR(hsi::ResponseCurve(wl, {0.5, 1.51}), Errc::out_of_range);
    EXPECT_HSI_ERROR(hsi::ResponseCurve(wl, {0.5}), Errc::wavelength_count_mismatch);
    EXPECT_NO_THROW(hsi::ResponseCurve(wl, {0.0, 1.5}));
}

TEST(ResponseCurve, ResampleOntoOwnGridIsIdentity) {
    const hsi::ResponseCurve curve(hsi::Wavelengths({500.0, 503.0, 511.0, 520.0}), {0.1, 0.7, 0.4, 0.0});
    const auto same = hsi::resample_curve(curve, curve.wavelengths());
    ASSERT_EQ(same.size(), curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) EXPECT_EQ(same.response()[i], curve.response()[i]);
}

TEST(ResponseCurve, ConstantCurveStaysConstantInsideSupport) {
    const hsi::ResponseCurve flat(hsi::Wavelengths({500.0, 520.0, 560.0}), {0.8, 0.8, 0.8});
    const auto r = hsi::resample_curve(flat, hsi::Wavelengths({500.0, 501.7, 533.3, 559.9, 560.0}));
    for (double v : r.response()) EXPECT_DOUBLE_EQ(v, 0.8);
}

TEST(ResponseCurve, ZeroOutsideSupport) {
    const hsi::ResponseCurve curve(hsi::Wavelengths({500.0, 520.0}), {0.8, 0.8});
    EXPECT_EQ(curve.evaluate(620.0), 0.0);
    EXPECT_EQ(curve.evaluate(400.0), 0.0);
    const auto r = hsi::resample_curve(curve, hsi::Wavelengths({490.0, 510.0, 620.0}));
    EXPECT_EQ(r.response()[0], 0.0);
    EXPECT_DOUBLE_EQ(r.response()[1], 0.8);
    EXPECT_EQ(r.response()[2], 0.0);
}

TEST(ResponseCurve, ExactOnPiecewiseLinearInput) {
    const hsi::ResponseCurve curve(hsi::Wavelengths({500.0, 504.0, 510.0, 530.0}), {0.0, 1.0, 0.25, 0.75});
    // Midpoints of each segment are averages of the knot values.
    EXPECT_DOUBLE_EQ(curve.evaluate(502.0), 0.5);
    EXPECT_DOUBLE_EQ(curve.evaluate(507.0), 0.625);
    EXPECT_DOUBLE_EQ(curve.evaluate(520.0), 0.5);
    // Refining then sampling back at the knots reproduces the curve.
    const auto fine = hsi::resample_curve(curve, hsi::Wavelengths::stepped(500.0, 530.0, 0.5));
    const auto back = hsi::resample_curve(fine, curve.wavelengths());
    for (std::size_t i = 0; i < curve.size(); ++i) EXPECT_NEAR(back.response()[i], curve.response()[i], 1e-15);
}

TEST(ResponseCurve, ResampleNeedsTwoTargets) {
    const hsi::ResponseCurve curve(hsi::Wavelengths({500.0, 520.0}), {0.8, 0.8});
    EXPECT_HSI_ERROR(hsi::resample_curve(curve, hsi::Wavelengths({510.0})), Errc::invalid_argument);
}

TEST(SensorModel, ValidatesShape) {
    const auto make_curves = [](std::size_t count) {
        std::vector<hsi::ResponseCurve> curves;
        for (std::size_t k = 0; k < count; ++k) {
            const double c = 500.0 + 10.0 * double(k);
            curves.emplace_back(hsi::Wavelengths({c - 5.0, c, c + 5.0}), std::vector<double>{0.1, 0.9, 0.1});
        }
        return curves;
    };
    const auto pattern = hsi::MosaicPattern::row_major(2);
    EXPECT_HSI_ERROR(hsi::SensorModel(pattern, make_curves(3), {}, {480.0, 560.0}), Errc::size_mismatch);
    std::vector<hsi::IdealBandSpec> five(5, {510.0, 0.8, 10.0});
    EXPECT_HSI_ERROR(hsi::SensorModel(pattern, make_curves(4), five, {480.0, 560.0}), Errc::invalid_argument);
    EXPECT_HSI_ERROR(hsi::SensorModel(pattern, make_curves(4), {{600.0, 0.8, 10.0}}, {480.0, 560.0}),
                     Errc::out_of_range);
    EXPECT_HSI_ERROR(hsi::SensorModel(pattern, make_curves(4), {{510.0, 0.0, 10.0}}, {480.0, 560.0}),
                     Errc::out_of_range);
    EXPECT_HSI_ERROR(hsi::SensorModel(pattern, make_curves(4), {{510.0, 0.8, 600.0}}, {480.0, 560.0}),
                     Errc::out_of_range);
    const hsi::SensorModel ok(pattern, make_curves(4), {{505.0, 0.8, 10.0}, {525.0, 0.8, 10.0}}, {480.0, 560.0});
    EXPECT_EQ(ok.measured_centers().values()[3], 530.0);
    EXPECT_EQ(ok.ideal_centers().values()[1], 525.0);
}

TEST(CalibrationMatrix, ChecksCompatibility) {
    const auto sensor = hsi::build_synthetic_sensor({2, {500.0, 560.0}, 15.0, 0.0, 1.0});
    const hsi::CalibrationMatrix good(Eigen::MatrixXd::Identity(4, 4), sensor.ideal_centers());
    EXPECT_NO_THROW(good.check_compatible(sensor));
    const hsi::CalibrationMatrix bad(Eigen::MatrixXd::Identity(3, 4), hsi::Wavelengths({500.0, 520.0, 540.0}));
    EXPECT_HSI_ERROR(bad.check_compatible(sensor), Errc::shape_mismatch);
    EXPECT_HSI_ERROR(hsi::CalibrationMatrix(Eigen::MatrixXd::Identity(3, 4), sensor.ideal_centers()),
                     Errc::wavelength_count_mismatch);
}

}  // namespace
