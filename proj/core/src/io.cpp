#include "hsi/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "hsi/error.hpp"

namespace hsi {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kCubeMagic = "HSICUBE1";
constexpr std::string_view kMosaicMagic = "HSIMOSA1";
constexpr std::string_view kRgbMagic = "HSIRGBF1";
constexpr std::string_view kSensorMagic = "HSISENSOR1";
constexpr std::string_view kCalibMagic = "HSICALIB1";

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::missing_file, path.string(), "cannot open " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::unwritable_path, path.string(), "cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) fail(Errc::unwritable_path, path.string(), "write failed for " + path.string());
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

template <typename T>
T parse_number(std::string_view text, const std::string& field) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
        fail(Errc::malformed_header, field, "cannot parse '" + std::string(text) + "'");
    }
    return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view text, const std::string& field) {
    std::vector<T> values;
    if (trim(text).empty()) return values;
    for (auto part : split(text, ',')) values.push_back(parse_number<T>(part, field));
    return values;
}

template <typename Range>
std::string join(const Range& values) {
    return fmt::format("{}", fmt::join(values, ","));
}

struct Line {
    std::string key;
    std::string value;
};

std::vector<Line> parse_lines(std::string_view text, const std::string& origin) {
    std::vector<Line> lines;
    for (auto raw : split(text, '\n')) {
        if (raw.empty()) continue;
        const auto colon = raw.find(':');
        if (colon == std::string_view::npos) {
            fail(Errc::malformed_header, origin, "line without ':' in " + origin);
        }
        lines.push_back({std::string(trim(raw.substr(0, colon))),
                         std::string(trim(raw.substr(colon + 1)))});
    }
    return lines;
}

/// Header of a binary exchange file plus where its payload starts.
struct BinaryFile {
    std::map<std::string, std::string> fields;
    std::string bytes;
    std::size_t payload_offset = 0;

    const std::string& get(const std::string& key) const {
        const auto it = fields.find(key);
        if (it == fields.end()) fail(Errc::malformed_header, key, "missing field '" + key + "'");
        return it->second;
    }
};

BinaryFile read_binary(const fs::path& path, std::string_view magic,
                       std::initializer_list<std::string_view> allowed) {
    BinaryFile file;
    file.bytes = read_file(path);
    const auto end = file.bytes.find("\n\n");
    if (end == std::string::npos) {
        fail(Errc::malformed_header, "header", "no blank line ends the header in " + path.string());
    }
    file.payload_offset = end + 2;
    for (auto& line : parse_lines(std::string_view(file.bytes).substr(0, end), path.string())) {
        if (std::find(allowed.begin(), allowed.end(), line.key) == allowed.end()) {
            fail(Errc::malformed_header, line.key, "unknown field '" + line.key + "'");
        }
        if (!file.fields.emplace(line.key, line.value).second) {
            fail(Errc::malformed_header, line.key, "duplicate field '" + line.key + "'");
        }
    }
    if (file.get("magic") != magic) {
        fail(Errc::malformed_header, "magic", "expected " + std::string(magic));
    }
    return file;
}

std::vector<float> decode_payload(const BinaryFile& file, std::size_t count) {
    const std::size_t available = file.bytes.size() - file.payload_offset;
    if (available != count * sizeof(float)) {
        fail(Errc::size_mismatch, "payload",
             "expected " + std::to_string(count * sizeof(float)) + " payload bytes, found " +
                 std::to_string(available));
    }
    std::vector<float> values(count);
    std::memcpy(values.data(), file.bytes.data() + file.payload_offset, count * sizeof(float));
    if constexpr (std::endian::native == std::endian::big) {
        for (auto& v : values) {
            auto bits = std::bit_cast<std::uint32_t>(v);
            bits = ((bits & 0xFFu) << 24) | ((bits & 0xFF00u) << 8) | ((bits >> 8) & 0xFF00u) | (bits >> 24);
            v = std::bit_cast<float>(bits);
        }
    }
    return values;
}

void append_payload(std::string& out, std::span<const float> values) {
    for (float v : values) {
        if (!std::isfinite(v)) fail(Errc::non_finite_value, "data", "");
        auto bits = std::bit_cast<std::uint32_t>(v);
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFFu));
    }
}

std::size_t parse_dim(const BinaryFile& file, const std::string& key) {
    const auto v = parse_number<std::uint32_t>(file.get(key), key);
    return static_cast<std::size_t>(v);
}

std::string pattern_text(const MosaicPattern& p) {
    return fmt::format("{};{}", p.n(), join(p.layout()));
}

MosaicPattern parse_pattern(std::string_view text) {
    const auto semi = text.find(';');
    if (semi == std::string_view::npos) fail(Errc::malformed_header, "pattern", "expected '<n>;<indices>'");
    const auto n = parse_number<std::size_t>(trim(text.substr(0, semi)), "pattern");
    return MosaicPattern(n, parse_list<std::size_t>(text.substr(semi + 1), "pattern"));
}

/// Sequential reader for the line-oriented text formats.
class LineCursor {
public:
    LineCursor(std::vector<Line> lines, std::string origin)
        : lines_(std::move(lines)), origin_(std::move(origin)) {}

    const std::string& expect(const std::string& key) {
        if (pos_ >= lines_.size()) fail(Errc::malformed_header, key, "missing field '" + key + "' in " + origin_);
        const auto& line = lines_[pos_++];
        if (line.key != key) {
            fail(Errc::malformed_header, key,
                 "expected field '" + key + "', found '" + line.key + "' in " + origin_);
        }
        return line.value;
    }
    void expect_end() const {
        if (pos_ != lines_.size()) {
            fail(Errc::malformed_header, lines_[pos_].key, "unexpected trailing field in " + origin_);
        }
    }

private:
    std::vector<Line> lines_;
    std::string origin_;
    std::size_t pos_ = 0;
};

}  // namespace

Hypercube read_cube(const fs::path& path) {
    const auto file = read_binary(path, kCubeMagic, {"magic", "width", "height", "bands", "wavelengths"});
    const auto width = parse_dim(file, "width");
    const auto height = parse_dim(file, "height");
    const auto bands = parse_dim(file, "bands");
    const auto wl = parse_list<float>(file.get("wavelengths"), "wavelengths");
    if (wl.size() != bands) {
        fail(Errc::wavelength_count_mismatch, "wavelengths",
             "header declares " + std::to_string(bands) + " bands but " + std::to_string(wl.size()) +
                 " wavelengths");
    }
    std::vector<double> wavelengths(wl.begin(), wl.end());
    auto data = decode_payload(file, width * height * bands);
    return Hypercube(width, height, Wavelengths(std::move(wavelengths)), std::move(data));
}

void write_cube(const Hypercube& cube, const fs::path& path) {
    std::vector<float> wl;
    for (double w : cube.wavelengths().values()) wl.push_back(static_cast<float>(w));
    std::string out = fmt::format("magic:{}\nwidth:{}\nheight:{}\nbands:{}\nwavelengths:{}\n\n",
                                  kCubeMagic, cube.width(), cube.height(), cube.bands(), join(wl));
    out.reserve(out.size() + cube.data().size() * sizeof(float));
    append_payload(out, cube.data());
    write_file(path, out);
}

MosaicImage read_mosaic(const fs::path& path) {
    const auto file = read_binary(path, kMosaicMagic, {"magic", "width", "height", "bands", "pattern"});
    const auto width = parse_dim(file, "width");
    const auto height = parse_dim(file, "height");
    if (parse_dim(file, "bands") != 1) fail(Errc::malformed_header, "bands", "mosaic must have bands:1");
    auto pattern = parse_pattern(file.get("pattern"));
    auto data = decode_payload(file, width * height);
    return MosaicImage(width, height, std::move(pattern), std::move(data));
}

void write_mosaic(const MosaicImage& mosaic, const fs::path& path) {
    std::string out = fmt::format("magic:{}\nwidth:{}\nheight:{}\nbands:1\npattern:{}\n\n", kMosaicMagic,
                                  mosaic.width(), mosaic.height(), pattern_text(mosaic.pattern()));
    append_payload(out, mosaic.data());
    write_file(path, out);
}

void write_rgb_raw(std::size_t width, std::size_t height, std::span<const float> rgb,
                   const fs::path& path) {
    if (rgb.size() != width * height * 3) fail(Errc::size_mismatch, "rgb", "expected width*height*3 values");
    std::string out =
        fmt::format("magic:{}\nwidth:{}\nheight:{}\nchannels:3\n\n", kRgbMagic, width, height);
    append_payload(out, rgb);
    write_file(path, out);
}

SensorModel read_sensor(const fs::path& path) {
    LineCursor cur(parse_lines(read_file(path), path.string()), path.string());
    if (cur.expect("magic") != kSensorMagic) {
        fail(Errc::malformed_header, "magic", "expected " + std::string(kSensorMagic));
    }
    auto pattern = parse_pattern(cur.expect("pattern"));
    const auto range_vals = parse_list<double>(cur.expect("range"), "range");
    if (range_vals.size() != 2) fail(Errc::malformed_header, "range", "expected '<min>,<max>'");
    const auto n_measured = parse_number<std::size_t>(cur.expect("measured_bands"), "measured_bands");
    const auto n_ideal = parse_number<std::size_t>(cur.expect("ideal_bands"), "ideal_bands");

    std::vector<ResponseCurve> measured;
    for (std::size_t k = 0; k < n_measured; ++k) {
        if (parse_number<std::size_t>(cur.expect("curve"), "curve") != k) {
            fail(Errc::malformed_header, "curve", "curves must be listed in band order");
        }
        auto wl = parse_list<double>(cur.expect("wavelengths"), "wavelengths");
        auto resp = parse_list<double>(cur.expect("response"), "response");
        measured.emplace_back(Wavelengths(std::move(wl)), std::move(resp));
    }
    std::vector<IdealBandSpec> ideal;
    for (std::size_t k = 0; k < n_ideal; ++k) {
        const auto v = parse_list<double>(cur.expect("ideal"), "ideal");
        if (v.size() != 3) fail(Errc::malformed_header, "ideal", "expected '<lambda0>,<qe>,<fwhm>'");
        ideal.push_back({v[0], v[1], v[2]});
    }
    cur.expect_end();
    return SensorModel(std::move(pattern), std::move(measured), std::move(ideal),
                       {range_vals[0], range_vals[1]});
}

void write_sensor(const SensorModel& sensor, const fs::path& path) {
    std::string out = fmt::format("magic:{}\npattern:{}\nrange:{},{}\nmeasured_bands:{}\nideal_bands:{}\n",
                                  kSensorMagic, pattern_text(sensor.pattern()), sensor.range().min,
                                  sensor.range().max, sensor.measured_band_count(),
                                  sensor.ideal_band_count());
    for (std::size_t k = 0; k < sensor.measured_band_count(); ++k) {
        const auto& c = sensor.measured()[k];
        out += fmt::format("curve:{}\nwavelengths:{}\nresponse:{}\n", k, join(c.wavelengths().values()),
                           join(c.response()));
    }
    for (const auto& s : sensor.ideal()) out += fmt::format("ideal:{},{},{}\n", s.lambda0, s.qe, s.fwhm);
    write_file(path, out);
}

CalibrationFit read_calibration(const fs::path& path) {
    LineCursor cur(parse_lines(read_file(path), path.string()), path.string());
    if (cur.expect("magic") != kCalibMagic) {
        fail(Errc::malformed_header, "magic", "expected " + std::string(kCalibMagic));
    }
    const auto rows = parse_number<std::size_t>(cur.expect("rows"), "rows");
    const auto cols = parse_number<std::size_t>(cur.expect("cols"), "cols");
    const auto residual = parse_number<double>(cur.expect("residual_rms"), "residual_rms");
    auto wl = parse_list<double>(cur.expect("wavelengths"), "wavelengths");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const auto v = parse_list<double>(cur.expect("row"), "row");
        if (v.size() != cols) {
            fail(Errc::size_mismatch, "row", "row " + std::to_string(r) + " has " +
                                                 std::to_string(v.size()) + " entries, expected " +
                                                 std::to_string(cols));
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v[c];
        }
    }
    cur.expect_end();
    return {CalibrationMatrix(std::move(m), Wavelengths(std::move(wl))), residual};
}

void write_calibration(const CalibrationFit& fit, const fs::path& path) {
    const auto& m = fit.matrix.entries();
    std::string out = fmt::format("magic:{}\nrows:{}\ncols:{}\nresidual_rms:{}\nwavelengths:{}\n", kCalibMagic,
                                  m.rows(), m.cols(), fit.residual_rms,
                                  join(fit.matrix.output_wavelengths().values()));
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m(r, c);
        out += fmt::format("row:{}\n", join(row));
    }
    write_file(path, out);
}

}  // namespace hsi
