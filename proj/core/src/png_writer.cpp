#include <csetjmp>
#include <cstdio>
#include <memory>
#include <vector>

#include <png.h>

#include "hsi/error.hpp"
#include "hsi/io.hpp"

namespace hsi {

void write_png(const std::filesystem::path& path, std::size_t width, std::size_t height,
               std::size_t channels, std::span<const std::uint8_t> pixels) {
    if (channels != 1 && channels != 3) fail(Errc::invalid_argument, "channels", "PNG needs 1 or 3 channels");
    if (pixels.size() != width * height * channels) {
        fail(Errc::size_mismatch, "pixels", "pixel buffer does not match image size");
    }
    std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "wb"), &std::fclose);
    if (!fp) fail(Errc::unwritable_path, path.string(), "cannot write " + path.string());

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, nullptr);
        fail(Errc::unwritable_path, path.string(), "libpng initialisation failed");
    }
    std::vector<png_bytep> rows(height);
    for (std::size_t y = 0; y < height; ++y) {
        rows[y] = const_cast<png_bytep>(pixels.data() + y * width * channels);
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail(Errc::unwritable_path, path.string(), "libpng write error");
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
                 channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace hsi
