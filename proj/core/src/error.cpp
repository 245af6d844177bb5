#include "hsi/error.hpp"

namespace hsi {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::missing_file: return "missing file";
        case Errc::malformed_header: return "malformed header";
        case Errc::size_mismatch: return "size mismatch";
        case Errc::wavelength_count_mismatch: return "wavelength count mismatch";
        case Errc::non_increasing_wavelengths: return "non-increasing wavelengths";
        case Errc::non_finite_value: return "non-finite value";
        case Errc::unwritable_path: return "unwritable path";
        case Errc::invalid_argument: return "invalid argument";
        case Errc::shape_mismatch: return "shape mismatch";
        case Errc::no_overlap: return "no spectral overlap";
        case Errc::empty_ideal_bands: return "empty ideal band list";
        case Errc::degenerate_responses: return "degenerate sensor responses";
        case Errc::infinite_psnr: return "infinite PSNR";
        case Errc::empty_input: return "empty input";
        case Errc::out_of_range: return "out of range";
    }
    return "unknown error";
}

bool is_numeric_failure(Errc code) noexcept {
    return code == Errc::degenerate_responses || code == Errc::infinite_psnr;
}

void fail(Errc code, std::string field, const std::string& message) {
    std::string full(errc_name(code));
    if (!message.empty()) {
        full += ": ";
        full += message;
    }
    throw Error(code, std::move(field), full);
}

}  // namespace hsi
