#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace hsi {

/// Failure categories raised by the toolkit. Each maps to a stable name
/// so callers (and the CLI exit-code mapping) can branch on them.
enum class Errc {
    missing_file,
    malformed_header,
    size_mismatch,
    wavelength_count_mismatch,
    non_increasing_wavelengths,
    non_finite_value,
    unwritable_path,
    invalid_argument,
    shape_mismatch,
    no_overlap,
    empty_ideal_bands,
    degenerate_responses,
    infinite_psnr,
    empty_input,
    out_of_range,
};

std::string_view errc_name(Errc code) noexcept;

/// True for failures of numeric origin (as opposed to bad input).
bool is_numeric_failure(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string field, const std::string& message)
        : std::runtime_error(message), code_(code), field_(std::move(field)) {}

    Errc code() const noexcept { return code_; }

    /// Name of the offending field, file or argument.
    const std::string& field() const noexcept { return field_; }

private:
    Errc code_;
    std::string field_;
};

[[noreturn]] void fail(Errc code, std::string field, const std::string& message);

}  // namespace hsi
