#pragma once

// CSV text of the versioned tables in data/, embedded at configure time.

namespace hsi::detail {

extern const char* const kCie1931Csv;
extern const char* const kD65Csv;
extern const char* const kHemoglobinCsv;

}  // namespace hsi::detail
