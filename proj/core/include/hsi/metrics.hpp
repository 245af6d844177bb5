#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hsi/hypercube.hpp"

namespace hsi {

/// Mean absolute difference over all elements.
double l1_error(const ImageView& a, const ImageView& b);

/// 10 log10(peak^2 / MSE). Throws infinite_psnr when the inputs are identical.
double psnr(const ImageView& a, const ImageView& b, double peak = 1.0);

/// Single-scale SSIM with an 11x11 Gaussian window (sigma 1.5), K1 = 0.01,
/// K2 = 0.03 and dynamic range 1. The SSIM map is averaged over window
/// positions that fit entirely inside the image, per channel, then over
/// channels.
double ssim(const ImageView& a, const ImageView& b);

inline constexpr std::size_t kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;

struct QualityRecord {
    std::string name;
    double l1;
    double psnr_db;  ///< +inf for identical inputs
    double ssim;
};

struct MetricSummary {
    double mean;
    double stddev;  ///< sample standard deviation; 0 when n = 1, NaN if any value is infinite
};

/// Records sorted by name together with per-metric mean and sample std.
struct QualityReport {
    std::vector<QualityRecord> records;
    MetricSummary l1;
    MetricSummary psnr_db;
    MetricSummary ssim;

    std::size_t count() const noexcept { return records.size(); }
    /// Only one record: std is reported as 0 by convention.
    bool single_sample() const noexcept { return records.size() == 1; }

    /// One row per record then `mean`, `std` and `n` rows.
    std::string to_csv() const;
    /// "mean +/- std" table with one row per metric.
    std::string to_text() const;
};

/// Aggregates records; independent of input order. Throws empty_input.
QualityReport aggregate(std::vector<QualityRecord> records);

/// Computes all three metrics for one pair; identical inputs yield +inf PSNR.
QualityRecord evaluate_pair(std::string name, const ImageView& pred, const ImageView& ref);

}  // namespace hsi
