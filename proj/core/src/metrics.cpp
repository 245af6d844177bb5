#include "hsi/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include <fmt/format.h>

#include "hsi/error.hpp"

namespace hsi {
namespace {

void require_same_shape(const ImageView& a, const ImageView& b) {
    if (!a.same_shape(b)) {
        fail(Errc::shape_mismatch, "image",
             fmt::format("{}x{}x{} vs {}x{}x{}", a.width, a.height, a.channels, b.width, b.height,
                         b.channels));
    }
}

std::vector<double> gaussian_kernel() {
    std::vector<double> k(kSsimWindow);
    const double centre = static_cast<double>(kSsimWindow / 2);
    double sum = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        const double d = static_cast<double>(i) - centre;
        k[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
        sum += k[i];
    }
    for (double& v : k) v /= sum;
    return k;
}

/// Separable Gaussian filter over window positions inside the image.
std::vector<double> filter_valid(const std::vector<double>& plane, std::size_t w, std::size_t h,
                                 const std::vector<double>& kernel) {
    const std::size_t k = kernel.size();
    const std::size_t ow = w - k + 1;
    const std::size_t oh = h - k + 1;
    std::vector<double> horiz(h * ow);
    for (std::size_t y = 0; y < h; ++y) {
        const double* row = plane.data() + y * w;
        for (std::size_t x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (std::size_t i = 0; i < k; ++i) acc += kernel[i] * row[x + i];
            horiz[y * ow + x] = acc;
        }
    }
    std::vector<double> out(oh * ow, 0.0);
    for (std::size_t y = 0; y < oh; ++y) {
        for (std::size_t i = 0; i < k; ++i) {
            const double* src = horiz.data() + (y + i) * ow;
            double* dst = out.data() + y * ow;
            for (std::size_t x = 0; x < ow; ++x) dst[x] += kernel[i] * src[x];
        }
    }
    return out;
}

double ssim_plane(const std::vector<double>& a, const std::vector<double>& b, std::size_t w,
                  std::size_t h, const std::vector<double>& kernel) {
    std::vector<double> aa(a.size()), bb(a.size()), ab(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        aa[i] = a[i] * a[i];
        bb[i] = b[i] * b[i];
        ab[i] = a[i] * b[i];
    }
    const auto mu_a = filter_valid(a, w, h, kernel);
    const auto mu_b = filter_valid(b, w, h, kernel);
    const auto e_aa = filter_valid(aa, w, h, kernel);
    const auto e_bb = filter_valid(bb, w, h, kernel);
    const auto e_ab = filter_valid(ab, w, h, kernel);
    constexpr double c1 = (kSsimK1 * 1.0) * (kSsimK1 * 1.0);
    constexpr double c2 = (kSsimK2 * 1.0) * (kSsimK2 * 1.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
        const double ma = mu_a[i];
        const double mb = mu_b[i];
        const double va = e_aa[i] - ma * ma;
        const double vb = e_bb[i] - mb * mb;
        const double cov = e_ab[i] - ma * mb;
        sum += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
    }
    return sum / static_cast<double>(mu_a.size());
}

MetricSummary summarize(const std::vector<double>& values) {
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    bool infinite = false;
    for (double v : values) {
        sum += v;
        infinite = infinite || std::isinf(v);
    }
    const double mean = sum / n;
    if (infinite) return {mean, std::numeric_limits<double>::quiet_NaN()};
    if (values.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace

double l1_error(const ImageView& a, const ImageView& b) {
    require_same_shape(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        sum += std::abs(static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]));
    }
    return sum / static_cast<double>(a.data.size());
}

double psnr(const ImageView& a, const ImageView& b, double peak) {
    require_same_shape(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
        sum += d * d;
    }
    if (sum == 0.0) fail(Errc::infinite_psnr, "image", "inputs are identical");
    const double mse = sum / static_cast<double>(a.data.size());
    return 10.0 * std::log10(peak * peak / mse);
}

double ssim(const ImageView& a, const ImageView& b) {
    require_same_shape(a, b);
    if (a.width < kSsimWindow || a.height < kSsimWindow) {
        fail(Errc::invalid_argument, "image",
             fmt::format("{}x{} is smaller than the {}x{} SSIM window", a.width, a.height, kSsimWindow,
                         kSsimWindow));
    }
    const auto kernel = gaussian_kernel();
    const std::size_t pixels = a.width * a.height;
    std::vector<double> pa(pixels), pb(pixels);
    double total = 0.0;
    for (std::size_t c = 0; c < a.channels; ++c) {
        for (std::size_t p = 0; p < pixels; ++p) {
            pa[p] = a.data[p * a.channels + c];
            pb[p] = b.data[p * b.channels + c];
        }
        total += ssim_plane(pa, pb, a.width, a.height, kernel);
    }
    return total / static_cast<double>(a.channels);
}

QualityRecord evaluate_pair(std::string name, const ImageView& pred, const ImageView& ref) {
    QualityRecord r{std::move(name), l1_error(pred, ref), 0.0, ssim(pred, ref)};
    try {
        r.psnr_db = psnr(pred, ref);
    } catch (const Error& e) {
        if (e.code() != Errc::infinite_psnr) throw;
        r.psnr_db = std::numeric_limits<double>::infinity();
    }
    return r;
}

QualityReport aggregate(std::vector<QualityRecord> records) {
    if (records.empty()) fail(Errc::empty_input, "records", "nothing to aggregate");
    std::sort(records.begin(), records.end(), [](const QualityRecord& x, const QualityRecord& y) {
        return std::tie(x.name, x.l1, x.psnr_db, x.ssim) < std::tie(y.name, y.l1, y.psnr_db, y.ssim);
    });
    std::vector<double> l1, ps, ss;
    for (const auto& r : records) {
        l1.push_back(r.l1);
        ps.push_back(r.psnr_db);
        ss.push_back(r.ssim);
    }
    return {std::move(records), summarize(l1), summarize(ps), summarize(ss)};
}

std::string QualityReport::to_csv() const {
    std::string out = "name,l1,psnr_db,ssim\n";
    for (const auto& r : records) {
        out += fmt::format("{},{:.6f},{:.4f},{:.6f}\n", r.name, r.l1, r.psnr_db, r.ssim);
    }
    out += fmt::format("mean,{:.6f},{:.4f},{:.6f}\n", l1.mean, psnr_db.mean, ssim.mean);
    out += fmt::format("std,{:.6f},{:.4f},{:.6f}\n", l1.stddev, psnr_db.stddev, ssim.stddev);
    out += fmt::format("n,{},{},{}\n", count(), count(), count());
    return out;
}

std::string QualityReport::to_text() const {
    const auto cell = [](const MetricSummary& m, int precision) {
        if (std::isnan(m.stddev)) return fmt::format("{:.{}f}", m.mean, precision);
        return fmt::format("{:.{}f} ± {:.{}f}", m.mean, precision, m.stddev, precision);
    };
    std::string out = fmt::format("{:<10}{}\n", "Metric", single_sample() ? "value (n=1, std 0)"
                                                                          : fmt::format("mean ± std (n={})", count()));
    out += fmt::format("{:<10}{}\n", "L1", cell(l1, 4));
    out += fmt::format("{:<10}{}\n", "PSNR (dB)", cell(psnr_db, 2));
    out += fmt::format("{:<10}{}\n", "SSIM", cell(ssim, 4));
    return out;
}

}  // namespace hsi
