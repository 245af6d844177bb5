#include "hsi/kernels.hpp"

#include <algorithm>
#include <cmath>

#if defined(__AVX2__)
#include <immintrin.h>
#endif
#include <string>

#include "hsi/error.hpp"

namespace hsi::kernels {

void white_balance(std::span<const float> raw, std::span<const float> white,
                   std::span<const float> dark, std::span<float> out) {
    if (white.size() != raw.size() || dark.size() != raw.size() || out.size() != raw.size()) {
        fail(Errc::shape_mismatch, "white_balance", "buffer lengths differ");
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const float denom = white[i] - dark[i];
        const float v = (raw[i] - dark[i]) / denom;
        out[i] = denom < 1e-6f ? 0.0f : std::max(0.0f, v);
    }
}

BilinearPlan::BilinearPlan(std::size_t width, std::size_t height, const MosaicPattern& pattern)
    : width_(width), height_(height), n_(pattern.n()) {
    if (width_ < n_ || height_ < n_) {
        fail(Errc::invalid_argument, "mosaic",
             "image " + std::to_string(width_) + "x" + std::to_string(height_) +
                 " is smaller than one " + std::to_string(n_) + "x" + std::to_string(n_) + " tile");
    }
    destination_.assign(pattern.layout().begin(), pattern.layout().end());
    identity_ = true;
    for (std::size_t s = 0; s < destination_.size(); ++s) identity_ = identity_ && destination_[s] == s;

    // Taps along one axis for samples at offset, offset + n, ... < extent.
    const auto taps_for = [this](std::size_t offset, std::size_t extent) {
        const std::size_t count = (extent - 1 - offset) / n_ + 1;
        std::vector<Tap> taps(extent);
        for (std::size_t i = 0; i < extent; ++i) {
            if (i <= offset) {
                taps[i] = {0, 0, 0.0f};
            } else {
                const std::size_t lo = (i - offset) / n_;
                const std::size_t rem = (i - offset) % n_;
                if (lo + 1 >= count) {
                    taps[i] = {count - 1, count - 1, 0.0f};
                } else {
                    taps[i] = {lo, lo + 1, static_cast<float>(rem) / static_cast<float>(n_)};
                }
            }
        }
        return std::pair{count, taps};
    };

    for (std::size_t r = 0; r < n_; ++r) y_taps_.push_back(taps_for(r, height_).second);
    // Horizontal taps flattened to source offsets in [x][column class] order.
    x_lo_.resize(width_ * n_);
    x_hi_.resize(width_ * n_);
    x_t_.resize(width_ * n_);
    for (std::size_t c = 0; c < n_; ++c) {
        const auto taps = taps_for(c, width_).second;
        for (std::size_t x = 0; x < width_; ++x) {
            x_lo_[x * n_ + c] = static_cast<std::int32_t>(c + taps[x].lo * n_);
            x_hi_[x * n_ + c] = static_cast<std::int32_t>(c + taps[x].hi * n_);
            x_t_[x * n_ + c] = taps[x].t;
        }
    }
}

namespace {

// dst[i] = src[lo[i]] + t[i] * (src[hi[i]] - src[lo[i]]).
void lerp_gather(const float* src, const std::int32_t* lo, const std::int32_t* hi, const float* t,
                 float* dst, std::size_t count) {
    std::size_t i = 0;
#if defined(__AVX2__) && defined(__FMA__)
    for (; i + 8 <= count; i += 8) {
        const __m256 a = _mm256_i32gather_ps(src, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lo + i)), 4);
        const __m256 b = _mm256_i32gather_ps(src, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(hi + i)), 4);
        _mm256_storeu_ps(dst + i, _mm256_fmadd_ps(_mm256_loadu_ps(t + i), _mm256_sub_ps(b, a), a));
    }
#endif
    for (; i < count; ++i) {
        const float a = src[lo[i]];
        dst[i] = a + t[i] * (src[hi[i]] - a);
    }
}

}  // namespace

const float* BilinearPlan::sample_row(std::span<const float> mosaic, std::size_t r, std::size_t j,
                                      std::size_t keep, RowCache& cache) const {
    const std::size_t slot_size = width_ * n_;
    const std::size_t base = 2 * r;
    for (std::size_t s = base; s < base + 2; ++s) {
        if (cache.tags[s] == j) return cache.rows.data() + s * slot_size;
    }
    const std::size_t s = cache.tags[base] == keep ? base + 1 : base;
    cache.tags[s] = j;
    float* dst = cache.rows.data() + s * slot_size;
    lerp_gather(mosaic.data() + (r + j * n_) * width_, x_lo_.data(), x_hi_.data(), x_t_.data(), dst,
                slot_size);
    return dst;
}

namespace {

// Blends two [x][c] rows of one row class into tile slots r*n.. of every pixel.
template <std::size_t N>
void blend_rows(const float* lo, const float* hi, float w, std::size_t width, std::size_t n,
                std::size_t r, float* out) {
    const std::size_t count = N == 0 ? n : N;
    const std::size_t bands = count * count;
    for (std::size_t x = 0; x < width; ++x) {
        const float* a = lo + x * count;
        const float* b = hi + x * count;
        float* px = out + x * bands + r * count;
        for (std::size_t c = 0; c < count; ++c) px[c] = a[c] + w * (b[c] - a[c]);
    }
}

}  // namespace

void BilinearPlan::row(std::span<const float> mosaic, std::size_t y, std::span<float> out,
                       RowCache& cache) const {
    const std::size_t bands = n_ * n_;
    if (mosaic.size() != width_ * height_ || y >= height_ || out.size() != width_ * bands) {
        fail(Errc::shape_mismatch, "mosaic", "buffer sizes do not match the plan");
    }
    if (cache.tags.size() != 2 * n_ || cache.rows.size() != 2 * n_ * width_ * n_) {
        cache.rows.assign(2 * n_ * width_ * n_, 0.0f);
        cache.tags.assign(2 * n_, static_cast<std::size_t>(-1));
    }
    for (std::size_t r = 0; r < n_; ++r) {
        const Tap& tap = y_taps_[r][y];
        const float* lo = sample_row(mosaic, r, tap.lo, tap.hi, cache);
        const float* hi = sample_row(mosaic, r, tap.hi, tap.lo, cache);
        switch (n_) {
            case 2: blend_rows<2>(lo, hi, tap.t, width_, n_, r, out.data()); break;
            case 3: blend_rows<3>(lo, hi, tap.t, width_, n_, r, out.data()); break;
            case 4: blend_rows<4>(lo, hi, tap.t, width_, n_, r, out.data()); break;
            case 5: blend_rows<5>(lo, hi, tap.t, width_, n_, r, out.data()); break;
            default: blend_rows<0>(lo, hi, tap.t, width_, n_, r, out.data()); break;
        }
    }
    if (!identity_) {
        std::vector<float> tile(bands);
        for (std::size_t x = 0; x < width_; ++x) {
            float* px = out.data() + x * bands;
            std::copy(px, px + bands, tile.begin());
            for (std::size_t s = 0; s < bands; ++s) px[destination_[s]] = tile[s];
        }
    }
}

void BilinearPlan::run(std::span<const float> mosaic, std::span<float> out) const {
    const std::size_t row_size = width_ * bands();
    if (out.size() != height_ * row_size) {
        fail(Errc::shape_mismatch, "mosaic", "buffer sizes do not match the plan");
    }
    RowCache cache;
    for (std::size_t y = 0; y < height_; ++y) row(mosaic, y, out.subspan(y * row_size, row_size), cache);
}

namespace {

class GammaTable {
public:
    static constexpr int kIntervals = 1 << 16;

    GammaTable() : table_(kIntervals + 2) {
        for (int i = 0; i <= kIntervals; ++i) {
            const double v = static_cast<double>(i) / kIntervals;
            table_[static_cast<std::size_t>(i)] =
                static_cast<float>(v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055);
        }
        table_[kIntervals + 1] = table_[kIntervals];
    }

    const float* data() const noexcept { return table_.data(); }

private:
    std::vector<float> table_;
};

}  // namespace

void srgb_encode(std::span<const float> linear, std::span<float> out) {
    if (out.size() != linear.size()) fail(Errc::size_mismatch, "rgb", "buffer lengths differ");
    static const GammaTable gamma;
    const float* table = gamma.data();
    const float scale = static_cast<float>(GammaTable::kIntervals);
    const std::size_t size = linear.size();
    const float* in = linear.data();
    float* dst = out.data();
    std::size_t i = 0;
#if defined(__AVX2__) && defined(__FMA__)
    const __m256 zero = _mm256_setzero_ps();
    const __m256 one = _mm256_set1_ps(1.0f);
    const __m256 vscale = _mm256_set1_ps(scale);
    for (; i + 8 <= size; i += 8) {
        const __m256 v = _mm256_min_ps(_mm256_max_ps(_mm256_loadu_ps(in + i), zero), one);
        const __m256 pos = _mm256_mul_ps(v, vscale);
        const __m256i k = _mm256_cvttps_epi32(pos);
        const __m256 t = _mm256_sub_ps(pos, _mm256_cvtepi32_ps(k));
        const __m256 a = _mm256_i32gather_ps(table, k, 4);
        const __m256 b = _mm256_i32gather_ps(table + 1, k, 4);
        _mm256_storeu_ps(dst + i, _mm256_fmadd_ps(t, _mm256_sub_ps(b, a), a));
    }
#endif
    for (; i < size; ++i) {
        const float low = in[i] > 0.0f ? in[i] : 0.0f;
        const float pos = (low < 1.0f ? low : 1.0f) * scale;
        const int k = static_cast<int>(pos);
        const float t = pos - static_cast<float>(k);
        dst[i] = table[k] + t * (table[k + 1] - table[k]);
    }
}

namespace {

#if defined(__AVX2__) && defined(__FMA__)
// 16-row matrix times pixels, four pixels per step so eight FMA chains run
// in parallel. `m` is column-major 16 x cols.
void correct16(const float* in, std::size_t pixels, std::size_t cols, const float* m, float* out,
               bool clamp) {
    const __m256 zero = _mm256_setzero_ps();
    const auto store = [&](float* dst, __m256 lo, __m256 hi) {
        if (clamp) {
            lo = _mm256_max_ps(lo, zero);
            hi = _mm256_max_ps(hi, zero);
        }
        _mm256_storeu_ps(dst, lo);
        _mm256_storeu_ps(dst + 8, hi);
    };
    std::size_t p = 0;
    for (; p + 4 <= pixels; p += 4) {
        const float* v = in + p * cols;
        __m256 a0 = zero, a1 = zero, b0 = zero, b1 = zero, c0 = zero, c1 = zero, d0 = zero, d1 = zero;
        for (std::size_t k = 0; k < cols; ++k) {
            const __m256 lo = _mm256_loadu_ps(m + k * 16);
            const __m256 hi = _mm256_loadu_ps(m + k * 16 + 8);
            const __m256 sa = _mm256_broadcast_ss(v + k);
            const __m256 sb = _mm256_broadcast_ss(v + cols + k);
            const __m256 sc = _mm256_broadcast_ss(v + 2 * cols + k);
            const __m256 sd = _mm256_broadcast_ss(v + 3 * cols + k);
            a0 = _mm256_fmadd_ps(lo, sa, a0);
            a1 = _mm256_fmadd_ps(hi, sa, a1);
            b0 = _mm256_fmadd_ps(lo, sb, b0);
            b1 = _mm256_fmadd_ps(hi, sb, b1);
            c0 = _mm256_fmadd_ps(lo, sc, c0);
            c1 = _mm256_fmadd_ps(hi, sc, c1);
            d0 = _mm256_fmadd_ps(lo, sd, d0);
            d1 = _mm256_fmadd_ps(hi, sd, d1);
        }
        float* dst = out + p * 16;
        store(dst, a0, a1);
        store(dst + 16, b0, b1);
        store(dst + 32, c0, c1);
        store(dst + 48, d0, d1);
    }
    for (; p < pixels; ++p) {
        const float* v = in + p * cols;
        __m256 a0 = zero, a1 = zero;
        for (std::size_t k = 0; k < cols; ++k) {
            const __m256 sa = _mm256_broadcast_ss(v + k);
            a0 = _mm256_fmadd_ps(_mm256_loadu_ps(m + k * 16), sa, a0);
            a1 = _mm256_fmadd_ps(_mm256_loadu_ps(m + k * 16 + 8), sa, a1);
        }
        store(out + p * 16, a0, a1);
    }
}

// Matrices with at most 8 rows, zero-padded to 8 and stored with a lane mask.
void correct8(const float* in, std::size_t pixels, std::size_t rows, std::size_t cols, const float* m,
              float* out, bool clamp) {
    std::vector<float> padded(8 * cols, 0.0f);
    for (std::size_t k = 0; k < cols; ++k) std::copy(m + k * rows, m + (k + 1) * rows, padded.begin() + static_cast<std::ptrdiff_t>(k * 8));
    alignas(32) std::int32_t lanes[8];
    for (std::size_t r = 0; r < 8; ++r) lanes[r] = r < rows ? -1 : 0;
    const __m256i mask = _mm256_load_si256(reinterpret_cast<const __m256i*>(lanes));
    const __m256 zero = _mm256_setzero_ps();
    const float* pm = padded.data();
    const auto store = [&](float* dst, __m256 v) {
        _mm256_maskstore_ps(dst, mask, clamp ? _mm256_max_ps(v, zero) : v);
    };
    std::size_t p = 0;
    for (; p + 4 <= pixels; p += 4) {
        const float* v = in + p * cols;
        __m256 a = zero, b = zero, c = zero, d = zero;
        for (std::size_t k = 0; k < cols; ++k) {
            const __m256 col = _mm256_loadu_ps(pm + k * 8);
            a = _mm256_fmadd_ps(col, _mm256_broadcast_ss(v + k), a);
            b = _mm256_fmadd_ps(col, _mm256_broadcast_ss(v + cols + k), b);
            c = _mm256_fmadd_ps(col, _mm256_broadcast_ss(v + 2 * cols + k), c);
            d = _mm256_fmadd_ps(col, _mm256_broadcast_ss(v + 3 * cols + k), d);
        }
        float* dst = out + p * rows;
        store(dst, a);
        store(dst + rows, b);
        store(dst + 2 * rows, c);
        store(dst + 3 * rows, d);
    }
    for (; p < pixels; ++p) {
        const float* v = in + p * cols;
        __m256 a = zero;
        for (std::size_t k = 0; k < cols; ++k) {
            a = _mm256_fmadd_ps(_mm256_loadu_ps(pm + k * 8), _mm256_broadcast_ss(v + k), a);
        }
        store(out + p * rows, a);
    }
}
#endif

}  // namespace

void correct(std::span<const float> in, std::size_t pixels, const Eigen::MatrixXf& matrix,
             std::span<float> out, bool clamp) {
    const auto rows = static_cast<std::size_t>(matrix.rows());
    const auto cols = static_cast<std::size_t>(matrix.cols());
    if (in.size() != pixels * cols || out.size() != pixels * rows) {
        fail(Errc::shape_mismatch, "calibration", "buffer sizes do not match the matrix");
    }
#if defined(__AVX2__) && defined(__FMA__)
    if (rows == 16) {
        correct16(in.data(), pixels, cols, matrix.data(), out.data(), clamp);
        return;
    }
    if (rows <= 8) {
        correct8(in.data(), pixels, rows, cols, matrix.data(), out.data(), clamp);
        return;
    }
#endif
    const auto p = static_cast<Eigen::Index>(pixels);
    Eigen::Map<const Eigen::MatrixXf> src(in.data(), matrix.cols(), p);
    Eigen::Map<Eigen::MatrixXf> dst(out.data(), matrix.rows(), p);
    dst.noalias() = matrix * src;
    if (clamp) dst = dst.cwiseMax(0.0f);
}

}  // namespace hsi::kernels
