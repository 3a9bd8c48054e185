#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "chromadec/appearance.hpp"
#include "chromadec/csv.hpp"
#include "chromadec/cvd.hpp"
#include "chromadec/decoder.hpp"
#include "chromadec/errors.hpp"
#include "chromadec/image.hpp"

namespace chromadec {

/// Electro-optical decode of an sRGB-encoded sample.
inline double srgb_decode(double v) {
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

/// Inverse of srgb_decode.
inline double srgb_encode(double v) {
    return v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

enum class InputTransfer { linear, srgb_decode };
enum class PipelineOp { to_hsv, simulate_cvd, adapt, decode_report };

/// Input conditioning plus one per-pixel operation.
struct PipelineConfig {
    InputTransfer transfer = InputTransfer::linear;
    std::optional<std::array<double, 9>> matrix;  // row-major over (B, G, R)
    PipelineOp op = PipelineOp::to_hsv;
    std::optional<CvdProfile> profile;  // simulate_cvd only
    std::optional<GainVector> gains;    // adapt only
    bool csv_output = false;            // to_hsv: per-pixel CSV instead of image
    bool srgb_encode_output = false;    // re-encode emitted images
    unsigned threads = 0;               // 0 = hardware default
};

struct IngestResult {
    ImageBuffer image;
    std::size_t clamped = 0;  // samples clamped after the matrix
};

namespace detail {

/// Run fn(y) for every row, split across threads; distinct rows only ever
/// touch distinct data, so results cannot depend on the split.
template <typename Fn>
void parallel_rows(std::size_t height, unsigned threads, Fn&& fn) {
    unsigned n = threads != 0 ? threads : std::thread::hardware_concurrency();
    if (n == 0)
        n = 1;
    n = static_cast<unsigned>(std::min<std::size_t>(n, height));
    if (n <= 1) {
        for (std::size_t y = 0; y < height; ++y)
            fn(y);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned k = 0; k < n; ++k) {
        const std::size_t lo = height * k / n;
        const std::size_t hi = height * (k + 1) / n;
        pool.emplace_back([&, k, lo, hi] {
            try {
                for (std::size_t y = lo; y < hi; ++y)
                    fn(y);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace detail

/// Load an image and apply the configured conditioning: optional sRGB
/// decode, optional 3x3 matrix over (B, G, R), then a clamp to [0, 1]
/// with a count of clamped samples.
inline IngestResult ingest_image(const std::string& path, const PipelineConfig& cfg) {
    ImageBuffer img = read_image(path);
    if (cfg.transfer == InputTransfer::srgb_decode)
        for (auto& v : img.data())
            v = std::clamp(srgb_decode(v), 0.0, 1.0);
    std::size_t clamped = 0;
    if (cfg.matrix) {
        const auto& m = *cfg.matrix;
        auto& d = img.data();
        for (std::size_t i = 0; i < d.size(); i += 3) {
            const double b = d[i], g = d[i + 1], r = d[i + 2];
            double out[3] = {
                m[0] * b + m[1] * g + m[2] * r,
                m[3] * b + m[4] * g + m[5] * r,
                m[6] * b + m[7] * g + m[8] * r,
            };
            for (std::size_t c = 0; c < 3; ++c) {
                const double v = std::clamp(out[c], 0.0, 1.0);
                if (v != out[c])
                    ++clamped;
                d[i + c] = v;
            }
        }
    }
    return IngestResult{std::move(img), clamped};
}

/// Hue/saturation/value as image planes: slot B holds value, slot G holds
/// saturation, slot R holds hue/360 (0 where hue is absent), so an emitted
/// RGB file carries (hue/360, saturation, value).
inline ImageBuffer apply_to_hsv(const ImageBuffer& img, unsigned threads = 0) {
    ImageBuffer out(img.width(), img.height());
    detail::parallel_rows(img.height(), threads, [&](std::size_t y) {
        for (std::size_t x = 0; x < img.width(); ++x) {
            const double* px = img.pixel(x, y);
            const auto a = to_appearance(ChannelVector::bgr(px[0], px[1], px[2]));
            double* q = out.pixel(x, y);
            q[0] = a.value;
            q[1] = a.saturation;
            q[2] = a.hue ? *a.hue / 360.0 : 0.0;
        }
    });
    return out;
}

inline ImageBuffer apply_cvd(const ImageBuffer& img, const CvdProfile& profile,
                             unsigned threads = 0) {
    ImageBuffer out(img.width(), img.height());
    detail::parallel_rows(img.height(), threads, [&](std::size_t y) {
        for (std::size_t x = 0; x < img.width(); ++x) {
            const double* px = img.pixel(x, y);
            const ChannelVector c =
                simulate_cvd(ChannelVector::bgr(px[0], px[1], px[2]), profile);
            double* q = out.pixel(x, y);
            q[0] = c[0];
            q[1] = c[1];
            q[2] = c[2];
        }
    });
    return out;
}

inline ImageBuffer apply_gains(const ImageBuffer& img, const GainVector& gains,
                               unsigned threads = 0) {
    ImageBuffer out(img.width(), img.height());
    detail::parallel_rows(img.height(), threads, [&](std::size_t y) {
        for (std::size_t x = 0; x < img.width(); ++x) {
            const double* px = img.pixel(x, y);
            const ChannelVector c = adapt(ChannelVector::bgr(px[0], px[1], px[2]), gains);
            double* q = out.pixel(x, y);
            q[0] = c[0];
            q[1] = c[1];
            q[2] = c[2];
        }
    });
    return out;
}

/// Per-pixel hue/saturation/value table; the hue field is empty where hue
/// is absent, otherwise fixed 9-decimal degrees.
inline std::string to_hsv_csv(const ImageBuffer& img, unsigned threads = 0) {
    std::vector<std::string> row_chunks(img.height());
    detail::parallel_rows(img.height(), threads, [&](std::size_t y) {
        std::string chunk;
        for (std::size_t x = 0; x < img.width(); ++x) {
            const double* px = img.pixel(x, y);
            const auto a = to_appearance(ChannelVector::bgr(px[0], px[1], px[2]));
            chunk += std::to_string(x);
            chunk += ',';
            chunk += std::to_string(y);
            chunk += ',';
            if (a.hue)
                chunk += csv::format_fixed(*a.hue, 9);
            chunk += ',';
            chunk += csv::format_double(a.saturation);
            chunk += ',';
            chunk += csv::format_double(a.value);
            chunk += csv::kCrlf;
        }
        row_chunks[y] = std::move(chunk);
    });
    std::string out = "x,y,hue,saturation,value";
    out += csv::kCrlf;
    for (const auto& chunk : row_chunks)
        out += chunk;
    return out;
}

/// Min/max/mean of each code's activation over all pixels, one row per
/// code in canonical order. Partial sums fold in row order, so the result
/// is independent of the thread split.
inline std::string decode_report_csv(const ImageBuffer& img, unsigned threads = 0) {
    struct Partial {
        std::array<double, 8> min;
        std::array<double, 8> max;
        std::array<double, 8> sum;
    };
    std::vector<Partial> partials(
        img.height(), Partial{{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
                              {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
                              {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}});
    detail::parallel_rows(img.height(), threads, [&](std::size_t y) {
        Partial& p = partials[y];
        for (std::size_t x = 0; x < img.width(); ++x) {
            const double* px = img.pixel(x, y);
            const auto a = decode3_activations(px[0], px[1], px[2]);
            for (std::size_t k = 0; k < 8; ++k) {
                p.min[k] = std::min(p.min[k], a[k]);
                p.max[k] = std::max(p.max[k], a[k]);
                p.sum[k] += a[k];
            }
        }
    });
    std::array<double, 8> mn, mx, sum;
    mn.fill(1.0);
    mx.fill(0.0);
    sum.fill(0.0);
    for (const auto& p : partials) {
        for (std::size_t k = 0; k < 8; ++k) {
            mn[k] = std::min(mn[k], p.min[k]);
            mx[k] = std::max(mx[k], p.max[k]);
            sum[k] += p.sum[k];
        }
    }
    const double count = static_cast<double>(img.width() * img.height());
    std::string out = "code,label,min,max,mean";
    out += csv::kCrlf;
    for (unsigned mask : kCanonicalOrder3) {
        out += CodeWord(mask, 3).to_string();
        out += ',';
        out += code_label3(mask);
        out += ',';
        out += csv::format_double(mn[mask]);
        out += ',';
        out += csv::format_double(mx[mask]);
        out += ',';
        out += csv::format_double(sum[mask] / count);
        out += csv::kCrlf;
    }
    return out;
}

struct PipelineOutput {
    std::optional<ImageBuffer> image;
    std::string csv;
};

/// Dispatch one configured operation over a conditioned image.
inline PipelineOutput run_pixel_pipeline(const ImageBuffer& img, const PipelineConfig& cfg) {
    switch (cfg.op) {
        case PipelineOp::to_hsv:
            if (cfg.csv_output)
                return PipelineOutput{std::nullopt, to_hsv_csv(img, cfg.threads)};
            return PipelineOutput{apply_to_hsv(img, cfg.threads), {}};
        case PipelineOp::simulate_cvd:
            if (!cfg.profile)
                throw InconsistencyError("pipeline: simulate_cvd needs a profile");
            return PipelineOutput{apply_cvd(img, *cfg.profile, cfg.threads), {}};
        case PipelineOp::adapt:
            if (!cfg.gains)
                throw InconsistencyError("pipeline: adapt needs gains");
            return PipelineOutput{apply_gains(img, *cfg.gains, cfg.threads), {}};
        case PipelineOp::decode_report:
            return PipelineOutput{std::nullopt, decode_report_csv(img, cfg.threads)};
    }
    throw DomainError("pipeline: unknown operation");
}

/// In-place sRGB re-encode of every sample, for emitting display-ready
/// images.
inline void encode_srgb_image(ImageBuffer& img) {
    for (auto& v : img.data())
        v = std::clamp(srgb_encode(v), 0.0, 1.0);
}

} // namespace chromadec
