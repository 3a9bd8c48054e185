#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <png.h>

#include "chromadec/errors.hpp"

namespace chromadec {

/// Row-major float image, three samples per pixel in (B, G, R) order,
/// each expected in [0, 1].
class ImageBuffer {
public:
    ImageBuffer(std::size_t width, std::size_t height)
        : width_(width), height_(height) {
        if (width == 0 || height == 0)
            throw DimensionError("ImageBuffer: zero dimension");
        if (width > (1u << 20) || height > (1u << 20) ||
            width * height > 100'000'000u)
            throw DimensionError("ImageBuffer: image too large");
        data_.assign(width_ * height_ * 3, 0.0);
    }

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }

    double* pixel(std::size_t x, std::size_t y) {
        return data_.data() + 3 * (y * width_ + x);
    }
    const double* pixel(std::size_t x, std::size_t y) const {
        return data_.data() + 3 * (y * width_ + x);
    }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<double> data_;
};

namespace detail {

inline unsigned char encode8(double v) {
    const double clamped = std::min(1.0, std::max(0.0, v));
    return static_cast<unsigned char>(std::llround(clamped * 255.0));
}

struct PpmCursor {
    const unsigned char* p;
    const unsigned char* end;

    bool at_end() const { return p >= end; }

    void skip_space_and_comments() {
        while (!at_end()) {
            if (*p == '#') {
                while (!at_end() && *p != '\n') ++p;
            } else if (*p == ' ' || *p == '\t' || *p == '\r' || *p == '\n') {
                ++p;
            } else {
                return;
            }
        }
    }

    unsigned read_uint(const char* what) {
        skip_space_and_comments();
        if (at_end() || *p < '0' || *p > '9')
            throw ParseError(std::string("PPM: expected ") + what);
        unsigned long v = 0;
        while (!at_end() && *p >= '0' && *p <= '9') {
            v = v * 10 + static_cast<unsigned long>(*p - '0');
            if (v > 0xFFFFFFFFul)
                throw ParseError(std::string("PPM: ") + what + " out of range");
            ++p;
        }
        return static_cast<unsigned>(v);
    }
};

inline ImageBuffer parse_ppm(const unsigned char* bytes, std::size_t size) {
    PpmCursor cur{bytes, bytes + size};
    if (size < 2 || bytes[0] != 'P' || bytes[1] != '6')
        throw ParseError("PPM: corrupt header (missing P6 magic)");
    cur.p += 2;
    const unsigned width = cur.read_uint("width");
    const unsigned height = cur.read_uint("height");
    const unsigned maxval = cur.read_uint("maxval");
    if (width == 0 || height == 0)
        throw ParseError("PPM: zero image dimension");
    if (maxval == 0 || maxval > 65535)
        throw ParseError("PPM: maxval out of range");
    if (cur.at_end())
        throw ParseError("PPM: truncated after header");
    cur.p += 1;  // exactly one whitespace byte before the raster
    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    const std::size_t nsamples = std::size_t{width} * height * 3;
    if (static_cast<std::size_t>(cur.end - cur.p) < nsamples * bytes_per_sample)
        throw ParseError("PPM: truncated pixel data");
    ImageBuffer img(width, height);
    const double scale = 1.0 / static_cast<double>(maxval);
    const unsigned char* s = cur.p;
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            double rgb[3];
            for (double& chan : rgb) {
                unsigned v;
                if (bytes_per_sample == 2) {
                    v = (static_cast<unsigned>(s[0]) << 8) | s[1];
                    s += 2;
                } else {
                    v = *s++;
                }
                if (v > maxval)
                    throw ParseError("PPM: sample exceeds maxval");
                chan = static_cast<double>(v) * scale;
            }
            double* px = img.pixel(x, y);
            px[0] = rgb[2];
            px[1] = rgb[1];
            px[2] = rgb[0];
        }
    }
    return img;
}

inline ImageBuffer read_ppm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    std::string bytes((std::istreambuf_iterator<char>(in)), {});
    return parse_ppm(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size());
}

/// Reads the rest of a PNG stream whose 8 signature bytes are already
/// consumed. Takes ownership of fp.
inline ImageBuffer read_png_stream(std::FILE* fp) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw IoError("PNG: cannot allocate decoder");
    }
    std::vector<unsigned char> raster;
    std::vector<png_bytep> rows;
    // longjmp lands here on any decode error; only C frames unwind.
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw ParseError("PNG: malformed or truncated stream");
    }
    png_init_io(png, fp);
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    if (width == 0 || height == 0 || width > (1u << 20) || height > (1u << 20) ||
        std::size_t{width} * height > 100'000'000u)
        longjmp(png_jmpbuf(png), 1);

    if (color_type == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS))
        png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    const int out_depth = png_get_bit_depth(png, info);
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    if (png_get_channels(png, info) != 3 || (out_depth != 8 && out_depth != 16))
        longjmp(png_jmpbuf(png), 1);

    raster.resize(rowbytes * height);
    rows.resize(height);
    for (std::size_t y = 0; y < height; ++y)
        rows[y] = raster.data() + y * rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);

    ImageBuffer img(width, height);
    if (out_depth == 8) {
        const double scale = 1.0 / 255.0;
        for (std::size_t y = 0; y < height; ++y) {
            const unsigned char* s = raster.data() + y * rowbytes;
            for (std::size_t x = 0; x < width; ++x, s += 3) {
                double* px = img.pixel(x, y);
                px[0] = s[2] * scale;
                px[1] = s[1] * scale;
                px[2] = s[0] * scale;
            }
        }
    } else {
        // PNG 16-bit samples arrive big-endian.
        const double scale = 1.0 / 65535.0;
        for (std::size_t y = 0; y < height; ++y) {
            const unsigned char* s = raster.data() + y * rowbytes;
            for (std::size_t x = 0; x < width; ++x, s += 6) {
                const unsigned r = (static_cast<unsigned>(s[0]) << 8) | s[1];
                const unsigned g = (static_cast<unsigned>(s[2]) << 8) | s[3];
                const unsigned b = (static_cast<unsigned>(s[4]) << 8) | s[5];
                double* px = img.pixel(x, y);
                px[0] = b * scale;
                px[1] = g * scale;
                px[2] = r * scale;
            }
        }
    }
    return img;
}

inline bool has_suffix_ci(const std::string& s, const std::string& suffix) {
    if (s.size() < suffix.size())
        return false;
    for (std::size_t i = 0; i < suffix.size(); ++i) {
        const char a = s[s.size() - suffix.size() + i];
        const char b = suffix[i];
        if (std::tolower(static_cast<unsigned char>(a)) != b)
            return false;
    }
    return true;
}

} // namespace detail

/// Load an 8/16-bit PNG or binary PPM (P6). Samples are scaled to [0, 1]
/// and stored in (B, G, R) order. Unrecognized formats raise IoError;
/// malformed or truncated files of a recognized format raise ParseError.
inline ImageBuffer read_image(const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp)
        throw IoError("cannot open '" + path + "'");
    unsigned char sig[8] = {0};
    const std::size_t got = std::fread(sig, 1, 8, fp);
    if (got >= 2 && sig[0] == 'P' && sig[1] == '6') {
        std::fclose(fp);
        return detail::read_ppm_file(path);
    }
    if (got == 8 && png_sig_cmp(sig, 0, 8) == 0)
        return detail::read_png_stream(fp);
    std::fclose(fp);
    throw IoError("unrecognized image format: '" + path + "'");
}

/// Write an 8-bit RGB PNG.
inline void write_png(const std::string& path, const ImageBuffer& img) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp)
        throw IoError("cannot open '" + path + "' for writing");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw IoError("PNG: cannot allocate encoder");
    }
    std::vector<unsigned char> row(img.width() * 3);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw IoError("PNG: encode failed");
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()),
                 static_cast<png_uint_32>(img.height()), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (std::size_t y = 0; y < img.height(); ++y) {
        for (std::size_t x = 0; x < img.width(); ++x) {
            const double* px = img.pixel(x, y);
            row[3 * x + 0] = detail::encode8(px[2]);
            row[3 * x + 1] = detail::encode8(px[1]);
            row[3 * x + 2] = detail::encode8(px[0]);
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

/// Write an 8-bit binary PPM (P6, maxval 255).
inline void write_ppm(const std::string& path, const ImageBuffer& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
    std::vector<unsigned char> row(img.width() * 3);
    for (std::size_t y = 0; y < img.height(); ++y) {
        for (std::size_t x = 0; x < img.width(); ++x) {
            const double* px = img.pixel(x, y);
            row[3 * x + 0] = detail::encode8(px[2]);
            row[3 * x + 1] = detail::encode8(px[1]);
            row[3 * x + 2] = detail::encode8(px[0]);
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size()));
    }
    if (!out)
        throw IoError("short write to '" + path + "'");
}

/// Write PNG or PPM depending on the path suffix.
inline void write_image(const std::string& path, const ImageBuffer& img) {
    if (detail::has_suffix_ci(path, ".png"))
        write_png(path, img);
    else if (detail::has_suffix_ci(path, ".ppm"))
        write_ppm(path, img);
    else
        throw IoError("unknown output image format: '" + path + "'");
}

} // namespace chromadec
