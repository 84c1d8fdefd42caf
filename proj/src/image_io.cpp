#include "overseg/image_io.hpp"

#include <cstdio>
#include <cstring>
#include <memory>

#include <png.h>

#include "overseg/imgproc.hpp"

namespace overseg {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw FormatError("cannot open " + path);
    return f;
}

// --- PGM (binary P5) ---------------------------------------------------------

int pgm_next_token(std::FILE* f) {
    // Skips whitespace and `#` comments, returns a nonnegative integer.
    int c = std::fgetc(f);
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = std::fgetc(f);
        } else if (std::isspace(c)) {
            c = std::fgetc(f);
        } else {
            break;
        }
    }
    if (c == EOF || !std::isdigit(c)) return -1;
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        c = std::fgetc(f);
    }
    return value;
}

GrayImage load_pgm(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    char magic[2];
    if (std::fread(magic, 1, 2, f.get()) != 2 || magic[0] != 'P' || magic[1] != '5')
        throw FormatError(path + ": not a binary PGM (P5) file");
    int w = pgm_next_token(f.get());
    int h = pgm_next_token(f.get());
    int maxval = pgm_next_token(f.get());
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535)
        throw FormatError(path + ": malformed PGM header");

    GrayImage img(w, h);
    const std::size_t n = img.pixel_count();
    if (maxval < 256) {
        if (std::fread(img.data.data(), 1, n, f.get()) != n)
            throw FormatError(path + ": truncated PGM data");
    } else {
        std::vector<std::uint8_t> raw(n * 2);
        if (std::fread(raw.data(), 1, raw.size(), f.get()) != raw.size())
            throw FormatError(path + ": truncated PGM data");
        for (std::size_t i = 0; i < n; ++i) img.data[i] = raw[i * 2];  // big-endian MSB
    }
    return img;
}

// --- PNG ---------------------------------------------------------------------

[[noreturn]] void png_error_fn(png_structp png, png_const_charp msg) {
    throw FormatError(std::string("libpng: ") + msg);
}

void png_warn_fn(png_structp, png_const_charp) {}

std::variant<GrayImage, RgbImage> load_png(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn,
                                             png_warn_fn);
    if (!png) throw FormatError("libpng: cannot allocate read struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw FormatError("libpng: cannot allocate info struct");
    }
    try {
        png_init_io(png, f.get());
        png_read_info(png, info);

        png_byte color = png_get_color_type(png, info);
        png_byte depth = png_get_bit_depth(png, info);
        if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
        if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
        if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
        if (depth == 16) png_set_strip_16(png);  // keep the high byte
        if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
        png_read_update_info(png, info);

        const int w = static_cast<int>(png_get_image_width(png, info));
        const int h = static_cast<int>(png_get_image_height(png, info));
        const int channels = png_get_channels(png, info);

        std::vector<std::uint8_t> raw(static_cast<std::size_t>(w) * h * channels);
        std::vector<png_bytep> rows(h);
        for (int y = 0; y < h; ++y)
            rows[y] = raw.data() + static_cast<std::size_t>(y) * w * channels;
        png_read_image(png, rows.data());
        png_destroy_read_struct(&png, &info, nullptr);

        if (channels == 1) {
            GrayImage img(w, h);
            img.data = std::move(raw);
            return img;
        }
        if (channels == 3) {
            RgbImage img(w, h);
            img.data = std::move(raw);
            return img;
        }
        throw FormatError(path + ": unsupported PNG channel count");
    } catch (...) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw;
    }
}

void save_png_impl(const std::string& path, int w, int h, int color_type, int channels,
                   const std::uint8_t* data) {
    FilePtr f = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn,
                                              png_warn_fn);
    if (!png) throw FormatError("libpng: cannot allocate write struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw FormatError("libpng: cannot allocate info struct");
    }
    try {
        png_init_io(png, f.get());
        png_set_IHDR(png, info, w, h, 8, color_type, PNG_INTERLACE_NONE,
                     PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);
        std::vector<png_bytep> rows(h);
        for (int y = 0; y < h; ++y)
            rows[y] = const_cast<png_bytep>(data + static_cast<std::size_t>(y) * w * channels);
        png_write_image(png, rows.data());
        png_write_end(png, nullptr);
        png_destroy_write_struct(&png, &info);
    } catch (...) {
        png_destroy_write_struct(&png, &info);
        throw;
    }
}

}  // namespace

std::variant<GrayImage, RgbImage> load_image(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    unsigned char sig[8] = {};
    std::size_t got = std::fread(sig, 1, sizeof(sig), f.get());
    f.reset();
    if (got >= 2 && sig[0] == 'P' && sig[1] == '5') return load_pgm(path);
    if (got >= 8 && png_sig_cmp(sig, 0, 8) == 0) return load_png(path);
    throw FormatError(path + ": not a PNG or binary PGM file");
}

GrayImage load_gray(const std::string& path) {
    auto loaded = load_image(path);
    if (std::holds_alternative<GrayImage>(loaded)) return std::get<GrayImage>(std::move(loaded));
    return to_grayscale(std::get<RgbImage>(loaded));
}

void save_pgm(const std::string& path, const GrayImage& img) {
    FilePtr f = open_file(path, "wb");
    std::fprintf(f.get(), "P5\n%d %d\n255\n", img.width, img.height);
    if (std::fwrite(img.data.data(), 1, img.data.size(), f.get()) != img.data.size())
        throw FormatError("short write: " + path);
}

void save_pgm(const std::string& path, const BinaryImage& img) {
    GrayImage g(img.width, img.height);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) g.data[i] = img.mask[i] ? 255 : 0;
    save_pgm(path, g);
}

void save_png(const std::string& path, const GrayImage& img) {
    save_png_impl(path, img.width, img.height, PNG_COLOR_TYPE_GRAY, 1, img.data.data());
}

void save_png(const std::string& path, const RgbImage& img) {
    save_png_impl(path, img.width, img.height, PNG_COLOR_TYPE_RGB, 3, img.data.data());
}

}  // namespace overseg
