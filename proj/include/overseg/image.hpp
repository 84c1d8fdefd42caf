#pragma once

#include <cstdint>
#include <vector>

#include "overseg/types.hpp"

namespace overseg {

/// Single-channel 8-bit image, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0) : width(w), height(h) {
        if (w <= 0 || h <= 0) throw DimensionError("GrayImage: width and height must be positive");
        data.assign(static_cast<std::size_t>(w) * h, fill);
    }

    bool empty() const { return data.empty(); }
    std::size_t pixel_count() const { return data.size(); }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Foreground mask, row-major; 1 = foreground (object) pixel, 0 = background.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask;

    BinaryImage() = default;
    BinaryImage(int w, int h, bool fill = false) : width(w), height(h) {
        if (w <= 0 || h <= 0) throw DimensionError("BinaryImage: width and height must be positive");
        mask.assign(static_cast<std::size_t>(w) * h, fill ? 1 : 0);
    }

    bool empty() const { return mask.empty(); }
    std::size_t pixel_count() const { return mask.size(); }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    bool at(int x, int y) const { return mask[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) { mask[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }

    std::size_t foreground_count() const {
        std::size_t n = 0;
        for (auto v : mask) n += v != 0;
        return n;
    }
};

/// Interleaved 8-bit RGB image, row-major.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // 3 * width * height

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h) {
        if (w <= 0 || h <= 0) throw DimensionError("RgbImage: width and height must be positive");
        data.assign(static_cast<std::size_t>(w) * h * 3, 0);
    }

    bool empty() const { return data.empty(); }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    std::uint8_t at(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    std::uint8_t& at(int x, int y, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        auto* p = &data[(static_cast<std::size_t>(y) * width + x) * 3];
        p[0] = r;
        p[1] = g;
        p[2] = b;
    }
};

}  // namespace overseg
