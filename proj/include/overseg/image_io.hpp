#pragma once

#include <string>
#include <variant>

#include "overseg/image.hpp"

namespace overseg {

/// Load a PNG or binary PGM (P5) image, dispatching on the file signature.
/// 16-bit inputs are rescaled to 8 bits by right shift; paletted/alpha PNGs
/// are expanded to plain RGB. Throws FormatError on unreadable content.
std::variant<GrayImage, RgbImage> load_image(const std::string& path);

/// Force-grayscale load: RGB inputs go through the luminance conversion.
GrayImage load_gray(const std::string& path);

void save_pgm(const std::string& path, const GrayImage& img);
void save_pgm(const std::string& path, const BinaryImage& img);  // 0 / 255
void save_png(const std::string& path, const GrayImage& img);
void save_png(const std::string& path, const RgbImage& img);

}  // namespace overseg
