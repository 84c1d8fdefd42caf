#pragma once

#include <cstdint>
#include <vector>

#include "overseg/image.hpp"

namespace overseg {

/// Luminance conversion, 0.299 R + 0.587 G + 0.114 B rounded to nearest.
GrayImage to_grayscale(const RgbImage& rgb);

/// Median filter with a (2*radius+1)^2 window; borders by edge replication.
/// Throws ParameterError if radius < 1 or radius >= min(width, height).
GrayImage median_blur(const GrayImage& img, int radius);

struct OtsuResult {
    int level = 0;       // threshold maximizing between-class variance, smallest on ties
    BinaryImage mask;    // foreground per the chosen polarity
};

/// Global threshold by exhaustive between-class variance maximization.
/// With dark_foreground (default) pixels <= level become foreground.
/// Throws DegenerateHistogramError when the image is constant.
OtsuResult otsu_threshold(const GrayImage& img, bool dark_foreground = true);

/// Opening with a disc of open_radius, closing with a disc of close_radius,
/// then removal of foreground components (8-connected) and background holes
/// (4-connected) with area below min_area. Identity when all parameters are 0.
BinaryImage morph_cleanup(const BinaryImage& img, int open_radius, int close_radius, int min_area);

/// Binary dilation/erosion with a disc structuring element {d : |d| <= radius}.
/// Pixels outside the image count as background.
BinaryImage dilate_disc(const BinaryImage& img, int radius);
BinaryImage erode_disc(const BinaryImage& img, int radius);

struct ComponentLabels {
    std::vector<std::int32_t> labels;  // -1 = background, components numbered from 0
    int count = 0;                     // ids assigned in raster order of first pixel
};

/// Connected-component labeling of the foreground; connectivity is 4 or 8.
ComponentLabels connected_components(const BinaryImage& img, int connectivity);

/// Serial single-thread kernels, kept as the reference the parallel versions
/// are tested and benchmarked against.
namespace reference {

GrayImage to_grayscale(const RgbImage& rgb);
GrayImage median_blur(const GrayImage& img, int radius);
BinaryImage dilate_disc(const BinaryImage& img, int radius);
BinaryImage erode_disc(const BinaryImage& img, int radius);

}  // namespace reference

}  // namespace overseg
