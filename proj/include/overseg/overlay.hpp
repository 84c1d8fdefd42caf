#pragma once

#include "overseg/pipeline.hpp"

namespace overseg {

struct Color {
    std::uint8_t r = 0, g = 0, b = 0;
};

// Accepted circle-like objects draw red, accepted rod boxes blue; rejections
// keep their own colors so the filter outcome is visible at a glance.
inline constexpr Color kAcceptedEllipse{220, 30, 30};
inline constexpr Color kAcceptedBox{40, 70, 230};
inline constexpr Color kMaskingRejected{30, 180, 60};
inline constexpr Color kOverlapRejected{230, 200, 30};
inline constexpr Color kCornerMarker{255, 140, 0};
inline constexpr Color kConcaveMarker{0, 220, 220};

void draw_ellipse(RgbImage& img, const Ellipse& e, Color color);
void draw_box(RgbImage& img, const RodBox& box, Color color);
void draw_marker(RgbImage& img, int x, int y, Color color);  // 3x3 cross
void draw_points(RgbImage& img, std::span<const Point2i> points, Color color);

/// Gray base converted to RGB with all fitted shapes drawn per verdict. With
/// debug enabled, corner/concave markers and per-group contour colors are
/// added.
RgbImage make_overlay(const GrayImage& base, const SegmentationResult& result, bool debug = false);

}  // namespace overseg
