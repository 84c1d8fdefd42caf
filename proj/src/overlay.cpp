#include "overseg/overlay.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace overseg {

namespace {

void put(RgbImage& img, int x, int y, Color c) {
    if (img.in_bounds(x, y)) img.set(x, y, c.r, c.g, c.b);
}

void draw_line(RgbImage& img, Point2d a, Point2d b, Color c) {
    int x0 = static_cast<int>(std::lround(a.x)), y0 = static_cast<int>(std::lround(a.y));
    int x1 = static_cast<int>(std::lround(b.x)), y1 = static_cast<int>(std::lround(b.y));
    int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
    int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
        put(img, x0, y0, c);
        if (x0 == x1 && y0 == y1) break;
        int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

// Colors cycled over segment groups in the debug overlay.
constexpr std::array<Color, 6> kGroupPalette = {{{230, 60, 180},
                                                 {60, 200, 230},
                                                 {240, 160, 40},
                                                 {120, 220, 60},
                                                 {170, 90, 240},
                                                 {240, 220, 60}}};

}  // namespace

void draw_ellipse(RgbImage& img, const Ellipse& e, Color color) {
    const int steps = std::max(32, static_cast<int>(2.0 * std::numbers::pi * e.a));
    const double c = std::cos(e.theta), s = std::sin(e.theta);
    for (int i = 0; i < steps; ++i) {
        double t = 2.0 * std::numbers::pi * i / steps;
        double u = e.a * std::cos(t);
        double v = e.b * std::sin(t);
        put(img, static_cast<int>(std::lround(e.cx + u * c - v * s)),
            static_cast<int>(std::lround(e.cy + u * s + v * c)), color);
    }
}

void draw_box(RgbImage& img, const RodBox& box, Color color) {
    const double c = std::cos(box.theta), s = std::sin(box.theta);
    const Point2d major{c, s};
    const Point2d minor{-s, c};
    const Point2d center{box.cx, box.cy};
    const double hl = 0.5 * box.length, hw = 0.5 * box.width;
    std::array<Point2d, 4> corners = {
        center + major * hl + minor * hw,
        center + major * hl - minor * hw,
        center - major * hl - minor * hw,
        center - major * hl + minor * hw,
    };
    for (int i = 0; i < 4; ++i) draw_line(img, corners[i], corners[(i + 1) % 4], color);
}

void draw_marker(RgbImage& img, int x, int y, Color color) {
    put(img, x, y, color);
    put(img, x - 1, y, color);
    put(img, x + 1, y, color);
    put(img, x, y - 1, color);
    put(img, x, y + 1, color);
}

void draw_points(RgbImage& img, std::span<const Point2i> points, Color color) {
    for (const auto& p : points) put(img, p.x, p.y, color);
}

RgbImage make_overlay(const GrayImage& base, const SegmentationResult& result, bool debug) {
    RgbImage img(base.width, base.height);
    for (int y = 0; y < base.height; ++y) {
        for (int x = 0; x < base.width; ++x) {
            std::uint8_t v = base.at(x, y);
            img.set(x, y, v, v, v);
        }
    }

    if (debug) {
        for (std::size_t ci = 0; ci < result.clusters.size(); ++ci) {
            const auto& cluster = result.clusters[ci];
            const auto& dbg = result.debug[ci];
            for (std::size_t gi = 0; gi < dbg.groups.size(); ++gi)
                draw_points(img, dbg.groups[gi].pooled_points,
                            kGroupPalette[gi % kGroupPalette.size()]);
            for (int idx : dbg.corner_indices)
                draw_marker(img, cluster.points[idx].x, cluster.points[idx].y, kCornerMarker);
            for (int idx : dbg.concave_indices)
                draw_marker(img, cluster.points[idx].x, cluster.points[idx].y, kConcaveMarker);
        }
    }

    for (std::size_t i = 0; i < result.objects.size(); ++i) {
        const auto& obj = result.objects[i];
        const auto& verdict = result.verdicts[i];
        if (!verdict.accepted) {
            Color c = verdict.reason == FilterReason::MaskingRejected ? kMaskingRejected
                                                                      : kOverlapRejected;
            draw_ellipse(img, obj.ellipse, c);
            continue;
        }
        if (obj.shape_class == ShapeClass::RodLike && obj.rod)
            draw_box(img, *obj.rod, kAcceptedBox);
        else
            draw_ellipse(img, obj.ellipse, kAcceptedEllipse);
    }
    return img;
}

}  // namespace overseg
