#include "overseg/shapefit.hpp"

#include <cmath>
#include <numbers>

namespace overseg {

Ellipse fit_group(const SegmentGroup& group) {
    return fit_ellipse_lsq(std::span<const Point2i>(group.pooled_points));
}

ShapeClass classify_shape(const Ellipse& e, double threshold) {
    return aspect_ratio(e) < threshold ? ShapeClass::CircleLike : ShapeClass::RodLike;
}

RodBox bounding_box_rod(std::span<const Point2d> points, const Ellipse& e) {
    if (points.size() < 2) throw ParameterError("bounding_box_rod: at least 2 points required");

    const Point2d origin{e.cx, e.cy};
    const Point2d major{std::cos(e.theta), std::sin(e.theta)};
    const Point2d minor{-major.y, major.x};

    Extent along = project_extent(points, origin, major);
    Extent across = project_extent(points, origin, minor);

    double length = along.max - along.min;
    double width = across.max - across.min;
    if (length <= 0.0 && width <= 0.0)
        throw ParameterError("bounding_box_rod: degenerate point set");

    RodBox box;
    const double mid_along = 0.5 * (along.min + along.max);
    const double mid_across = 0.5 * (across.min + across.max);
    box.cx = origin.x + major.x * mid_along + minor.x * mid_across;
    box.cy = origin.y + major.y * mid_along + minor.y * mid_across;
    box.length = length;
    box.width = width;
    box.theta = e.theta;
    if (box.width > box.length) {
        std::swap(box.length, box.width);
        box.theta = normalize_axis_angle(box.theta + std::numbers::pi / 2.0);
    }
    if (!(box.width > 0.0)) throw ParameterError("bounding_box_rod: zero-width point set");
    return box;
}

RodBox bounding_box_rod(std::span<const Point2i> points, const Ellipse& e) {
    auto pts = to_point2d_vec(points);
    return bounding_box_rod(std::span<const Point2d>(pts), e);
}

double px_to_um(double value_px, double um_per_px) {
    if (!(um_per_px > 0.0)) throw ParameterError("px_to_um: scale must be positive");
    return value_px * um_per_px;
}

Point2d detection_center(const DetectedObject& obj) {
    if (obj.shape_class == ShapeClass::RodLike && obj.rod) return {obj.rod->cx, obj.rod->cy};
    return {obj.ellipse.cx, obj.ellipse.cy};
}

bool point_in_rod_box(const RodBox& box, double x, double y) {
    const double dx = x - box.cx;
    const double dy = y - box.cy;
    const double c = std::cos(box.theta), s = std::sin(box.theta);
    const double u = dx * c + dy * s;
    const double v = -dx * s + dy * c;
    return std::abs(u) <= 0.5 * box.length && std::abs(v) <= 0.5 * box.width;
}

}  // namespace overseg
