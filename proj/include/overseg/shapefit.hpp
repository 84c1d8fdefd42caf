#pragma once

#include <optional>
#include <span>

#include "overseg/geomfit.hpp"
#include "overseg/grouping.hpp"

namespace overseg {

enum class ShapeClass { CircleLike, RodLike };

/// Oriented box; theta in [0, pi), length measured along theta.
struct RodBox {
    double cx = 0.0;
    double cy = 0.0;
    double length = 0.0;
    double width = 0.0;  // length >= width > 0
    double theta = 0.0;
};

/// Final per-group detection. The fitted ellipse is always present; the box
/// only for rod-like objects.
struct DetectedObject {
    ShapeClass shape_class = ShapeClass::CircleLike;
    Ellipse ellipse;
    std::optional<RodBox> rod;
    int cluster_id = 0;
    int group_id = 0;
};

/// Least-squares ellipse over the group's pooled points.
Ellipse fit_group(const SegmentGroup& group);

/// CircleLike below the aspect-ratio threshold, RodLike at or above it.
ShapeClass classify_shape(const Ellipse& e, double threshold = 2.0);

/// Oriented box from projection extents along the ellipse axes: length spans
/// the projections onto the major-axis direction, width onto the minor-axis
/// direction, center at the interval midpoints. Extents cover the visible
/// points only; hidden parts are not extrapolated. Canonicalized so
/// length >= width. Throws ParameterError when the points are degenerate.
RodBox bounding_box_rod(std::span<const Point2d> points, const Ellipse& e);
RodBox bounding_box_rod(std::span<const Point2i> points, const Ellipse& e);

/// Throws ParameterError when scale <= 0.
double px_to_um(double value_px, double um_per_px);

/// Center reported for matching/serialization: box center for rods, ellipse
/// center otherwise.
Point2d detection_center(const DetectedObject& obj);

bool point_in_rod_box(const RodBox& box, double x, double y);

}  // namespace overseg
