#pragma once

#include <vector>

#include "overseg/tracer.hpp"
#include "overseg/types.hpp"

namespace overseg {

/// Vertices retained by polyline simplification, as indices into
/// ContourCluster::points, strictly increasing.
struct CornerPointSet {
    std::vector<int> indices;
};

/// Corners whose local turn disagrees with the contour's net orientation.
/// Indices into ContourCluster::points; an ordered subset of the corners.
struct ConcavePointSet {
    std::vector<int> contour_indices;
};

/// Ramer-Douglas-Peucker on the closed chain. The chain is anchored at point 0
/// and the point farthest from it, and each arc is simplified recursively;
/// every dropped point lies within perpendicular distance epsilon of the
/// simplified polyline. Throws ParameterError on epsilon <= 0 or N < 3.
CornerPointSet rdp_simplify(const ContourCluster& contour, double epsilon);

/// Sign of the z component of (p - p_prev) x (p_next - p); 0 for collinear.
int cross_sign(Point2i p_prev, Point2i p, Point2i p_next);

/// Per-corner orientation signs with circular neighbors; net orientation is
/// the sign of their sum. Corners with a nonzero sign opposing the net sign
/// are concave. Throws AmbiguousOrientationError when the signs sum to zero,
/// ParameterError when fewer than 3 corners are given.
ConcavePointSet extract_concave_points(const ContourCluster& contour, const CornerPointSet& corners);

}  // namespace overseg
