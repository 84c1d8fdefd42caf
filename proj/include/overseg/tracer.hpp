#pragma once

#include <iosfwd>
#include <vector>

#include "overseg/image.hpp"
#include "overseg/types.hpp"

namespace overseg {

/// One traced closed boundary chain; may enclose several overlapped objects.
struct ContourCluster {
    int id = 0;
    std::vector<Point2i> points;  // consecutive points 8-adjacent, loop closed
};

/// Outer-border following on the foreground mask. Returns one chain per
/// 8-connected component, traversed so the shoelace area is positive
/// (counter-clockwise with y pointing down), starting at the raster-order
/// first pixel. Hole borders are not traced. Chains shorter than
/// max(min_points, 3) are discarded.
std::vector<ContourCluster> trace_contours(const BinaryImage& img, int min_points = 20);

/// Signed shoelace area of a closed chain (positive for trace order above).
double chain_area(const std::vector<Point2i>& points);

/// Debug dump, one contour per line: `id: (x,y) (x,y) ...`.
void dump_contours(std::ostream& os, const std::vector<ContourCluster>& clusters);

}  // namespace overseg
