#pragma once

#include <span>
#include <vector>

#include "overseg/concavity.hpp"
#include "overseg/geomfit.hpp"
#include "overseg/tracer.hpp"

namespace overseg {

/// Contour arc between two consecutive concave points of a cluster
/// (the whole cluster when fewer than 2 concave points exist).
struct ContourSegment {
    int cluster_id = 0;
    std::vector<Point2i> points;
};

/// Segments attributed to one physical object.
struct SegmentGroup {
    std::vector<int> member_segments;  // indices into the segment list, sorted
    std::vector<Point2i> pooled_points;
};

/// Split a cluster at its concave points. Each concave point ends one segment
/// and starts the next, so it appears in both. With fewer than 2 concave
/// points the whole cluster is returned as a single segment.
std::vector<ContourSegment> split_segments(const ContourCluster& cluster,
                                           const ConcavePointSet& concave);

/// Regroup segments of one cluster. Segments with at least 5 points get a
/// fitted ellipse; circle-like fits (aspect ratio < aspect_threshold) stay
/// singleton groups. Elongated segments merge pairwise when their orientations
/// are within orient_tol (wraparound) and their fitted centers are closer than
/// proximity_factor * (a_i + a_j); merging closes transitively. Unfittable
/// segments also stay singletons. Groups are ordered by smallest member index.
std::vector<SegmentGroup> map_segments(std::span<const ContourSegment> segments,
                                       double orient_tol, double proximity_factor,
                                       double aspect_threshold = 2.0);

}  // namespace overseg
