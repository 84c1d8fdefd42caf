#pragma once

#include <vector>

#include "overseg/concavity.hpp"
#include "overseg/config.hpp"
#include "overseg/filters.hpp"
#include "overseg/grouping.hpp"
#include "overseg/imgproc.hpp"
#include "overseg/shapefit.hpp"
#include "overseg/tracer.hpp"

namespace overseg {

/// Per-cluster intermediates kept for overlay rendering and diagnostics.
struct ClusterDebug {
    int cluster_id = 0;
    std::vector<int> corner_indices;   // into the cluster's points
    std::vector<int> concave_indices;  // subset of the corners
    std::vector<SegmentGroup> groups;
    bool ambiguous_orientation = false;
};

struct SegmentationResult {
    std::vector<DetectedObject> objects;   // all fitted groups
    std::vector<FilterVerdict> verdicts;   // parallel to objects
    BinaryImage mask;
    std::vector<ContourCluster> clusters;
    std::vector<ClusterDebug> debug;  // parallel to clusters
    int otsu_level = -1;              // -1 when the image was constant
    int fit_failures = 0;             // groups dropped for unfittable pools

    int accepted_count() const;
    std::vector<DetectedObject> accepted_objects() const;
};

/// Full per-image pipeline: blur, threshold, cleanup, trace, concavity split,
/// segment mapping, shape fitting, rejection filters. A constant image yields
/// an empty result; a cluster with ambiguous net orientation passes through
/// unsplit.
SegmentationResult segment_image(const GrayImage& img, const PipelineConfig& cfg);

}  // namespace overseg
