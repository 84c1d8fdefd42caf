#include "overseg/pipeline.hpp"

#include <algorithm>

namespace overseg {

int SegmentationResult::accepted_count() const {
    int n = 0;
    for (const auto& v : verdicts) n += v.accepted ? 1 : 0;
    return n;
}

std::vector<DetectedObject> SegmentationResult::accepted_objects() const {
    std::vector<DetectedObject> out;
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (verdicts[i].accepted) out.push_back(objects[i]);
    return out;
}

SegmentationResult segment_image(const GrayImage& img, const PipelineConfig& cfg) {
    cfg.validate();
    SegmentationResult res;

    GrayImage blurred = median_blur(img, cfg.median_radius);
    try {
        OtsuResult otsu = otsu_threshold(blurred, cfg.dark_foreground);
        res.otsu_level = otsu.level;
        res.mask = morph_cleanup(otsu.mask, cfg.open_radius, cfg.close_radius, cfg.min_area);
    } catch (const DegenerateHistogramError&) {
        res.mask = BinaryImage(img.width, img.height);  // constant image: nothing to segment
        return res;
    }

    res.clusters = trace_contours(res.mask, cfg.min_contour_points);

    for (const auto& cluster : res.clusters) {
        ClusterDebug dbg;
        dbg.cluster_id = cluster.id;

        CornerPointSet corners = rdp_simplify(cluster, cfg.rdp_epsilon);
        dbg.corner_indices = corners.indices;

        ConcavePointSet concave;
        if (corners.indices.size() >= 3) {
            try {
                concave = extract_concave_points(cluster, corners);
            } catch (const AmbiguousOrientationError&) {
                dbg.ambiguous_orientation = true;  // keep the cluster unsplit
            }
        }
        dbg.concave_indices = concave.contour_indices;

        auto segments = split_segments(cluster, concave);
        auto groups = map_segments(std::span<const ContourSegment>(segments), cfg.orient_tol_rad(),
                                   cfg.proximity_factor, cfg.aspect_threshold);

        int group_id = 0;
        for (auto& group : groups) {
            DetectedObject obj;
            obj.cluster_id = cluster.id;
            obj.group_id = group_id++;
            try {
                obj.ellipse = fit_group(group);
            } catch (const Error&) {
                ++res.fit_failures;
                continue;
            }
            obj.shape_class = classify_shape(obj.ellipse, cfg.aspect_threshold);
            if (obj.shape_class == ShapeClass::RodLike) {
                try {
                    obj.rod = bounding_box_rod(std::span<const Point2i>(group.pooled_points),
                                               obj.ellipse);
                } catch (const Error&) {
                    ++res.fit_failures;
                    continue;
                }
            }
            res.objects.push_back(std::move(obj));
        }
        dbg.groups = std::move(groups);
        res.debug.push_back(std::move(dbg));
    }

    // Masking filter first, then overlap rejection among its survivors.
    res.verdicts.assign(res.objects.size(), FilterVerdict{});
    std::vector<int> masked_ok;
    for (int i = 0; i < static_cast<int>(res.objects.size()); ++i) {
        if (masking_filter(res.objects[i], res.mask, cfg.fill_threshold)) {
            res.verdicts[i] = {i, true, FilterReason::Accepted};
            masked_ok.push_back(i);
        } else {
            res.verdicts[i] = {i, false, FilterReason::MaskingRejected};
        }
    }
    std::vector<DetectedObject> survivors;
    survivors.reserve(masked_ok.size());
    for (int i : masked_ok) survivors.push_back(res.objects[i]);
    auto overlap_verdicts = overlap_filter(std::span<const DetectedObject>(survivors),
                                           cfg.overlap_threshold);
    for (std::size_t k = 0; k < masked_ok.size(); ++k) {
        if (!overlap_verdicts[k].accepted)
            res.verdicts[masked_ok[k]] = {masked_ok[k], false, FilterReason::OverlapRejected};
    }
    return res;
}

}  // namespace overseg
