#pragma once

#include <span>
#include <vector>

#include "overseg/image.hpp"
#include "overseg/shapefit.hpp"

namespace overseg {

enum class FilterReason { Accepted, MaskingRejected, OverlapRejected };

struct FilterVerdict {
    int object_id = 0;
    bool accepted = true;
    FilterReason reason = FilterReason::Accepted;
};

/// Foreground fill test: rasterize the object's region (ellipse interior, rod
/// box interior for rods) and accept iff the foreground fraction is at least
/// fill_threshold. Pixels outside the image count as background; a zero-area
/// rasterization fails the test.
bool masking_filter(const DetectedObject& obj, const BinaryImage& img,
                    double fill_threshold = 0.75);

/// Pairwise ellipse-overlap rejection: when the larger ellipse covers more
/// than overlap_threshold of the smaller one's area (rasterized), the smaller
/// is rejected. Pairs are processed in descending area of the larger member;
/// rejected objects cannot reject others.
std::vector<FilterVerdict> overlap_filter(std::span<const DetectedObject> objects,
                                          double overlap_threshold = 0.5);

/// Fraction of `inner`'s rasterized area covered by `outer`.
double ellipse_coverage(const Ellipse& inner, const Ellipse& outer);

}  // namespace overseg
