#include "overseg/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace overseg {

namespace {

struct PixelBounds {
    int x0, y0, x1, y1;  // inclusive
};

PixelBounds ellipse_bounds(const Ellipse& e) {
    // Axis-aligned half extents of a rotated ellipse.
    const double c = std::cos(e.theta), s = std::sin(e.theta);
    const double hx = std::sqrt(e.a * e.a * c * c + e.b * e.b * s * s);
    const double hy = std::sqrt(e.a * e.a * s * s + e.b * e.b * c * c);
    return {static_cast<int>(std::floor(e.cx - hx)), static_cast<int>(std::floor(e.cy - hy)),
            static_cast<int>(std::ceil(e.cx + hx)), static_cast<int>(std::ceil(e.cy + hy))};
}

PixelBounds box_bounds(const RodBox& box) {
    const double c = std::cos(box.theta), s = std::sin(box.theta);
    const double hx = 0.5 * (std::abs(box.length * c) + std::abs(box.width * s));
    const double hy = 0.5 * (std::abs(box.length * s) + std::abs(box.width * c));
    return {static_cast<int>(std::floor(box.cx - hx)), static_cast<int>(std::floor(box.cy - hy)),
            static_cast<int>(std::ceil(box.cx + hx)), static_cast<int>(std::ceil(box.cy + hy))};
}

}  // namespace

bool masking_filter(const DetectedObject& obj, const BinaryImage& img, double fill_threshold) {
    if (fill_threshold < 0.0 || fill_threshold > 1.0)
        throw ParameterError("masking_filter: fill_threshold must be in [0, 1]");

    const bool use_box = obj.shape_class == ShapeClass::RodLike && obj.rod.has_value();
    const PixelBounds b = use_box ? box_bounds(*obj.rod) : ellipse_bounds(obj.ellipse);

    long long total = 0;
    long long filled = 0;
    for (int y = b.y0; y <= b.y1; ++y) {
        for (int x = b.x0; x <= b.x1; ++x) {
            bool inside = use_box ? point_in_rod_box(*obj.rod, x, y)
                                  : point_in_ellipse(obj.ellipse, x, y);
            if (!inside) continue;
            ++total;
            if (img.in_bounds(x, y) && img.at(x, y)) ++filled;
        }
    }
    if (total == 0) return false;
    return static_cast<double>(filled) / static_cast<double>(total) >= fill_threshold;
}

double ellipse_coverage(const Ellipse& inner, const Ellipse& outer) {
    const PixelBounds b = ellipse_bounds(inner);
    long long inner_area = 0;
    long long covered = 0;
    for (int y = b.y0; y <= b.y1; ++y) {
        for (int x = b.x0; x <= b.x1; ++x) {
            if (!point_in_ellipse(inner, x, y)) continue;
            ++inner_area;
            if (point_in_ellipse(outer, x, y)) ++covered;
        }
    }
    if (inner_area == 0) return 0.0;
    return static_cast<double>(covered) / static_cast<double>(inner_area);
}

std::vector<FilterVerdict> overlap_filter(std::span<const DetectedObject> objects,
                                          double overlap_threshold) {
    const int n = static_cast<int>(objects.size());
    std::vector<FilterVerdict> verdicts(n);
    for (int i = 0; i < n; ++i) verdicts[i] = {i, true, FilterReason::Accepted};
    if (n < 2) return verdicts;

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    auto area = [&](int i) {
        const Ellipse& e = objects[i].ellipse;
        return std::numbers::pi * e.a * e.b;
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return area(i) > area(j); });

    // Larger members in descending area; each may reject any smaller one
    // (later in the order) while both are still accepted.
    for (int li = 0; li < n; ++li) {
        int large = order[li];
        if (!verdicts[large].accepted) continue;
        for (int si = li + 1; si < n; ++si) {
            int small = order[si];
            if (!verdicts[small].accepted) continue;
            double cov = ellipse_coverage(objects[small].ellipse, objects[large].ellipse);
            if (cov > overlap_threshold)
                verdicts[small] = {small, false, FilterReason::OverlapRejected};
        }
    }
    return verdicts;
}

}  // namespace overseg
