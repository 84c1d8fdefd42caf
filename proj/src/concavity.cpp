#include "overseg/concavity.hpp"

#include <algorithm>
#include <cmath>

namespace overseg {

namespace {

double point_segment_distance(Point2d p, Point2d a, Point2d b) {
    Point2d ab = b - a;
    double len_sq = dot(ab, ab);
    if (len_sq <= 0.0) return distance(p, a);
    double t = std::clamp(dot(p - a, ab) / len_sq, 0.0, 1.0);
    return distance(p, a + ab * t);
}

// Simplify the arc between chain indices held in idx[lo..hi]; marks kept
// indices. Splits at the farthest point (smallest index on ties).
void rdp_arc(const std::vector<Point2i>& pts, const std::vector<int>& idx, std::size_t lo,
             std::size_t hi, double epsilon, std::vector<char>& keep) {
    keep[idx[lo]] = 1;
    keep[idx[hi]] = 1;
    if (hi <= lo + 1) return;
    Point2d a = to_point2d(pts[idx[lo]]);
    Point2d b = to_point2d(pts[idx[hi]]);
    double best = -1.0;
    std::size_t split = lo;
    for (std::size_t i = lo + 1; i < hi; ++i) {
        double d = point_segment_distance(to_point2d(pts[idx[i]]), a, b);
        if (d > best) {
            best = d;
            split = i;
        }
    }
    if (best > epsilon) {
        rdp_arc(pts, idx, lo, split, epsilon, keep);
        rdp_arc(pts, idx, split, hi, epsilon, keep);
    }
}

}  // namespace

CornerPointSet rdp_simplify(const ContourCluster& contour, double epsilon) {
    const auto& pts = contour.points;
    const int n = static_cast<int>(pts.size());
    if (n < 3) throw ParameterError("rdp_simplify: contour needs at least 3 points");
    if (epsilon <= 0.0) throw ParameterError("rdp_simplify: epsilon must be positive");

    // Second anchor: the point farthest from point 0.
    int far_idx = 1;
    long long best_sq = -1;
    for (int i = 1; i < n; ++i) {
        long long dx = pts[i].x - pts[0].x;
        long long dy = pts[i].y - pts[0].y;
        long long d = dx * dx + dy * dy;
        if (d > best_sq) {
            best_sq = d;
            far_idx = i;
        }
    }

    std::vector<char> keep(n, 0);
    {
        std::vector<int> idx(far_idx + 1);
        for (int i = 0; i <= far_idx; ++i) idx[i] = i;
        rdp_arc(pts, idx, 0, idx.size() - 1, epsilon, keep);
    }
    {
        std::vector<int> idx;
        idx.reserve(n - far_idx + 1);
        for (int i = far_idx; i < n; ++i) idx.push_back(i);
        idx.push_back(0);  // wrap to close the loop
        rdp_arc(pts, idx, 0, idx.size() - 1, epsilon, keep);
    }

    CornerPointSet out;
    for (int i = 0; i < n; ++i)
        if (keep[i]) out.indices.push_back(i);
    return out;
}

int cross_sign(Point2i p_prev, Point2i p, Point2i p_next) {
    long long v1x = p.x - p_prev.x;
    long long v1y = p.y - p_prev.y;
    long long v2x = p_next.x - p.x;
    long long v2y = p_next.y - p.y;
    long long z = v1x * v2y - v1y * v2x;
    return z > 0 ? 1 : (z < 0 ? -1 : 0);
}

ConcavePointSet extract_concave_points(const ContourCluster& contour, const CornerPointSet& corners) {
    const int m = static_cast<int>(corners.indices.size());
    if (m < 3) throw ParameterError("extract_concave_points: need at least 3 corner points");

    std::vector<int> orientation(m);
    long long net = 0;
    for (int i = 0; i < m; ++i) {
        Point2i prev = contour.points[corners.indices[(i + m - 1) % m]];
        Point2i cur = contour.points[corners.indices[i]];
        Point2i next = contour.points[corners.indices[(i + 1) % m]];
        orientation[i] = cross_sign(prev, cur, next);
        net += orientation[i];
    }
    if (net == 0)
        throw AmbiguousOrientationError("extract_concave_points: net orientation sums to zero");
    const int net_sign = net > 0 ? 1 : -1;

    ConcavePointSet out;
    for (int i = 0; i < m; ++i)
        if (orientation[i] != 0 && orientation[i] != net_sign)
            out.contour_indices.push_back(corners.indices[i]);
    return out;
}

}  // namespace overseg
