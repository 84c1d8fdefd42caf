#include "overseg/grouping.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

namespace overseg {

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);  // smaller index becomes the root
        parent[b] = a;
    }
};

}  // namespace

std::vector<ContourSegment> split_segments(const ContourCluster& cluster,
                                           const ConcavePointSet& concave) {
    const auto& pts = cluster.points;
    const int n = static_cast<int>(pts.size());
    const int p = static_cast<int>(concave.contour_indices.size());

    if (p <= 1) {
        return {ContourSegment{cluster.id, pts}};
    }

    std::vector<ContourSegment> segments;
    segments.reserve(p);
    for (int k = 0; k < p; ++k) {
        int from = concave.contour_indices[k];
        int to = concave.contour_indices[(k + 1) % p];
        ContourSegment seg;
        seg.cluster_id = cluster.id;
        int i = from;
        seg.points.push_back(pts[i]);
        while (i != to) {
            i = (i + 1) % n;
            seg.points.push_back(pts[i]);
        }
        segments.push_back(std::move(seg));
    }
    return segments;
}

std::vector<SegmentGroup> map_segments(std::span<const ContourSegment> segments,
                                       double orient_tol, double proximity_factor,
                                       double aspect_threshold) {
    const int n = static_cast<int>(segments.size());
    if (n == 0) return {};

    std::vector<std::optional<Ellipse>> fits(n);
    std::vector<char> elongated(n, 0);
    for (int i = 0; i < n; ++i) {
        if (segments[i].points.size() < 5) continue;
        try {
            fits[i] = fit_ellipse_lsq(std::span<const Point2i>(segments[i].points));
        } catch (const Error&) {
            continue;  // unfittable, stays singleton
        }
        if (aspect_ratio(*fits[i]) >= aspect_threshold) elongated[i] = 1;
    }

    UnionFind uf(n);
    for (int i = 0; i < n; ++i) {
        if (!elongated[i]) continue;
        for (int j = i + 1; j < n; ++j) {
            if (!elongated[j]) continue;
            const Ellipse& ei = *fits[i];
            const Ellipse& ej = *fits[j];
            if (angle_distance(ei.theta, ej.theta) >= orient_tol) continue;
            double d = std::hypot(ei.cx - ej.cx, ei.cy - ej.cy);
            if (d < proximity_factor * (ei.a + ej.a)) uf.unite(i, j);
        }
    }

    std::map<int, SegmentGroup> by_root;  // keyed by root = smallest member index
    for (int i = 0; i < n; ++i) by_root[uf.find(i)].member_segments.push_back(i);

    std::vector<SegmentGroup> groups;
    groups.reserve(by_root.size());
    for (auto& [root, g] : by_root) {
        std::sort(g.member_segments.begin(), g.member_segments.end());
        for (int idx : g.member_segments)
            g.pooled_points.insert(g.pooled_points.end(), segments[idx].points.begin(),
                                   segments[idx].points.end());
        groups.push_back(std::move(g));
    }
    return groups;
}

}  // namespace overseg
