#include "overseg/tracer.hpp"

#include <algorithm>
#include <ostream>

#include "overseg/imgproc.hpp"

namespace overseg {

namespace {

// Neighborhood ring; increasing index steps clockwise in (x right, y down)
// coordinates, so a decreasing scan is counter-clockwise.
constexpr Point2i kRing[8] = {{1, 0},  {1, -1}, {0, -1}, {-1, -1},
                              {-1, 0}, {-1, 1}, {0, 1},  {1, 1}};

int direction_between(Point2i from, Point2i to) {
    for (int d = 0; d < 8; ++d)
        if (from.x + kRing[d].x == to.x && from.y + kRing[d].y == to.y) return d;
    return -1;
}

// Border following from the raster-first pixel of one component (its left and
// up neighbors are background). The entry neighbor is searched clockwise from
// the left neighbor; each step then scans counter-clockwise from the previous
// pixel. The walk ends when the next pixel would be the start and the current
// pixel is the entry neighbor, yielding a closed chain with positive shoelace
// area. Each visited pixel has a background 4-neighbor.
std::vector<Point2i> follow_border(const BinaryImage& img, Point2i start) {
    auto fg = [&](Point2i p) { return img.in_bounds(p.x, p.y) && img.at(p.x, p.y); };

    int entry_dir = -1;
    for (int k = 1; k <= 8; ++k) {
        int d = (4 + k) % 8;
        Point2i cand{start.x + kRing[d].x, start.y + kRing[d].y};
        if (fg(cand)) {
            entry_dir = d;
            break;
        }
    }
    if (entry_dir < 0) return {start};  // isolated pixel

    const Point2i entry{start.x + kRing[entry_dir].x, start.y + kRing[entry_dir].y};
    std::vector<Point2i> chain;
    Point2i prev = entry;
    Point2i cur = start;
    const std::size_t safety_cap = 4 * img.pixel_count() + 8;
    while (chain.size() < safety_cap) {
        chain.push_back(cur);
        int back = direction_between(cur, prev);
        Point2i next{};
        for (int k = 1; k <= 8; ++k) {
            int d = (back - k + 16) % 8;
            Point2i cand{cur.x + kRing[d].x, cur.y + kRing[d].y};
            if (fg(cand)) {
                next = cand;
                break;
            }
        }
        if (next == start && cur == entry) break;
        prev = cur;
        cur = next;
    }
    return chain;
}

}  // namespace

std::vector<ContourCluster> trace_contours(const BinaryImage& img, int min_points) {
    if (img.empty()) return {};
    const int effective_min = std::max(min_points, 3);

    auto comps = connected_components(img, 8);
    std::vector<Point2i> starts(comps.count, Point2i{-1, -1});
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            std::int32_t id = comps.labels[static_cast<std::size_t>(y) * img.width + x];
            if (id >= 0 && starts[id].x < 0) starts[id] = {x, y};
        }
    }

    std::vector<ContourCluster> out;
    int next_id = 0;
    for (int c = 0; c < comps.count; ++c) {
        auto chain = follow_border(img, starts[c]);
        if (static_cast<int>(chain.size()) < effective_min) continue;
        out.push_back(ContourCluster{next_id++, std::move(chain)});
    }
    return out;
}

double chain_area(const std::vector<Point2i>& points) {
    double acc = 0.0;
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = points[i];
        const auto& q = points[(i + 1) % n];
        acc += static_cast<double>(p.x) * q.y - static_cast<double>(q.x) * p.y;
    }
    return 0.5 * acc;
}

void dump_contours(std::ostream& os, const std::vector<ContourCluster>& clusters) {
    for (const auto& c : clusters) {
        os << c.id << ':';
        for (const auto& p : c.points) os << " (" << p.x << ',' << p.y << ')';
        os << '\n';
    }
}

}  // namespace overseg
