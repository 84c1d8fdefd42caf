#include "overseg/imgproc.hpp"

#include <algorithm>
#include <array>
#include <cstring>

namespace overseg {

namespace {

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    double v = 0.299 * r + 0.587 * g + 0.114 * b;
    long rounded = std::lround(v);
    return static_cast<std::uint8_t>(std::clamp(rounded, 0L, 255L));
}

void check_median_params(const GrayImage& img, int radius) {
    if (img.empty()) throw DimensionError("median_blur: empty image");
    if (radius < 1) throw ParameterError("median_blur: radius must be >= 1");
    if (radius >= std::min(img.width, img.height))
        throw ParameterError("median_blur: radius must be < min(width, height)");
}

std::uint8_t window_median(const GrayImage& img, int cx, int cy, int radius,
                           std::vector<std::uint8_t>& scratch) {
    scratch.clear();
    for (int dy = -radius; dy <= radius; ++dy) {
        int y = std::clamp(cy + dy, 0, img.height - 1);
        for (int dx = -radius; dx <= radius; ++dx) {
            int x = std::clamp(cx + dx, 0, img.width - 1);
            scratch.push_back(img.at(x, y));
        }
    }
    auto mid = scratch.begin() + scratch.size() / 2;
    std::nth_element(scratch.begin(), mid, scratch.end());
    return *mid;
}

std::vector<Point2i> disc_offsets(int radius) {
    std::vector<Point2i> offs;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (dx * dx + dy * dy <= radius * radius) offs.push_back({dx, dy});
    return offs;
}

void check_morph_radius(int radius, const char* what) {
    if (radius < 0) throw ParameterError(std::string(what) + ": radius must be >= 0");
}

// Between-class variance compared exactly as the rational
// (sumB*wF - sumF*wB)^2 / (wB*wF); avoids float argmax ambiguity near ties.
struct VarianceRatio {
    __int128 num_sq = 0;
    long long den = 1;
};

bool greater_than(const VarianceRatio& a, const VarianceRatio& b) {
    return a.num_sq * b.den > b.num_sq * a.den;
}

}  // namespace

GrayImage to_grayscale(const RgbImage& rgb) {
    if (rgb.empty()) throw DimensionError("to_grayscale: empty image");
    GrayImage out(rgb.width, rgb.height);
    const std::int64_t n = static_cast<std::int64_t>(rgb.width) * rgb.height;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::uint8_t* p = &rgb.data[static_cast<std::size_t>(i) * 3];
        out.data[static_cast<std::size_t>(i)] = luma(p[0], p[1], p[2]);
    }
    return out;
}

GrayImage median_blur(const GrayImage& img, int radius) {
    check_median_params(img, radius);
    GrayImage out(img.width, img.height);
#pragma omp parallel
    {
        std::vector<std::uint8_t> scratch;
        scratch.reserve(static_cast<std::size_t>(2 * radius + 1) * (2 * radius + 1));
#pragma omp for schedule(static)
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x)
                out.at(x, y) = window_median(img, x, y, radius, scratch);
    }
    return out;
}

OtsuResult otsu_threshold(const GrayImage& img, bool dark_foreground) {
    if (img.empty()) throw DimensionError("otsu_threshold: empty image");

    std::array<long long, 256> hist{};
    const std::int64_t n = static_cast<std::int64_t>(img.pixel_count());
#pragma omp parallel
    {
        std::array<long long, 256> local{};
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < n; ++i) ++local[img.data[static_cast<std::size_t>(i)]];
#pragma omp critical(overseg_otsu_hist)
        for (int v = 0; v < 256; ++v) hist[v] += local[v];
    }

    long long total = n;
    long long total_sum = 0;
    for (int v = 0; v < 256; ++v) total_sum += static_cast<long long>(v) * hist[v];

    int best_level = -1;
    VarianceRatio best;
    long long w_bg = 0;   // population of {p <= t}
    long long sum_bg = 0;
    for (int t = 0; t < 256; ++t) {
        w_bg += hist[t];
        sum_bg += static_cast<long long>(t) * hist[t];
        long long w_fg = total - w_bg;
        if (w_bg == 0 || w_fg == 0) continue;
        long long sum_fg = total_sum - sum_bg;
        __int128 num = static_cast<__int128>(sum_bg) * w_fg - static_cast<__int128>(sum_fg) * w_bg;
        VarianceRatio cand{num * num, w_bg * w_fg};
        if (best_level < 0 || greater_than(cand, best)) {
            best = cand;
            best_level = t;
        }
    }
    if (best_level < 0)
        throw DegenerateHistogramError("otsu_threshold: constant image has no separable classes");

    OtsuResult res;
    res.level = best_level;
    res.mask = BinaryImage(img.width, img.height);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        bool dark = img.data[static_cast<std::size_t>(i)] <= best_level;
        res.mask.mask[static_cast<std::size_t>(i)] = (dark == dark_foreground) ? 1 : 0;
    }
    return res;
}

BinaryImage dilate_disc(const BinaryImage& img, int radius) {
    check_morph_radius(radius, "dilate_disc");
    if (radius == 0) return img;
    const auto offs = disc_offsets(radius);
    BinaryImage out(img.width, img.height);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            bool hit = false;
            for (const auto& d : offs) {
                int nx = x + d.x, ny = y + d.y;
                if (img.in_bounds(nx, ny) && img.at(nx, ny)) {
                    hit = true;
                    break;
                }
            }
            out.set(x, y, hit);
        }
    }
    return out;
}

BinaryImage erode_disc(const BinaryImage& img, int radius) {
    check_morph_radius(radius, "erode_disc");
    if (radius == 0) return img;
    const auto offs = disc_offsets(radius);
    BinaryImage out(img.width, img.height);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            bool all = true;
            for (const auto& d : offs) {
                int nx = x + d.x, ny = y + d.y;
                if (!img.in_bounds(nx, ny) || !img.at(nx, ny)) {
                    all = false;
                    break;
                }
            }
            out.set(x, y, all);
        }
    }
    return out;
}

ComponentLabels connected_components(const BinaryImage& img, int connectivity) {
    if (connectivity != 4 && connectivity != 8)
        throw ParameterError("connected_components: connectivity must be 4 or 8");

    static constexpr Point2i n4[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    static constexpr Point2i n8[] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                     {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
    const Point2i* neigh = connectivity == 4 ? n4 : n8;
    const int nn = connectivity == 4 ? 4 : 8;

    ComponentLabels out;
    out.labels.assign(img.pixel_count(), -1);
    std::vector<std::size_t> stack;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            std::size_t idx = static_cast<std::size_t>(y) * img.width + x;
            if (!img.mask[idx] || out.labels[idx] >= 0) continue;
            int id = out.count++;
            out.labels[idx] = id;
            stack.push_back(idx);
            while (!stack.empty()) {
                std::size_t cur = stack.back();
                stack.pop_back();
                int cx = static_cast<int>(cur % img.width);
                int cy = static_cast<int>(cur / img.width);
                for (int k = 0; k < nn; ++k) {
                    int nx = cx + neigh[k].x, ny = cy + neigh[k].y;
                    if (!img.in_bounds(nx, ny)) continue;
                    std::size_t ni = static_cast<std::size_t>(ny) * img.width + nx;
                    if (img.mask[ni] && out.labels[ni] < 0) {
                        out.labels[ni] = id;
                        stack.push_back(ni);
                    }
                }
            }
        }
    }
    return out;
}

BinaryImage morph_cleanup(const BinaryImage& img, int open_radius, int close_radius, int min_area) {
    check_morph_radius(open_radius, "morph_cleanup(open)");
    check_morph_radius(close_radius, "morph_cleanup(close)");
    if (min_area < 0) throw ParameterError("morph_cleanup: min_area must be >= 0");
    if (img.empty()) throw DimensionError("morph_cleanup: empty image");

    BinaryImage work = dilate_disc(erode_disc(img, open_radius), open_radius);
    work = erode_disc(dilate_disc(work, close_radius), close_radius);
    if (min_area == 0) return work;

    // Drop small foreground components.
    auto fg = connected_components(work, 8);
    std::vector<long long> area(fg.count, 0);
    for (std::size_t i = 0; i < work.pixel_count(); ++i)
        if (fg.labels[i] >= 0) ++area[fg.labels[i]];
    for (std::size_t i = 0; i < work.pixel_count(); ++i)
        if (fg.labels[i] >= 0 && area[fg.labels[i]] < min_area) work.mask[i] = 0;

    // Fill small holes: background components not touching the image border.
    BinaryImage inv(work.width, work.height);
    for (std::size_t i = 0; i < work.pixel_count(); ++i) inv.mask[i] = work.mask[i] ? 0 : 1;
    auto bg = connected_components(inv, 4);
    std::vector<long long> bg_area(bg.count, 0);
    std::vector<char> touches_border(bg.count, 0);
    for (int y = 0; y < work.height; ++y) {
        for (int x = 0; x < work.width; ++x) {
            std::int32_t id = bg.labels[static_cast<std::size_t>(y) * work.width + x];
            if (id < 0) continue;
            ++bg_area[id];
            if (x == 0 || y == 0 || x == work.width - 1 || y == work.height - 1)
                touches_border[id] = 1;
        }
    }
    for (std::size_t i = 0; i < work.pixel_count(); ++i) {
        std::int32_t id = bg.labels[i];
        if (id >= 0 && !touches_border[id] && bg_area[id] < min_area) work.mask[i] = 1;
    }
    return work;
}

namespace reference {

GrayImage to_grayscale(const RgbImage& rgb) {
    if (rgb.empty()) throw DimensionError("to_grayscale: empty image");
    GrayImage out(rgb.width, rgb.height);
    for (std::size_t i = 0; i < out.pixel_count(); ++i) {
        const std::uint8_t* p = &rgb.data[i * 3];
        out.data[i] = luma(p[0], p[1], p[2]);
    }
    return out;
}

GrayImage median_blur(const GrayImage& img, int radius) {
    check_median_params(img, radius);
    GrayImage out(img.width, img.height);
    std::vector<std::uint8_t> scratch;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            out.at(x, y) = window_median(img, x, y, radius, scratch);
    return out;
}

BinaryImage dilate_disc(const BinaryImage& img, int radius) {
    check_morph_radius(radius, "dilate_disc");
    if (radius == 0) return img;
    const auto offs = disc_offsets(radius);
    BinaryImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            bool hit = false;
            for (const auto& d : offs) {
                int nx = x + d.x, ny = y + d.y;
                if (img.in_bounds(nx, ny) && img.at(nx, ny)) {
                    hit = true;
                    break;
                }
            }
            out.set(x, y, hit);
        }
    }
    return out;
}

BinaryImage erode_disc(const BinaryImage& img, int radius) {
    check_morph_radius(radius, "erode_disc");
    if (radius == 0) return img;
    const auto offs = disc_offsets(radius);
    BinaryImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            bool all = true;
            for (const auto& d : offs) {
                int nx = x + d.x, ny = y + d.y;
                if (!img.in_bounds(nx, ny) || !img.at(nx, ny)) {
                    all = false;
                    break;
                }
            }
            out.set(x, y, all);
        }
    }
    return out;
}

}  // namespace reference

}  // namespace overseg
