#include "overseg/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "overseg/kvfile.hpp"

namespace overseg {

namespace {

// Distribution sampling over the raw engine stream; std::* distributions are
// implementation-defined, these are not.
struct Rng {
    std::mt19937_64 engine;
    bool have_spare = false;
    double spare = 0.0;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(engine() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal(double sigma) {
        if (have_spare) {
            have_spare = false;
            return spare * sigma;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 2.0 * std::numbers::pi * u2;
        spare = r * std::sin(t);
        have_spare = true;
        return r * std::cos(t) * sigma;
    }
};

struct PlacedShape {
    TruthObject truth;
    std::vector<std::int64_t> pixels;  // raster indices
    double bound_radius = 0.0;
};

bool inside_shape(const TruthObject& t, double x, double y, bool rod_caps) {
    const double dx = x - t.cx;
    const double dy = y - t.cy;
    const double c = std::cos(t.theta), s = std::sin(t.theta);
    const double u = dx * c + dy * s;
    const double v = -dx * s + dy * c;
    if (t.shape_class == ShapeClass::CircleLike) {
        const double nu = u / t.dim1;
        const double nv = v / t.dim2;
        return nu * nu + nv * nv <= 1.0;
    }
    const double hl = 0.5 * t.dim1;
    const double hw = 0.5 * t.dim2;
    if (rod_caps) {
        const double body = hl - hw;
        if (std::abs(u) <= body) return std::abs(v) <= hw;
        const double du = std::abs(u) - body;
        return du * du + v * v <= hw * hw;
    }
    return std::abs(u) <= hl && std::abs(v) <= hw;
}

std::vector<std::int64_t> rasterize(const TruthObject& t, int width, int height, bool rod_caps,
                                    double bound_radius) {
    std::vector<std::int64_t> px;
    const int x0 = std::max(0, static_cast<int>(std::floor(t.cx - bound_radius)));
    const int x1 = std::min(width - 1, static_cast<int>(std::ceil(t.cx + bound_radius)));
    const int y0 = std::max(0, static_cast<int>(std::floor(t.cy - bound_radius)));
    const int y1 = std::min(height - 1, static_cast<int>(std::ceil(t.cy + bound_radius)));
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x)
            if (inside_shape(t, x, y, rod_caps)) px.push_back(static_cast<std::int64_t>(y) * width + x);
    return px;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

void SceneSpec::validate() const {
    if (width <= 0 || height <= 0) throw ParameterError("scene spec: image size must be positive");
    if (objects < 0) throw ParameterError("scene spec: objects must be >= 0");
    if (rod_fraction < 0.0 || rod_fraction > 1.0)
        throw ParameterError("scene spec: rod_fraction must be in [0, 1]");
    if (max_overlap < 0.0 || max_overlap > 1.0)
        throw ParameterError("scene spec: max_overlap must be in [0, 1]");
    if (circle_a_min <= 0.0 || circle_a_max < circle_a_min)
        throw ParameterError("scene spec: bad circle size range");
    if (circle_aspect_min < 1.0 || circle_aspect_max < circle_aspect_min)
        throw ParameterError("scene spec: bad circle aspect range");
    if (rod_len_min <= 0.0 || rod_len_max < rod_len_min || rod_wid_min <= 0.0 ||
        rod_wid_max < rod_wid_min)
        throw ParameterError("scene spec: bad rod size range");
    if (bg_intensity < 0 || bg_intensity > 255 || fg_intensity < 0 || fg_intensity > 255)
        throw ParameterError("scene spec: intensities must be in [0, 255]");
    if (noise_sigma < 0.0) throw ParameterError("scene spec: noise_sigma must be >= 0");
    if (!(um_per_px > 0.0)) throw ParameterError("scene spec: um_per_px must be positive");
    if (max_retries < 1) throw ParameterError("scene spec: max_retries must be >= 1");
    if (subsets < 1 || scenes_per_subset < 1)
        throw ParameterError("scene spec: subsets and scenes_per_subset must be >= 1");
}

Scene generate_scene(const SceneSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);

    Scene scene;
    scene.image = GrayImage(spec.width, spec.height,
                            static_cast<std::uint8_t>(spec.bg_intensity));
    scene.truth.um_per_px = spec.um_per_px;

    std::vector<PlacedShape> placed;
    std::vector<char> scratch(scene.image.pixel_count(), 0);

    for (int k = 0; k < spec.objects; ++k) {
        bool want_rod = rng.uniform() < spec.rod_fraction;
        bool ok = false;
        for (int attempt = 0; attempt < spec.max_retries && !ok; ++attempt) {
            TruthObject t;
            double bound;
            if (want_rod) {
                t.shape_class = ShapeClass::RodLike;
                t.dim1 = rng.uniform(spec.rod_len_min, spec.rod_len_max);
                t.dim2 = rng.uniform(spec.rod_wid_min, spec.rod_wid_max);
                if (t.dim2 > t.dim1) std::swap(t.dim1, t.dim2);
                bound = 0.5 * std::hypot(t.dim1, t.dim2);
            } else {
                t.shape_class = ShapeClass::CircleLike;
                t.dim1 = rng.uniform(spec.circle_a_min, spec.circle_a_max);
                double aspect = rng.uniform(spec.circle_aspect_min, spec.circle_aspect_max);
                t.dim2 = t.dim1 / aspect;
                bound = t.dim1;
            }
            t.theta = rng.uniform(0.0, std::numbers::pi);
            const double lo_x = bound + spec.margin;
            const double hi_x = spec.width - bound - spec.margin;
            const double lo_y = bound + spec.margin;
            const double hi_y = spec.height - bound - spec.margin;
            if (lo_x >= hi_x || lo_y >= hi_y)
                throw CapacityError("generate_scene: shape does not fit inside the frame");
            t.cx = rng.uniform(lo_x, hi_x);
            t.cy = rng.uniform(lo_y, hi_y);

            auto pixels = rasterize(t, spec.width, spec.height, spec.rod_caps, bound);
            if (pixels.empty()) continue;

            for (auto idx : pixels) scratch[static_cast<std::size_t>(idx)] = 1;
            bool overlap_ok = true;
            for (const auto& other : placed) {
                std::int64_t inter = 0;
                for (auto idx : other.pixels) inter += scratch[static_cast<std::size_t>(idx)];
                double frac = static_cast<double>(inter) /
                              static_cast<double>(std::min(pixels.size(), other.pixels.size()));
                if (frac > spec.max_overlap) {
                    overlap_ok = false;
                    break;
                }
            }
            for (auto idx : pixels) scratch[static_cast<std::size_t>(idx)] = 0;
            if (!overlap_ok) continue;

            if (t.shape_class == ShapeClass::RodLike) {
                t.volume_um3 = rod_volume_um3(t.dim1 * spec.um_per_px, t.dim2 * spec.um_per_px);
            } else {
                t.volume_um3 = sphere_volume_um3(t.dim1 * spec.um_per_px, t.dim2 * spec.um_per_px);
            }
            placed.push_back({t, std::move(pixels), bound});
            ok = true;
        }
        if (!ok)
            throw CapacityError("generate_scene: could not place object " + std::to_string(k) +
                                " within max_retries under the max_overlap constraint");
    }

    for (const auto& shape : placed) {
        for (auto idx : shape.pixels)
            scene.image.data[static_cast<std::size_t>(idx)] =
                static_cast<std::uint8_t>(spec.fg_intensity);
        scene.truth.objects.push_back(shape.truth);
    }

    if (spec.noise_sigma > 0.0) {
        for (auto& v : scene.image.data) {
            double noisy = v + rng.normal(spec.noise_sigma);
            v = static_cast<std::uint8_t>(std::clamp(std::lround(noisy), 0L, 255L));
        }
    }
    return scene;
}

std::vector<GroundTruthEntry> truth_to_ground_truth(const SceneTruth& truth) {
    std::vector<GroundTruthEntry> out;
    out.reserve(truth.objects.size());
    for (const auto& t : truth.objects) out.push_back({t.cx, t.cy, t.shape_class});
    return out;
}

SceneSpec read_scene_spec(const std::string& path) {
    SceneSpec spec;
    KeyValueFile kv = KeyValueFile::load(path);
    for (const auto& e : kv.entries) {
        if (e.key == "width") spec.width = kv.as_int(e);
        else if (e.key == "height") spec.height = kv.as_int(e);
        else if (e.key == "objects") spec.objects = kv.as_int(e);
        else if (e.key == "rod_fraction") spec.rod_fraction = kv.as_double(e);
        else if (e.key == "circle_a_min") spec.circle_a_min = kv.as_double(e);
        else if (e.key == "circle_a_max") spec.circle_a_max = kv.as_double(e);
        else if (e.key == "circle_aspect_min") spec.circle_aspect_min = kv.as_double(e);
        else if (e.key == "circle_aspect_max") spec.circle_aspect_max = kv.as_double(e);
        else if (e.key == "rod_len_min") spec.rod_len_min = kv.as_double(e);
        else if (e.key == "rod_len_max") spec.rod_len_max = kv.as_double(e);
        else if (e.key == "rod_wid_min") spec.rod_wid_min = kv.as_double(e);
        else if (e.key == "rod_wid_max") spec.rod_wid_max = kv.as_double(e);
        else if (e.key == "rod_caps") spec.rod_caps = kv.as_bool(e);
        else if (e.key == "max_overlap") spec.max_overlap = kv.as_double(e);
        else if (e.key == "bg_intensity") spec.bg_intensity = kv.as_int(e);
        else if (e.key == "fg_intensity") spec.fg_intensity = kv.as_int(e);
        else if (e.key == "noise_sigma") spec.noise_sigma = kv.as_double(e);
        else if (e.key == "seed") spec.seed = static_cast<std::uint64_t>(kv.as_int(e));
        else if (e.key == "um_per_px") spec.um_per_px = kv.as_double(e);
        else if (e.key == "margin") spec.margin = kv.as_int(e);
        else if (e.key == "max_retries") spec.max_retries = kv.as_int(e);
        else if (e.key == "subsets") spec.subsets = kv.as_int(e);
        else if (e.key == "scenes_per_subset") spec.scenes_per_subset = kv.as_int(e);
        else
            throw FormatError(path + ":" + std::to_string(e.line) + ": unknown key `" + e.key +
                              "`");
    }
    spec.validate();
    return spec;
}

void write_truth_file(const std::string& path, const SceneTruth& truth) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write truth file: " + path);
    out << "# class cx cy dim1 dim2 theta volume_um3\n";
    out << "# um_per_px " << fmt(truth.um_per_px) << '\n';
    for (const auto& t : truth.objects) {
        out << (t.shape_class == ShapeClass::RodLike ? "rod" : "circle") << ' ' << fmt(t.cx)
            << ' ' << fmt(t.cy) << ' ' << fmt(t.dim1) << ' ' << fmt(t.dim2) << ' ' << fmt(t.theta)
            << ' ' << fmt(t.volume_um3) << '\n';
    }
}

SceneTruth read_truth_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open truth file: " + path);
    SceneTruth truth;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.rfind("# um_per_px", 0) == 0) {
            std::istringstream ls(line.substr(11));
            ls >> truth.um_per_px;
            continue;
        }
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string cls;
        if (!(ls >> cls)) continue;
        TruthObject t;
        if (cls == "rod")
            t.shape_class = ShapeClass::RodLike;
        else if (cls == "circle")
            t.shape_class = ShapeClass::CircleLike;
        else
            throw FormatError(path + ":" + std::to_string(lineno) + ": unknown class `" + cls +
                              "`");
        if (!(ls >> t.cx >> t.cy >> t.dim1 >> t.dim2 >> t.theta >> t.volume_um3))
            throw FormatError(path + ":" + std::to_string(lineno) + ": malformed truth row");
        truth.objects.push_back(t);
    }
    return truth;
}

}  // namespace overseg
