#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "overseg/image.hpp"
#include "overseg/metrics.hpp"
#include "overseg/shapefit.hpp"

namespace overseg {

/// Scene description; the seed fixes all randomness (distribution sampling is
/// implemented over the raw mt19937 stream so output is stable across
/// standard libraries).
struct SceneSpec {
    int width = 640;
    int height = 480;
    int objects = 40;
    double rod_fraction = 0.0;  // expected fraction of rods vs circles

    double circle_a_min = 18.0;  // semi-major range for circle-like objects
    double circle_a_max = 32.0;
    double circle_aspect_min = 1.0;
    double circle_aspect_max = 1.8;

    double rod_len_min = 60.0;
    double rod_len_max = 120.0;
    double rod_wid_min = 8.0;
    double rod_wid_max = 16.0;
    bool rod_caps = false;  // semicircular end caps

    double max_overlap = 0.30;  // pairwise cap, fraction of the smaller area
    int bg_intensity = 200;
    int fg_intensity = 60;
    double noise_sigma = 8.0;
    std::uint64_t seed = 1;
    double um_per_px = 1.0;
    int margin = 4;          // shapes stay this far inside the frame
    int max_retries = 1000;  // placement attempts per object

    int subsets = 1;  // batch emission layout used by the CLI
    int scenes_per_subset = 1;

    void validate() const;  // throws ParameterError
};

/// True shape of one rendered object. dim1/dim2 are the ellipse semi-axes for
/// circles and length/width for rods, in pixels.
struct TruthObject {
    ShapeClass shape_class = ShapeClass::CircleLike;
    double cx = 0.0;
    double cy = 0.0;
    double dim1 = 0.0;
    double dim2 = 0.0;
    double theta = 0.0;
    double volume_um3 = 0.0;
};

struct SceneTruth {
    std::vector<TruthObject> objects;
    double um_per_px = 1.0;
};

struct Scene {
    GrayImage image;
    SceneTruth truth;
};

/// Render overlapping dark shapes on a light background with Gaussian pixel
/// noise. Placement is rejection sampling honoring max_overlap; exceeding
/// max_retries raises CapacityError naming the constraint.
Scene generate_scene(const SceneSpec& spec);

std::vector<GroundTruthEntry> truth_to_ground_truth(const SceneTruth& truth);

SceneSpec read_scene_spec(const std::string& path);
void write_truth_file(const std::string& path, const SceneTruth& truth);
SceneTruth read_truth_file(const std::string& path);

}  // namespace overseg
