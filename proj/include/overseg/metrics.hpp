#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "overseg/shapefit.hpp"

namespace overseg {

/// Manually (or synthetically) marked object center.
struct GroundTruthEntry {
    double x = 0.0;
    double y = 0.0;
    std::optional<ShapeClass> shape_class;
};

struct MatchResult {
    int tp = 0;
    int fp = 0;
    int fn = 0;
    std::vector<std::pair<int, int>> pairs;  // (detection index, truth index)
};

/// Greedy one-to-one matching in ascending center-distance order; only pairs
/// with distance < rho match. Throws ParameterError when rho <= 0.
MatchResult match_centers(std::span<const Point2d> detections, std::span<const Point2d> truth,
                          double rho);
MatchResult match_detections(std::span<const DetectedObject> detections,
                             std::span<const GroundTruthEntry> truth, double rho);

struct PrecisionRecall {
    std::optional<double> precision;  // absent when tp + fp == 0
    std::optional<double> recall;     // absent when tp + fn == 0
};

PrecisionRecall precision_recall(int tp, int fp, int fn);

/// matches / (|det| + |truth| - matches); absent when both sets are empty.
std::optional<double> jsc_from_counts(int matches, int n_det, int n_truth);
std::optional<double> jsc(std::span<const Point2d> detections, std::span<const Point2d> truth,
                          double rho);

/// Detection and truth centers of one image.
struct ImageCenters {
    std::vector<Point2d> detections;
    std::vector<Point2d> truth;
};

/// Mean JSC across images for each rho; images with an undefined JSC are
/// skipped. Throws ParameterError when rho_values is empty.
std::vector<std::pair<double, double>> ajsc_curve(std::span<const ImageCenters> images,
                                                  std::span<const double> rho_values);

struct EvalReport {
    int tp = 0;
    int fp = 0;
    int fn = 0;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> ajsc;
    double rho = 8.0;
};

struct ClassDensities {
    double rod = 1.369;     // g/ml
    double circle = 1.379;  // g/ml
};

struct CompositionReport {
    double rod_wt_pct = 0.0;
    double circle_wt_pct = 0.0;
    double rod_volume_um3 = 0.0;
    double circle_volume_um3 = 0.0;
    ClassDensities densities;
    int object_count = 0;
};

/// Cylinder volume for a rod given length and width in micrometres.
double rod_volume_um3(double length_um, double width_um);

/// Sphere volume with radius (a + b) / 2 for a circle-like fitted ellipse.
double sphere_volume_um3(double a_um, double b_um);

/// Weight percentages from per-class volumes and densities; object dimensions
/// are converted with um_per_px. Throws UndefinedMetricError on empty input.
CompositionReport composition(std::span<const DetectedObject> objects, ClassDensities densities,
                              double um_per_px);

// --- file formats -----------------------------------------------------------

/// Ground-truth file: one `x y [class]` entry per line, `#` comments.
std::vector<GroundTruthEntry> read_ground_truth(const std::string& path);
void write_ground_truth(const std::string& path, std::span<const GroundTruthEntry> entries);

void write_eval_report(const std::string& path, const EvalReport& report);
void write_ajsc_curve(const std::string& path,
                      std::span<const std::pair<double, double>> curve);
void write_composition_report(const std::string& path, const CompositionReport& report);

}  // namespace overseg
