#include "overseg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace overseg {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

MatchResult match_centers(std::span<const Point2d> detections, std::span<const Point2d> truth,
                          double rho) {
    if (!(rho > 0.0)) throw ParameterError("match_centers: rho must be positive");

    struct Candidate {
        double dist;
        int det;
        int gt;
    };
    std::vector<Candidate> cands;
    for (int i = 0; i < static_cast<int>(detections.size()); ++i) {
        for (int j = 0; j < static_cast<int>(truth.size()); ++j) {
            double d = distance(detections[i], truth[j]);
            if (d < rho) cands.push_back({d, i, j});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.det != b.det) return a.det < b.det;
        return a.gt < b.gt;
    });

    std::vector<char> det_used(detections.size(), 0), gt_used(truth.size(), 0);
    MatchResult res;
    for (const auto& c : cands) {
        if (det_used[c.det] || gt_used[c.gt]) continue;
        det_used[c.det] = gt_used[c.gt] = 1;
        res.pairs.emplace_back(c.det, c.gt);
    }
    res.tp = static_cast<int>(res.pairs.size());
    res.fp = static_cast<int>(detections.size()) - res.tp;
    res.fn = static_cast<int>(truth.size()) - res.tp;
    return res;
}

MatchResult match_detections(std::span<const DetectedObject> detections,
                             std::span<const GroundTruthEntry> truth, double rho) {
    std::vector<Point2d> det_centers;
    det_centers.reserve(detections.size());
    for (const auto& d : detections) det_centers.push_back(detection_center(d));
    std::vector<Point2d> gt_centers;
    gt_centers.reserve(truth.size());
    for (const auto& g : truth) gt_centers.push_back({g.x, g.y});
    return match_centers(det_centers, gt_centers, rho);
}

PrecisionRecall precision_recall(int tp, int fp, int fn) {
    PrecisionRecall pr;
    if (tp + fp > 0) pr.precision = static_cast<double>(tp) / (tp + fp);
    if (tp + fn > 0) pr.recall = static_cast<double>(tp) / (tp + fn);
    return pr;
}

std::optional<double> jsc_from_counts(int matches, int n_det, int n_truth) {
    const int uni = n_det + n_truth - matches;
    if (uni == 0) return std::nullopt;
    return static_cast<double>(matches) / uni;
}

std::optional<double> jsc(std::span<const Point2d> detections, std::span<const Point2d> truth,
                          double rho) {
    auto m = match_centers(detections, truth, rho);
    return jsc_from_counts(m.tp, static_cast<int>(detections.size()),
                           static_cast<int>(truth.size()));
}

std::vector<std::pair<double, double>> ajsc_curve(std::span<const ImageCenters> images,
                                                  std::span<const double> rho_values) {
    if (rho_values.empty()) throw ParameterError("ajsc_curve: rho_values must be nonempty");
    std::vector<std::pair<double, double>> curve;
    curve.reserve(rho_values.size());
    for (double rho : rho_values) {
        double sum = 0.0;
        int count = 0;
        for (const auto& img : images) {
            std::optional<double> j;
            if (rho > 0.0) {
                j = jsc(img.detections, img.truth, rho);
            } else if (!img.detections.empty() || !img.truth.empty()) {
                j = 0.0;  // nothing matches below a zero threshold
            }
            if (j) {
                sum += *j;
                ++count;
            }
        }
        curve.emplace_back(rho, count > 0 ? sum / count : 0.0);
    }
    return curve;
}

double rod_volume_um3(double length_um, double width_um) {
    const double r = 0.5 * width_um;
    return std::numbers::pi * r * r * length_um;
}

double sphere_volume_um3(double a_um, double b_um) {
    const double r = 0.5 * (a_um + b_um);
    return 4.0 / 3.0 * std::numbers::pi * r * r * r;
}

CompositionReport composition(std::span<const DetectedObject> objects, ClassDensities densities,
                              double um_per_px) {
    if (objects.empty()) throw UndefinedMetricError("composition: no objects");
    if (!(um_per_px > 0.0)) throw ParameterError("composition: scale must be positive");

    CompositionReport rep;
    rep.densities = densities;
    rep.object_count = static_cast<int>(objects.size());
    for (const auto& obj : objects) {
        if (obj.shape_class == ShapeClass::RodLike && obj.rod) {
            rep.rod_volume_um3 += rod_volume_um3(px_to_um(obj.rod->length, um_per_px),
                                                 px_to_um(obj.rod->width, um_per_px));
        } else {
            rep.circle_volume_um3 += sphere_volume_um3(px_to_um(obj.ellipse.a, um_per_px),
                                                       px_to_um(obj.ellipse.b, um_per_px));
        }
    }
    const double rod_mass = rep.rod_volume_um3 * densities.rod;
    const double circle_mass = rep.circle_volume_um3 * densities.circle;
    const double total = rod_mass + circle_mass;
    if (total <= 0.0) throw UndefinedMetricError("composition: zero total mass");
    rep.rod_wt_pct = 100.0 * rod_mass / total;
    rep.circle_wt_pct = 100.0 * circle_mass / total;
    return rep;
}

std::vector<GroundTruthEntry> read_ground_truth(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open ground-truth file: " + path);
    std::vector<GroundTruthEntry> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        GroundTruthEntry e;
        if (!(ls >> e.x >> e.y)) {
            std::string rest;
            ls.clear();
            if (ls >> rest)
                throw FormatError(path + ":" + std::to_string(lineno) +
                                  ": expected `x y [class]`");
            continue;  // blank/comment-only line
        }
        std::string cls;
        if (ls >> cls) {
            if (cls == "rod")
                e.shape_class = ShapeClass::RodLike;
            else if (cls == "circle")
                e.shape_class = ShapeClass::CircleLike;
            else
                throw FormatError(path + ":" + std::to_string(lineno) +
                                  ": unknown class `" + cls + "`");
        }
        std::string extra;
        if (ls >> extra)
            throw FormatError(path + ":" + std::to_string(lineno) + ": trailing tokens");
        entries.push_back(e);
    }
    return entries;
}

void write_ground_truth(const std::string& path, std::span<const GroundTruthEntry> entries) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write ground-truth file: " + path);
    out << "# x y [class]\n";
    for (const auto& e : entries) {
        out << format_double(e.x) << ' ' << format_double(e.y);
        if (e.shape_class)
            out << ' ' << (*e.shape_class == ShapeClass::RodLike ? "rod" : "circle");
        out << '\n';
    }
}

void write_eval_report(const std::string& path, const EvalReport& report) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write report file: " + path);
    out << "tp " << report.tp << '\n';
    out << "fp " << report.fp << '\n';
    out << "fn " << report.fn << '\n';
    out << "precision " << (report.precision ? format_double(*report.precision) : "absent")
        << '\n';
    out << "recall " << (report.recall ? format_double(*report.recall) : "absent") << '\n';
    out << "ajsc " << (report.ajsc ? format_double(*report.ajsc) : "absent") << '\n';
    out << "rho " << format_double(report.rho) << '\n';
}

void write_ajsc_curve(const std::string& path,
                      std::span<const std::pair<double, double>> curve) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write curve file: " + path);
    out << "# rho,ajsc\n";
    for (const auto& [rho, v] : curve) out << format_double(rho) << ',' << format_double(v) << '\n';
}

void write_composition_report(const std::string& path, const CompositionReport& report) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write composition file: " + path);
    out << "alpha_wt_pct " << format_double(report.rod_wt_pct) << '\n';
    out << "beta_wt_pct " << format_double(report.circle_wt_pct) << '\n';
    out << "alpha_volume_um3 " << format_double(report.rod_volume_um3) << '\n';
    out << "beta_volume_um3 " << format_double(report.circle_volume_um3) << '\n';
    out << "density_alpha " << format_double(report.densities.rod) << '\n';
    out << "density_beta " << format_double(report.densities.circle) << '\n';
    out << "objects " << report.object_count << '\n';
}

}  // namespace overseg
