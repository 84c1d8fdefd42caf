#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "overseg/image_io.hpp"
#include "overseg/metrics.hpp"
#include "overseg/overlay.hpp"
#include "overseg/pipeline.hpp"
#include "overseg/results_io.hpp"
#include "overseg/synthgen.hpp"
#include "overseg/tracer.hpp"

namespace fs = std::filesystem;
using namespace overseg;

namespace {

PipelineConfig load_config(const std::string& config_path,
                           const std::vector<std::string>& overrides) {
    PipelineConfig cfg;
    if (!config_path.empty()) cfg = read_config_file(config_path);
    for (const auto& o : overrides) apply_override(cfg, o);
    cfg.validate();
    return cfg;
}

std::vector<double> parse_rho_list(const std::string& csv) {
    std::vector<double> out;
    std::string token;
    std::istringstream ss(csv);
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        out.push_back(std::stod(token));
    }
    if (out.empty()) throw ParameterError("empty rho list");
    return out;
}

int run_segment(const std::vector<std::string>& inputs, const std::string& config_path,
                const std::vector<std::string>& overrides, const std::string& out_dir,
                bool overlay, bool debug_overlay, bool dump_contours) {
    PipelineConfig cfg = load_config(config_path, overrides);
    fs::create_directories(out_dir);

    const int n = static_cast<int>(inputs.size());
    std::vector<std::optional<SegmentationResult>> results(n);
    std::vector<GrayImage> images(n);
    std::vector<std::string> errors(n);

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            images[i] = load_gray(inputs[i]);
            results[i] = segment_image(images[i], cfg);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }

    std::vector<std::vector<ResultRow>> per_image_rows;
    std::vector<std::vector<std::string>> per_image_rejected;
    std::vector<ImageCounts> per_image_counts;
    bool any_failed = false;
    for (int i = 0; i < n; ++i) {
        const std::string stem = fs::path(inputs[i]).stem().string();
        if (!results[i]) {
            std::cerr << "error: " << inputs[i] << ": " << errors[i] << '\n';
            any_failed = true;
            continue;
        }
        const auto& res = *results[i];
        per_image_rows.push_back(rows_from_result(stem, res, cfg));
        std::vector<std::string> rejected;
        for (std::size_t k = 0; k < res.objects.size(); ++k)
            if (!res.verdicts[k].accepted)
                rejected.push_back(format_rejected_comment(stem, res.objects[k], res.verdicts[k]));
        per_image_rejected.push_back(std::move(rejected));
        per_image_counts.push_back(counts_from_result(res));

        if (overlay) {
            RgbImage ov = make_overlay(images[i], res, debug_overlay);
            save_png((fs::path(out_dir) / (stem + ".overlay.png")).string(), ov);
        }
        if (dump_contours) {
            std::ofstream tf(fs::path(out_dir) / (stem + ".contours.txt"));
            overseg::dump_contours(tf, res.clusters);
        }
    }

    write_results_file((fs::path(out_dir) / "results.txt").string(), per_image_rows,
                       per_image_rejected, per_image_counts);
    std::ofstream cf(fs::path(out_dir) / "config.effective.txt");
    cf << serialize_config(cfg);
    return any_failed ? 1 : 0;
}

// Ground truth for one image: `<dir>/<image>.gt.txt`, then `<dir>/<image>.txt`.
std::optional<std::string> find_gt_file(const fs::path& gt_dir, const std::string& image) {
    fs::path a = gt_dir / (image + ".gt.txt");
    if (fs::exists(a)) return a.string();
    fs::path b = gt_dir / (image + ".txt");
    if (fs::exists(b)) return b.string();
    return std::nullopt;
}

int run_evaluate(const std::string& results_path, const std::string& gt_path, double rho,
                 const std::string& curve_csv, const std::string& out_dir) {
    fs::create_directories(out_dir);
    auto rows = read_results_file(results_path);
    auto grouped = group_rows_by_image(rows);

    std::vector<std::pair<std::string, std::vector<Point2d>>> det_by_image;
    for (auto& [image, image_rows] : grouped) {
        std::vector<Point2d> centers;
        centers.reserve(image_rows.size());
        for (const auto& r : image_rows) centers.push_back({r.cx_px, r.cy_px});
        det_by_image.emplace_back(image, std::move(centers));
    }

    std::vector<ImageCenters> images;
    if (fs::is_directory(gt_path)) {
        // Union of images present in the results and gt files in the directory,
        // so undetected images still count their ground truth as misses.
        std::vector<std::string> seen;
        for (const auto& [image, dets] : det_by_image) {
            ImageCenters ic;
            ic.detections = dets;
            if (auto gt_file = find_gt_file(gt_path, image)) {
                for (const auto& g : read_ground_truth(*gt_file)) ic.truth.push_back({g.x, g.y});
            } else {
                std::cerr << "warning: no ground truth for image `" << image << "`\n";
            }
            images.push_back(std::move(ic));
            seen.push_back(image);
        }
        for (const auto& entry : fs::directory_iterator(gt_path)) {
            std::string name = entry.path().filename().string();
            if (name.size() <= 7 || name.substr(name.size() - 7) != ".gt.txt") continue;
            std::string stem = name.substr(0, name.size() - 7);
            if (std::find(seen.begin(), seen.end(), stem) != seen.end()) continue;
            ImageCenters ic;
            for (const auto& g : read_ground_truth(entry.path().string()))
                ic.truth.push_back({g.x, g.y});
            images.push_back(std::move(ic));
        }
    } else {
        ImageCenters ic;
        for (const auto& g : read_ground_truth(gt_path)) ic.truth.push_back({g.x, g.y});
        if (!det_by_image.empty()) ic.detections = det_by_image.front().second;
        images.push_back(std::move(ic));
        if (det_by_image.size() > 1)
            throw ParameterError("evaluate: results span several images but --gt is one file");
    }

    EvalReport report;
    report.rho = rho;
    double jsc_sum = 0.0;
    int jsc_count = 0;
    for (const auto& ic : images) {
        auto m = match_centers(ic.detections, ic.truth, rho);
        report.tp += m.tp;
        report.fp += m.fp;
        report.fn += m.fn;
        if (auto j = jsc_from_counts(m.tp, static_cast<int>(ic.detections.size()),
                                     static_cast<int>(ic.truth.size()))) {
            jsc_sum += *j;
            ++jsc_count;
        }
    }
    auto pr = precision_recall(report.tp, report.fp, report.fn);
    report.precision = pr.precision;
    report.recall = pr.recall;
    if (jsc_count > 0) report.ajsc = jsc_sum / jsc_count;

    auto rhos = parse_rho_list(curve_csv);
    auto curve = ajsc_curve(images, rhos);

    write_eval_report((fs::path(out_dir) / "report.txt").string(), report);
    write_ajsc_curve((fs::path(out_dir) / "ajsc_curve.txt").string(), curve);

    std::cout << "tp " << report.tp << " fp " << report.fp << " fn " << report.fn << '\n';
    return 0;
}

int run_synth(const std::string& spec_path, const std::string& out_dir,
              std::optional<std::uint64_t> seed_override, const std::string& format) {
    SceneSpec spec = read_scene_spec(spec_path);
    if (seed_override) spec.seed = *seed_override;
    if (format != "png" && format != "pgm")
        throw ParameterError("synth: format must be png or pgm");
    fs::create_directories(out_dir);

    const std::uint64_t base_seed = spec.seed;
    int flat = 0;
    for (int s = 1; s <= spec.subsets; ++s) {
        for (int k = 0; k < spec.scenes_per_subset; ++k, ++flat) {
            SceneSpec one = spec;
            one.seed = base_seed + static_cast<std::uint64_t>(flat);
            Scene scene = generate_scene(one);

            char name[64];
            if (spec.subsets > 1)
                std::snprintf(name, sizeof(name), "scene_s%d_%03d", s, k);
            else
                std::snprintf(name, sizeof(name), "scene_%03d", k);

            fs::path base = fs::path(out_dir) / name;
            if (format == "png")
                save_png(base.string() + ".png", scene.image);
            else
                save_pgm(base.string() + ".pgm", scene.image);
            auto gt = truth_to_ground_truth(scene.truth);
            write_ground_truth(base.string() + ".gt.txt", gt);
            write_truth_file(base.string() + ".truth.txt", scene.truth);
        }
    }
    std::cout << "wrote " << flat << " scene(s) to " << out_dir << '\n';
    return 0;
}

int run_compose(const std::string& results_path, const std::string& config_path,
                const std::vector<std::string>& overrides, const std::string& out_dir) {
    PipelineConfig cfg = load_config(config_path, overrides);
    fs::create_directories(out_dir);

    auto rows = read_results_file(results_path);
    std::vector<DetectedObject> objects;
    objects.reserve(rows.size());
    for (const auto& r : rows) {
        DetectedObject obj;
        obj.shape_class = r.shape;
        obj.ellipse = Ellipse{r.cx_px, r.cy_px, r.ell_a_px, r.ell_b_px, r.ell_theta};
        if (r.shape == ShapeClass::RodLike)
            obj.rod = RodBox{r.cx_px, r.cy_px, r.rod_len_px, r.rod_wid_px, r.rod_theta};
        objects.push_back(std::move(obj));
    }

    CompositionReport report =
        composition(std::span<const DetectedObject>(objects), cfg.densities(), cfg.um_per_px);
    write_composition_report((fs::path(out_dir) / "composition.txt").string(), report);
    std::cout << "alpha_wt_pct " << report.rod_wt_pct << " beta_wt_pct " << report.circle_wt_pct
              << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Segmentation of overlapping convex objects"};
    app.require_subcommand(1);

    // segment
    auto* seg = app.add_subcommand("segment", "Segment images and write results + overlays");
    std::vector<std::string> seg_inputs;
    std::string seg_config, seg_out = "out";
    std::vector<std::string> seg_sets;
    bool seg_overlay = true, seg_debug = false, seg_dump = false;
    seg->add_option("inputs", seg_inputs, "Input images (PNG or PGM)")->required();
    seg->add_option("--config", seg_config, "Config file (key=value lines)");
    seg->add_option("--set", seg_sets, "Config override key=value (repeatable)");
    seg->add_option("--out", seg_out, "Output directory");
    seg->add_flag("--overlay,!--no-overlay", seg_overlay, "Write overlay PNGs");
    seg->add_flag("--debug-overlay", seg_debug, "Add corner/concave markers and group colors");
    seg->add_flag("--dump-contours", seg_dump, "Write traced contours as text");

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "Score results against ground truth");
    std::string ev_results, ev_gt, ev_out = "out";
    double ev_rho = 8.0;
    std::string ev_curve = "1,2,3,4,5,6,8,10,12,16";
    ev->add_option("--results", ev_results, "Results file from `segment`")->required();
    ev->add_option("--gt", ev_gt, "Ground-truth file or directory")->required();
    ev->add_option("--rho", ev_rho, "Match distance threshold in pixels");
    ev->add_option("--curve", ev_curve, "Comma-separated rho values for the AJSC curve");
    ev->add_option("--out", ev_out, "Output directory");

    // synth
    auto* sy = app.add_subcommand("synth", "Generate synthetic scenes with ground truth");
    std::string sy_spec, sy_out = "out", sy_format = "png";
    std::uint64_t sy_seed = 0;
    bool sy_seed_set = false;
    sy->add_option("--spec", sy_spec, "Scene spec file (key=value lines)")->required();
    sy->add_option("--out", sy_out, "Output directory");
    sy->add_option("--format", sy_format, "Image format: png or pgm");
    auto* seed_opt = sy->add_option("--seed", sy_seed, "Override the spec's base seed");

    // compose
    auto* co = app.add_subcommand("compose", "Weight-percentage composition from results");
    std::string co_results, co_config, co_out = "out";
    std::vector<std::string> co_sets;
    co->add_option("--results", co_results, "Results file from `segment`")->required();
    co->add_option("--config", co_config, "Config file (densities, scale)");
    co->add_option("--set", co_sets, "Config override key=value (repeatable)");
    co->add_option("--out", co_out, "Output directory");

    CLI11_PARSE(app, argc, argv);
    sy_seed_set = seed_opt->count() > 0;

    try {
        if (seg->parsed())
            return run_segment(seg_inputs, seg_config, seg_sets, seg_out, seg_overlay, seg_debug,
                               seg_dump);
        if (ev->parsed()) return run_evaluate(ev_results, ev_gt, ev_rho, ev_curve, ev_out);
        if (sy->parsed())
            return run_synth(sy_spec, sy_out,
                             sy_seed_set ? std::optional<std::uint64_t>(sy_seed) : std::nullopt,
                             sy_format);
        if (co->parsed()) return run_compose(co_results, co_config, co_sets, co_out);
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
