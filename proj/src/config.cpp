#include "overseg/config.hpp"

#include <cstdio>
#include <numbers>
#include <sstream>

#include "overseg/kvfile.hpp"

namespace overseg {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void apply_entry(PipelineConfig& cfg, const KeyValueFile& kv, const KeyValueFile::Entry& e) {
    if (e.key == "median_radius") cfg.median_radius = kv.as_int(e);
    else if (e.key == "open_radius") cfg.open_radius = kv.as_int(e);
    else if (e.key == "close_radius") cfg.close_radius = kv.as_int(e);
    else if (e.key == "min_area") cfg.min_area = kv.as_int(e);
    else if (e.key == "dark_foreground") cfg.dark_foreground = kv.as_bool(e);
    else if (e.key == "min_contour_points") cfg.min_contour_points = kv.as_int(e);
    else if (e.key == "rdp_epsilon") cfg.rdp_epsilon = kv.as_double(e);
    else if (e.key == "orient_tol_deg") cfg.orient_tol_deg = kv.as_double(e);
    else if (e.key == "proximity_factor") cfg.proximity_factor = kv.as_double(e);
    else if (e.key == "aspect_threshold") cfg.aspect_threshold = kv.as_double(e);
    else if (e.key == "fill_threshold") cfg.fill_threshold = kv.as_double(e);
    else if (e.key == "overlap_threshold") cfg.overlap_threshold = kv.as_double(e);
    else if (e.key == "rho") cfg.rho = kv.as_double(e);
    else if (e.key == "um_per_px") cfg.um_per_px = kv.as_double(e);
    else if (e.key == "density_rod") cfg.density_rod = kv.as_double(e);
    else if (e.key == "density_circle") cfg.density_circle = kv.as_double(e);
    else kv.fail(e, "unknown config key");
}

}  // namespace

double PipelineConfig::orient_tol_rad() const {
    return orient_tol_deg * std::numbers::pi / 180.0;
}

void PipelineConfig::validate() const {
    if (median_radius < 1) throw ParameterError("config: median_radius must be >= 1");
    if (open_radius < 0) throw ParameterError("config: open_radius must be >= 0");
    if (close_radius < 0) throw ParameterError("config: close_radius must be >= 0");
    if (min_area < 0) throw ParameterError("config: min_area must be >= 0");
    if (min_contour_points < 3) throw ParameterError("config: min_contour_points must be >= 3");
    if (!(rdp_epsilon > 0.0)) throw ParameterError("config: rdp_epsilon must be positive");
    if (!(orient_tol_deg > 0.0) || orient_tol_deg > 90.0)
        throw ParameterError("config: orient_tol_deg must be in (0, 90]");
    if (!(proximity_factor > 0.0)) throw ParameterError("config: proximity_factor must be positive");
    if (!(aspect_threshold >= 1.0)) throw ParameterError("config: aspect_threshold must be >= 1");
    if (fill_threshold < 0.0 || fill_threshold > 1.0)
        throw ParameterError("config: fill_threshold must be in [0, 1]");
    if (overlap_threshold < 0.0 || overlap_threshold > 1.0)
        throw ParameterError("config: overlap_threshold must be in [0, 1]");
    if (!(rho > 0.0)) throw ParameterError("config: rho must be positive");
    if (!(um_per_px > 0.0)) throw ParameterError("config: um_per_px must be positive");
    if (!(density_rod > 0.0) || !(density_circle > 0.0))
        throw ParameterError("config: densities must be positive");
}

PipelineConfig parse_config(const std::string& text, const std::string& source_name) {
    PipelineConfig cfg;
    KeyValueFile kv = KeyValueFile::from_string(text, source_name);
    for (const auto& e : kv.entries) apply_entry(cfg, kv, e);
    cfg.validate();
    return cfg;
}

PipelineConfig read_config_file(const std::string& path) {
    PipelineConfig cfg;
    KeyValueFile kv = KeyValueFile::load(path);
    for (const auto& e : kv.entries) apply_entry(cfg, kv, e);
    cfg.validate();
    return cfg;
}

void apply_override(PipelineConfig& cfg, const std::string& assignment) {
    KeyValueFile kv = KeyValueFile::from_string(assignment, "<override>");
    if (kv.entries.size() != 1)
        throw FormatError("override must be a single key=value: " + assignment);
    apply_entry(cfg, kv, kv.entries[0]);
    cfg.validate();
}

std::string serialize_config(const PipelineConfig& cfg) {
    std::ostringstream out;
    out << "median_radius=" << cfg.median_radius << '\n';
    out << "open_radius=" << cfg.open_radius << '\n';
    out << "close_radius=" << cfg.close_radius << '\n';
    out << "min_area=" << cfg.min_area << '\n';
    out << "dark_foreground=" << (cfg.dark_foreground ? "true" : "false") << '\n';
    out << "min_contour_points=" << cfg.min_contour_points << '\n';
    out << "rdp_epsilon=" << fmt(cfg.rdp_epsilon) << '\n';
    out << "orient_tol_deg=" << fmt(cfg.orient_tol_deg) << '\n';
    out << "proximity_factor=" << fmt(cfg.proximity_factor) << '\n';
    out << "aspect_threshold=" << fmt(cfg.aspect_threshold) << '\n';
    out << "fill_threshold=" << fmt(cfg.fill_threshold) << '\n';
    out << "overlap_threshold=" << fmt(cfg.overlap_threshold) << '\n';
    out << "rho=" << fmt(cfg.rho) << '\n';
    out << "um_per_px=" << fmt(cfg.um_per_px) << '\n';
    out << "density_rod=" << fmt(cfg.density_rod) << '\n';
    out << "density_circle=" << fmt(cfg.density_circle) << '\n';
    return out.str();
}

}  // namespace overseg
