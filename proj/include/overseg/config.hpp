#pragma once

#include <string>

#include "overseg/metrics.hpp"

namespace overseg {

/// All pipeline tunables, serialized as a key=value file.
struct PipelineConfig {
    int median_radius = 1;
    int open_radius = 1;
    int close_radius = 2;
    int min_area = 30;          // px^2
    bool dark_foreground = true;
    int min_contour_points = 20;
    double rdp_epsilon = 2.0;    // px
    double orient_tol_deg = 10.0;
    double proximity_factor = 1.2;
    double aspect_threshold = 2.0;
    double fill_threshold = 0.75;
    double overlap_threshold = 0.5;
    double rho = 8.0;  // px
    double um_per_px = 1.0;
    double density_rod = 1.369;     // g/ml
    double density_circle = 1.379;  // g/ml

    double orient_tol_rad() const;
    ClassDensities densities() const { return {density_rod, density_circle}; }

    void validate() const;  // throws ParameterError with the offending field

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Parse from file; unknown keys are rejected with their line number.
PipelineConfig read_config_file(const std::string& path);
PipelineConfig parse_config(const std::string& text, const std::string& source_name);

/// Apply a single `key=value` override.
void apply_override(PipelineConfig& cfg, const std::string& assignment);

/// Serialization round-trips exactly through parse_config.
std::string serialize_config(const PipelineConfig& cfg);

}  // namespace overseg
