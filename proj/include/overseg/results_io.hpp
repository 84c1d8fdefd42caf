#pragma once

#include <map>
#include <string>
#include <vector>

#include "overseg/config.hpp"
#include "overseg/pipeline.hpp"

namespace overseg {

/// One accepted detection as serialized in the results file. Rod columns are
/// `-` for circle-like objects; dim1/dim2 are semi-axes (circle) or
/// length/width (rod), in micrometres.
struct ResultRow {
    std::string image;
    ShapeClass shape = ShapeClass::CircleLike;
    double cx_px = 0.0;
    double cy_px = 0.0;
    double ell_a_px = 0.0;
    double ell_b_px = 0.0;
    double ell_theta = 0.0;
    double rod_len_px = 0.0;  // valid only for rods
    double rod_wid_px = 0.0;
    double rod_theta = 0.0;
    double cx_um = 0.0;
    double cy_um = 0.0;
    double dim1_um = 0.0;
    double dim2_um = 0.0;
};

struct ImageCounts {
    int fitted = 0;
    int accepted = 0;
    int masking_rejected = 0;
    int overlap_rejected = 0;
};

/// Accepted rows for one image's segmentation, in detection order.
std::vector<ResultRow> rows_from_result(const std::string& image_name,
                                        const SegmentationResult& result,
                                        const PipelineConfig& cfg);
ImageCounts counts_from_result(const SegmentationResult& result);

/// Writes data rows for accepted objects; rejected objects appear as
/// `# rejected ...` comments and per-image counts as a trailing comment.
void write_results_file(const std::string& path,
                        const std::vector<std::vector<ResultRow>>& per_image_rows,
                        const std::vector<std::vector<std::string>>& per_image_rejected,
                        const std::vector<ImageCounts>& per_image_counts);

std::string format_rejected_comment(const std::string& image_name, const DetectedObject& obj,
                                    const FilterVerdict& verdict);

/// Parse data rows back; throws FormatError with the line number on malformed
/// content.
std::vector<ResultRow> read_results_file(const std::string& path);

/// Rows grouped by image column, preserving first-seen image order.
std::vector<std::pair<std::string, std::vector<ResultRow>>> group_rows_by_image(
    const std::vector<ResultRow>& rows);

}  // namespace overseg
