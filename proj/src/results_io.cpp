#include "overseg/results_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace overseg {

namespace {

constexpr const char* kHeader =
    "# image shape cx_px cy_px ell_a_px ell_b_px ell_theta rod_len_px rod_wid_px rod_theta "
    "cx_um cy_um dim1_um dim2_um verdict";

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

std::vector<ResultRow> rows_from_result(const std::string& image_name,
                                        const SegmentationResult& result,
                                        const PipelineConfig& cfg) {
    std::vector<ResultRow> rows;
    for (std::size_t i = 0; i < result.objects.size(); ++i) {
        if (!result.verdicts[i].accepted) continue;
        const auto& obj = result.objects[i];
        ResultRow row;
        row.image = image_name;
        row.shape = obj.shape_class;
        Point2d center = detection_center(obj);
        row.cx_px = center.x;
        row.cy_px = center.y;
        row.ell_a_px = obj.ellipse.a;
        row.ell_b_px = obj.ellipse.b;
        row.ell_theta = obj.ellipse.theta;
        row.cx_um = px_to_um(center.x, cfg.um_per_px);
        row.cy_um = px_to_um(center.y, cfg.um_per_px);
        if (obj.shape_class == ShapeClass::RodLike && obj.rod) {
            row.rod_len_px = obj.rod->length;
            row.rod_wid_px = obj.rod->width;
            row.rod_theta = obj.rod->theta;
            row.dim1_um = px_to_um(obj.rod->length, cfg.um_per_px);
            row.dim2_um = px_to_um(obj.rod->width, cfg.um_per_px);
        } else {
            row.dim1_um = px_to_um(obj.ellipse.a, cfg.um_per_px);
            row.dim2_um = px_to_um(obj.ellipse.b, cfg.um_per_px);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ImageCounts counts_from_result(const SegmentationResult& result) {
    ImageCounts c;
    c.fitted = static_cast<int>(result.objects.size());
    for (const auto& v : result.verdicts) {
        if (v.accepted)
            ++c.accepted;
        else if (v.reason == FilterReason::MaskingRejected)
            ++c.masking_rejected;
        else
            ++c.overlap_rejected;
    }
    return c;
}

std::string format_rejected_comment(const std::string& image_name, const DetectedObject& obj,
                                    const FilterVerdict& verdict) {
    std::ostringstream os;
    os << "# rejected " << image_name << ' '
       << (obj.shape_class == ShapeClass::RodLike ? "rod" : "circle") << ' '
       << fmt(obj.ellipse.cx) << ' ' << fmt(obj.ellipse.cy) << ' '
       << (verdict.reason == FilterReason::MaskingRejected ? "masking" : "overlap");
    return os.str();
}

void write_results_file(const std::string& path,
                        const std::vector<std::vector<ResultRow>>& per_image_rows,
                        const std::vector<std::vector<std::string>>& per_image_rejected,
                        const std::vector<ImageCounts>& per_image_counts) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write results file: " + path);
    out << kHeader << '\n';
    for (std::size_t i = 0; i < per_image_rows.size(); ++i) {
        for (const auto& row : per_image_rows[i]) {
            out << row.image << ' ' << (row.shape == ShapeClass::RodLike ? "rod" : "circle")
                << ' ' << fmt(row.cx_px) << ' ' << fmt(row.cy_px) << ' ' << fmt(row.ell_a_px)
                << ' ' << fmt(row.ell_b_px) << ' ' << fmt(row.ell_theta);
            if (row.shape == ShapeClass::RodLike) {
                out << ' ' << fmt(row.rod_len_px) << ' ' << fmt(row.rod_wid_px) << ' '
                    << fmt(row.rod_theta);
            } else {
                out << " - - -";
            }
            out << ' ' << fmt(row.cx_um) << ' ' << fmt(row.cy_um) << ' ' << fmt(row.dim1_um)
                << ' ' << fmt(row.dim2_um) << " accepted\n";
        }
        if (i < per_image_rejected.size())
            for (const auto& comment : per_image_rejected[i]) out << comment << '\n';
        if (i < per_image_counts.size()) {
            const auto& c = per_image_counts[i];
            out << "# counts fitted=" << c.fitted << " accepted=" << c.accepted
                << " masking_rejected=" << c.masking_rejected
                << " overlap_rejected=" << c.overlap_rejected << '\n';
        }
    }
}

std::vector<ResultRow> read_results_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open results file: " + path);
    std::vector<ResultRow> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        ResultRow row;
        std::string shape, len_tok, wid_tok, rtheta_tok, verdict;
        if (!(ls >> row.image)) continue;  // blank line
        if (!(ls >> shape >> row.cx_px >> row.cy_px >> row.ell_a_px >> row.ell_b_px >>
              row.ell_theta >> len_tok >> wid_tok >> rtheta_tok >> row.cx_um >> row.cy_um >>
              row.dim1_um >> row.dim2_um >> verdict))
            throw FormatError(path + ":" + std::to_string(lineno) + ": malformed results row");
        if (shape == "rod") {
            row.shape = ShapeClass::RodLike;
            try {
                row.rod_len_px = std::stod(len_tok);
                row.rod_wid_px = std::stod(wid_tok);
                row.rod_theta = std::stod(rtheta_tok);
            } catch (const std::exception&) {
                throw FormatError(path + ":" + std::to_string(lineno) + ": bad rod columns");
            }
        } else if (shape == "circle") {
            row.shape = ShapeClass::CircleLike;
        } else {
            throw FormatError(path + ":" + std::to_string(lineno) + ": unknown shape `" + shape +
                              "`");
        }
        if (verdict != "accepted")
            throw FormatError(path + ":" + std::to_string(lineno) + ": unexpected verdict `" +
                              verdict + "`");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::pair<std::string, std::vector<ResultRow>>> group_rows_by_image(
    const std::vector<ResultRow>& rows) {
    std::vector<std::pair<std::string, std::vector<ResultRow>>> grouped;
    std::map<std::string, std::size_t> index;
    for (const auto& row : rows) {
        auto it = index.find(row.image);
        if (it == index.end()) {
            index.emplace(row.image, grouped.size());
            grouped.emplace_back(row.image, std::vector<ResultRow>{row});
        } else {
            grouped[it->second].second.push_back(row);
        }
    }
    return grouped;
}

}  // namespace overseg
