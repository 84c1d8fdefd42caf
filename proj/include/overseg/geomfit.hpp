#pragma once

#include <array>
#include <span>
#include <vector>

#include "overseg/types.hpp"

namespace overseg {

/// Fitted ellipse; theta in [0, pi) from the +x axis to the major axis.
struct Ellipse {
    double cx = 0.0;
    double cy = 0.0;
    double a = 1.0;  // semi-major
    double b = 1.0;  // semi-minor, a >= b > 0
    double theta = 0.0;
};

/// Conic coefficients A x^2 + B xy + C y^2 + D x + E y + F = 0,
/// normalized so 4AC - B^2 = 1.
using ConicCoeffs = std::array<double, 6>;

/// Direct least-squares conic fit constrained to ellipses. Points are
/// centered on their centroid for conditioning and the result mapped back.
/// Throws InsufficientPointsError (< 5 points) or DegenerateFitError
/// (collinear scatter / non-ellipse solution).
Ellipse fit_ellipse_lsq(std::span<const Point2d> points);
Ellipse fit_ellipse_lsq(std::span<const Point2i> points);

double aspect_ratio(const Ellipse& e);

struct Extent {
    double min = 0.0;
    double max = 0.0;
};

/// Min/max signed projection of (point - origin) onto direction.
/// Throws ParameterError on an empty point set or zero direction.
Extent project_extent(std::span<const Point2d> points, Point2d origin, Point2d direction);
Extent project_extent(std::span<const Point2i> points, Point2d origin, Point2d direction);

/// Wraparound distance between axis orientations in [0, pi).
double angle_distance(double t1, double t2);

/// Normalize an axis orientation into [0, pi).
double normalize_axis_angle(double theta);

bool point_in_ellipse(const Ellipse& e, double x, double y);

/// n points on the ellipse boundary at uniform parameter steps.
std::vector<Point2d> sample_ellipse(const Ellipse& e, int n);

/// Conic of the ellipse in the 4AC - B^2 = 1 normalization.
ConicCoeffs ellipse_to_conic(const Ellipse& e);

std::vector<Point2d> to_point2d_vec(std::span<const Point2i> points);

}  // namespace overseg
