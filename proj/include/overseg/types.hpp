#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace overseg {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mismatched image/channel dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Out-of-range or otherwise invalid parameter value.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Histogram has no separable classes (constant image).
class DegenerateHistogramError : public Error {
public:
    using Error::Error;
};

/// Too few points for the requested fit.
class InsufficientPointsError : public Error {
public:
    using Error::Error;
};

/// Scatter is collinear/degenerate or the solution is not an ellipse.
class DegenerateFitError : public Error {
public:
    using Error::Error;
};

/// Net traversal orientation of a corner polygon sums to zero.
class AmbiguousOrientationError : public Error {
public:
    using Error::Error;
};

/// Placement or resource bound exhausted.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Unparseable file content; message carries the line number.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Metric or report requested on empty input.
class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

struct Point2i {
    int x = 0;
    int y = 0;

    friend bool operator==(const Point2i&, const Point2i&) = default;
};

struct Point2d {
    double x = 0.0;
    double y = 0.0;

    friend Point2d operator+(Point2d a, Point2d b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2d operator-(Point2d a, Point2d b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2d operator*(Point2d a, double s) { return {a.x * s, a.y * s}; }
    friend Point2d operator*(double s, Point2d a) { return a * s; }
    friend bool operator==(const Point2d&, const Point2d&) = default;
};

inline Point2d to_point2d(Point2i p) { return {static_cast<double>(p.x), static_cast<double>(p.y)}; }

inline double dot(Point2d a, Point2d b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2d a) { return std::hypot(a.x, a.y); }
inline double distance(Point2d a, Point2d b) { return norm(a - b); }

}  // namespace overseg
