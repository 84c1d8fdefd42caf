#include "overseg/geomfit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace overseg {

namespace {

// Conic in centered coordinates -> (cx', cy', a, b, theta). Throws when the
// coefficients do not describe a real ellipse.
Ellipse conic_to_ellipse(double A, double B, double C, double D, double E, double F) {
    const double disc = B * B - 4.0 * A * C;
    if (!(disc < 0.0)) throw DegenerateFitError("fit_ellipse_lsq: solution is not an ellipse");

    const double cx = (2.0 * C * D - B * E) / disc;
    const double cy = (2.0 * A * E - B * D) / disc;

    // Conic value at the center; the canonical form is
    // A u^2 + B uv + C v^2 + F0 = 0 with (u, v) centered.
    const double f0 = A * cx * cx + B * cx * cy + C * cy * cy + D * cx + E * cy + F;

    // Principal axes of the quadratic form [[A, B/2], [B/2, C]].
    const double tr = A + C;
    const double det_root = std::sqrt((A - C) * (A - C) + B * B);
    const double l1 = 0.5 * (tr - det_root);  // smaller eigenvalue -> major axis
    const double l2 = 0.5 * (tr + det_root);

    const double s1 = -f0 / l1;
    const double s2 = -f0 / l2;
    if (!(s1 > 0.0) || !(s2 > 0.0))
        throw DegenerateFitError("fit_ellipse_lsq: degenerate axis lengths");

    double a = std::sqrt(s1);
    double b = std::sqrt(s2);

    // Eigenvector of the smaller eigenvalue; both row forms are valid, keep
    // the better-conditioned one. A circle leaves both zero.
    double vx = 0.5 * B;
    double vy = l1 - A;
    const double alt_x = l1 - C;
    const double alt_y = 0.5 * B;
    if (alt_x * alt_x + alt_y * alt_y > vx * vx + vy * vy) {
        vx = alt_x;
        vy = alt_y;
    }
    double theta = (vx * vx + vy * vy > 0.0) ? std::atan2(vy, vx) : 0.0;

    Ellipse e;
    e.cx = cx;
    e.cy = cy;
    e.a = std::max(a, b);
    e.b = std::min(a, b);
    if (b > a) theta += std::numbers::pi / 2.0;  // eigenvector belonged to the minor axis
    e.theta = normalize_axis_angle(theta);
    if (!(e.b > 0.0) || !std::isfinite(e.a) || !std::isfinite(e.cx) || !std::isfinite(e.cy))
        throw DegenerateFitError("fit_ellipse_lsq: non-finite parameters");
    return e;
}

}  // namespace

Ellipse fit_ellipse_lsq(std::span<const Point2d> points) {
    const std::size_t n = points.size();
    if (n < 5) throw InsufficientPointsError("fit_ellipse_lsq: at least 5 points required");

    double mx = 0.0, my = 0.0;
    for (const auto& p : points) {
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    // Partitioned design: D1 = [x^2 xy y^2], D2 = [x y 1] on centered points.
    Eigen::Matrix3d s1 = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d s2 = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d s3 = Eigen::Matrix3d::Zero();
    for (const auto& p : points) {
        const double x = p.x - mx;
        const double y = p.y - my;
        Eigen::Vector3d d1(x * x, x * y, y * y);
        Eigen::Vector3d d2(x, y, 1.0);
        s1 += d1 * d1.transpose();
        s2 += d1 * d2.transpose();
        s3 += d2 * d2.transpose();
    }

    Eigen::FullPivLU<Eigen::Matrix3d> lu(s3);
    if (!lu.isInvertible())
        throw DegenerateFitError("fit_ellipse_lsq: degenerate scatter (collinear points)");
    Eigen::Matrix3d t = -lu.solve(s2.transpose());

    // Reduced eigenproblem with the ellipse constraint 4AC - B^2 = 1 folded in.
    Eigen::Matrix3d m = s1 + s2 * t;
    Eigen::Matrix3d c1_inv;
    c1_inv << 0.0, 0.0, 0.5, 0.0, -1.0, 0.0, 0.5, 0.0, 0.0;
    m = c1_inv * m;

    Eigen::EigenSolver<Eigen::Matrix3d> eig(m);
    if (eig.info() != Eigen::Success)
        throw DegenerateFitError("fit_ellipse_lsq: eigensolver failed");

    int pick = -1;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(eig.eigenvalues()(i).imag()) > 1e-9 * (1.0 + std::abs(eig.eigenvalues()(i).real())))
            continue;
        Eigen::Vector3d v = eig.eigenvectors().col(i).real();
        double cond = 4.0 * v(0) * v(2) - v(1) * v(1);
        if (cond > 0.0) {
            pick = i;
            break;
        }
    }
    if (pick < 0) throw DegenerateFitError("fit_ellipse_lsq: no ellipse eigenvector");

    Eigen::Vector3d a1 = eig.eigenvectors().col(pick).real();
    a1 /= std::sqrt(4.0 * a1(0) * a1(2) - a1(1) * a1(1));
    Eigen::Vector3d a2 = t * a1;

    Ellipse e = conic_to_ellipse(a1(0), a1(1), a1(2), a2(0), a2(1), a2(2));
    e.cx += mx;
    e.cy += my;
    return e;
}

Ellipse fit_ellipse_lsq(std::span<const Point2i> points) {
    auto pts = to_point2d_vec(points);
    return fit_ellipse_lsq(std::span<const Point2d>(pts));
}

double aspect_ratio(const Ellipse& e) { return e.a / e.b; }

Extent project_extent(std::span<const Point2d> points, Point2d origin, Point2d direction) {
    if (points.empty()) throw ParameterError("project_extent: empty point set");
    if (norm(direction) < 1e-12) throw ParameterError("project_extent: zero direction vector");
    Extent ext;
    bool first = true;
    for (const auto& p : points) {
        double s = dot(p - origin, direction);
        if (first) {
            ext.min = ext.max = s;
            first = false;
        } else {
            ext.min = std::min(ext.min, s);
            ext.max = std::max(ext.max, s);
        }
    }
    return ext;
}

Extent project_extent(std::span<const Point2i> points, Point2d origin, Point2d direction) {
    auto pts = to_point2d_vec(points);
    return project_extent(std::span<const Point2d>(pts), origin, direction);
}

double normalize_axis_angle(double theta) {
    const double pi = std::numbers::pi;
    double t = std::fmod(theta, pi);
    if (t < 0.0) t += pi;
    if (t >= pi) t -= pi;
    return t;
}

double angle_distance(double t1, double t2) {
    const double pi = std::numbers::pi;
    double d = std::abs(normalize_axis_angle(t1) - normalize_axis_angle(t2));
    return std::min(d, pi - d);
}

bool point_in_ellipse(const Ellipse& e, double x, double y) {
    const double dx = x - e.cx;
    const double dy = y - e.cy;
    const double c = std::cos(e.theta), s = std::sin(e.theta);
    const double u = (dx * c + dy * s) / e.a;
    const double v = (-dx * s + dy * c) / e.b;
    return u * u + v * v <= 1.0;
}

std::vector<Point2d> sample_ellipse(const Ellipse& e, int n) {
    if (n < 1) throw ParameterError("sample_ellipse: n must be >= 1");
    std::vector<Point2d> pts(n);
    const double c = std::cos(e.theta), s = std::sin(e.theta);
    for (int i = 0; i < n; ++i) {
        double t = 2.0 * std::numbers::pi * i / n;
        double u = e.a * std::cos(t);
        double v = e.b * std::sin(t);
        pts[i] = {e.cx + u * c - v * s, e.cy + u * s + v * c};
    }
    return pts;
}

ConicCoeffs ellipse_to_conic(const Ellipse& e) {
    const double c = std::cos(e.theta), s = std::sin(e.theta);
    const double ia = 1.0 / (e.a * e.a);
    const double ib = 1.0 / (e.b * e.b);
    // Quadratic form Q = R diag(1/a^2, 1/b^2) R^T.
    const double q00 = c * c * ia + s * s * ib;
    const double q01 = c * s * (ia - ib);
    const double q11 = s * s * ia + c * c * ib;
    double A = q00;
    double B = 2.0 * q01;
    double C = q11;
    double D = -2.0 * (q00 * e.cx + q01 * e.cy);
    double E = -2.0 * (q01 * e.cx + q11 * e.cy);
    double F = q00 * e.cx * e.cx + 2.0 * q01 * e.cx * e.cy + q11 * e.cy * e.cy - 1.0;
    const double scale = std::sqrt(4.0 * A * C - B * B);
    return {A / scale, B / scale, C / scale, D / scale, E / scale, F / scale};
}

std::vector<Point2d> to_point2d_vec(std::span<const Point2i> points) {
    std::vector<Point2d> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(to_point2d(p));
    return out;
}

}  // namespace overseg
