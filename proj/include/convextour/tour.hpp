#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "convextour/errors.hpp"
#include "convextour/geometry.hpp"
#include "convextour/skeleton.hpp"

namespace convextour {

// Piece of a smooth closed convex path: a counterclockwise arc or a straight
// segment. Arc angles satisfy end_angle >= start_angle.
struct TourElement {
    enum class Kind { ArcSeg, LineSeg };

    Kind kind = Kind::LineSeg;
    Circle circle;
    double start_angle = 0.0, end_angle = 0.0;
    Point from, to;

    static TourElement arc(Circle c, double a0, double a1) {
        TourElement e;
        e.kind = Kind::ArcSeg;
        e.circle = c;
        e.start_angle = a0;
        e.end_angle = a1;
        return e;
    }
    static TourElement segment(Point a, Point b) {
        TourElement e;
        e.kind = Kind::LineSeg;
        e.from = a;
        e.to = b;
        return e;
    }

    bool is_arc() const { return kind == Kind::ArcSeg; }
    Point point_at_angle(double a) const {
        return circle.center + circle.radius * Point{std::cos(a), std::sin(a)};
    }
    Point start_point() const { return is_arc() ? point_at_angle(start_angle) : from; }
    Point end_point() const { return is_arc() ? point_at_angle(end_angle) : to; }
    double length() const {
        return is_arc() ? circle.radius * (end_angle - start_angle) : dist(from, to);
    }
    Direction tangent_at_start() const {
        if (is_arc()) return Direction(-std::sin(start_angle), std::cos(start_angle));
        return Direction(to - from);
    }
    Direction tangent_at_end() const {
        if (is_arc()) return Direction(-std::sin(end_angle), std::cos(end_angle));
        return Direction(to - from);
    }
};

struct Tour {
    double kappa = 0.0;
    std::vector<TourElement> elements;

    double length() const {
        double s = 0.0;
        for (const TourElement& e : elements) s += e.length();
        return s;
    }
    double arc_radius() const {
        for (const TourElement& e : elements)
            if (e.is_arc()) return e.circle.radius;
        throw GeometryError("tour has no arcs");
    }
    std::vector<Point> arc_centers() const {
        std::vector<Point> c;
        for (const TourElement& e : elements)
            if (e.is_arc()) c.push_back(e.circle.center);
        return c;
    }
};

struct PathSample {
    Point pos;
    Direction dir;
    double s = 0.0;
};

namespace detail {

// Distance from p to a convex CCW region given by its hull vertices
// (0 when inside). Degenerate hulls of one or two vertices are fine.
inline double dist_to_convex(std::span<const Point> hull, Point p) {
    size_t k = hull.size();
    if (k == 0) throw InvalidInput("empty hull");
    if (k == 1) return dist(p, hull[0]);
    if (k == 2) return dist_point_segment(p, hull[0], hull[1]);
    bool inside = true;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < k; ++i) {
        Point a = hull[i], b = hull[(i + 1) % k];
        if (cross(b - a, p - a) < 0.0) inside = false;
        best = std::min(best, dist_point_segment(p, a, b));
    }
    return inside ? 0.0 : best;
}

// Centers of all radius-R circles inscribed in the polygon and tangent to it
// in at least two points: one center per skeleton edge crossing weight R,
// found by pruned traversal from the root.
inline std::vector<Point> offset_centers(const MedialSkeleton& T, double R) {
    std::vector<Point> centers;
    std::vector<int> stack = {T.root()};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        const SkeletonNode& pu = T.nodes()[u];
        for (int c : T.children(u)) {
            const SkeletonNode& pc = T.nodes()[c];
            if (pc.weight >= R) {
                stack.push_back(c);
                continue;
            }
            double t = (pu.weight - R) / (pu.weight - pc.weight);
            centers.push_back(pu.pos + t * (pc.pos - pu.pos));
        }
    }
    // Simultaneous crossings collapse to one point (exact at R = r*).
    double tol = 1e-12 * std::max(1.0, T.polygon().scale());
    std::sort(centers.begin(), centers.end(),
              [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    std::vector<Point> out;
    for (Point p : centers)
        if (out.empty() || dist(out.back(), p) > tol) out.push_back(p);
    return out;
}

// Boundary of the convex hull of the centers offset outward by R.
inline Tour offset_tour(std::vector<Point> centers, double R, double kappa) {
    Tour t;
    t.kappa = kappa;

    ConvexHull h = convex_hull(centers);
    const std::vector<Point>& c = h.vertices;
    size_t k = c.size();
    if (k == 1) {
        t.elements.push_back(TourElement::arc({c[0], R}, 0.0, two_pi));
        return t;
    }

    std::vector<double> na(k);  // outward normal angle of edge i
    for (size_t i = 0; i < k; ++i) {
        Point d = c[(i + 1) % k] - c[i];
        na[i] = std::atan2(-d.x, d.y);
    }
    for (size_t i = 0; i < k; ++i) {
        size_t j = (i + 1) % k;
        Point n{std::cos(na[i]), std::sin(na[i])};
        t.elements.push_back(TourElement::segment(c[i] + R * n, c[j] + R * n));
        double sweep = norm_angle(na[j] - na[i]);
        if (k == 2) sweep = pi;  // opposite normals, exactly a half turn
        if (sweep > 1e-12) t.elements.push_back(TourElement::arc({c[j], R}, na[i], na[i] + sweep));
    }
    return t;
}

} // namespace detail

// Maximal curvature-bounded path: the outermost smooth closed convex path in
// the polygon whose arcs have radius 1/kappa. Requested radii within epsilon
// above the inradius are clamped onto it.
inline Tour maximal_path(const MedialSkeleton& T, double kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidInput("curvature bound must be positive");
    double R = 1.0 / kappa;
    double rstar = T.inradius();
    double tol = epsilon() * std::max(1.0, T.polygon().scale());
    if (R > rstar + tol) throw NoSuchPath("no inscribed circle of radius 1/kappa");
    R = std::min(R, rstar);
    return detail::offset_tour(detail::offset_centers(T, R), R, kappa);
}

// True when every vertex of the obstacle lies in the closed convex region
// bounded by the tour (boundary contact allowed).
inline bool contains_polygon(const Tour& t, const SimplePolygon& I, double tol) {
    std::vector<Point> centers = t.arc_centers();
    ConvexHull h = convex_hull(centers);
    double R = t.arc_radius();
    for (Point v : I.vertices())
        if (detail::dist_to_convex(h.vertices, v) > R + tol) return false;
    return true;
}

// Samples the closed path in arclength order; consecutive gaps never exceed
// step, and the final sample returns to the start.
inline std::vector<PathSample> sample_path(const Tour& t, double step) {
    if (!(step > 0.0)) throw InvalidInput("sample step must be positive");
    std::vector<PathSample> out;
    double s0 = 0.0;
    for (const TourElement& e : t.elements) {
        double len = e.length();
        int n = std::max(1, static_cast<int>(std::ceil(len / step)));
        for (int i = 0; i < n; ++i) {
            double u = len * i / n;
            if (e.is_arc()) {
                double a = e.start_angle + u / e.circle.radius;
                out.push_back({e.point_at_angle(a),
                               Direction(-std::sin(a), std::cos(a)), s0 + u});
            } else {
                Direction d = e.tangent_at_start();
                out.push_back({e.from + u * d.vec(), d, s0 + u});
            }
        }
        s0 += len;
    }
    if (!t.elements.empty())
        out.push_back({t.elements.front().start_point(),
                       t.elements.front().tangent_at_start(), s0});
    return out;
}

} // namespace convextour
