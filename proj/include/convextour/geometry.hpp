#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "convextour/errors.hpp"

namespace convextour {

struct Point {
    double x = 0.0;
    double y = 0.0;

    Point operator+(Point o) const { return {x + o.x, y + o.y}; }
    Point operator-(Point o) const { return {x - o.x, y - o.y}; }
    Point operator*(double s) const { return {x * s, y * s}; }
    Point operator/(double s) const { return {x / s, y / s}; }
    bool operator==(const Point&) const = default;
};

inline Point operator*(double s, Point p) { return p * s; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return dot(a, a); }
inline double norm(Point a) { return std::sqrt(norm2(a)); }
inline double dist(Point a, Point b) { return norm(a - b); }

// Counterclockwise rotation by a quarter turn.
inline Point perp(Point a) { return {-a.y, a.x}; }

inline Point normalized(Point a) {
    double n = norm(a);
    if (n == 0.0) throw GeometryError("cannot normalize zero vector");
    return a / n;
}

inline bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

constexpr double pi = 3.1415926535897932384626433832795;
constexpr double two_pi = 6.283185307179586476925286766559;

// Reduce an angle into [0, 2*pi).
inline double norm_angle(double a) {
    double r = std::fmod(a, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

// Unit vector. Constructor normalizes; a zero input is invalid.
struct Direction {
    double dx = 1.0;
    double dy = 0.0;

    Direction() = default;
    Direction(double x, double y) {
        double n = std::hypot(x, y);
        if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("direction must be a nonzero finite vector");
        dx = x / n;
        dy = y / n;
    }
    explicit Direction(Point v) : Direction(v.x, v.y) {}

    static Direction from_angle(double a) { return Direction(std::cos(a), std::sin(a)); }
    double angle() const { return std::atan2(dy, dx); }
    Point vec() const { return {dx, dy}; }
};

struct Circle {
    Point center;
    double radius = 0.0;
};

enum class Side { Inside, OnBoundary, Outside };

namespace detail {

inline double polygon_signed_area(std::span<const Point> v) {
    double a = 0.0;
    for (size_t i = 0, n = v.size(); i < n; ++i) a += cross(v[i], v[(i + 1) % n]);
    return 0.5 * a;
}

inline double bbox_diag(std::span<const Point> v) {
    double lx = std::numeric_limits<double>::infinity(), ly = lx;
    double hx = -lx, hy = -ly;
    for (Point p : v) {
        lx = std::min(lx, p.x);
        ly = std::min(ly, p.y);
        hx = std::max(hx, p.x);
        hy = std::max(hy, p.y);
    }
    return std::hypot(hx - lx, hy - ly);
}

// Collinearity cutoff for hulls and polygon canonicalization. Kept tight so only
// genuinely flat triples are dropped; scales quadratically with coordinates.
inline double collinear_tol(double scale) { return 1e-12 * std::max(1.0, scale * scale); }

// Turn cutoff relative to the two step lengths: |cross| below this means the
// relative sine of the turn is under 1e-12. Stays meaningful for very short
// edges, where a polygon-scale cutoff would swallow real turns.
inline double turn_tol(Point u, Point v) { return 1e-12 * std::sqrt(norm2(u) * norm2(v)); }

} // namespace detail

// Convex hull, counterclockwise, collinear interior points removed.
// size() < 3 marks a degenerate hull (point or segment).
struct ConvexHull {
    std::vector<Point> vertices;
    bool degenerate() const { return vertices.size() < 3; }
};

inline ConvexHull convex_hull(std::span<const Point> pts) {
    if (pts.empty()) throw InvalidInput("convex_hull: empty input");
    for (Point p : pts)
        if (!finite(p)) throw InvalidInput("convex_hull: non-finite coordinate");

    std::vector<Point> p(pts.begin(), pts.end());
    std::sort(p.begin(), p.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    p.erase(std::unique(p.begin(), p.end()), p.end());

    if (p.size() <= 2) return {std::move(p)};

    auto build = [&](std::vector<Point>& out, auto begin, auto end) {
        for (auto it = begin; it != end; ++it) {
            while (out.size() >= 2) {
                Point u = out.back() - out[out.size() - 2], v = *it - out.back();
                if (cross(u, v) > detail::turn_tol(u, v)) break;
                out.pop_back();
            }
            out.push_back(*it);
        }
    };
    std::vector<Point> lower, upper;
    build(lower, p.begin(), p.end());
    build(upper, p.rbegin(), p.rend());
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    if (lower.size() < 3) {
        // All points within tolerance of one line; return the extreme pair.
        std::vector<Point> seg{p.front(), p.back()};
        if (seg[0] == seg[1]) seg.pop_back();
        return {std::move(seg)};
    }
    return {std::move(lower)};
}

// Strictly convex polygon, vertices counterclockwise, no collinear triples.
// Canonicalized on construction; throws InvalidInput when the cleaned-up
// vertex list is not a strictly convex polygon.
class ConvexPolygon {
  public:
    explicit ConvexPolygon(std::vector<Point> vertices) {
        if (vertices.size() < 3) throw InvalidInput("convex polygon needs at least 3 vertices");
        for (Point p : vertices)
            if (!finite(p)) throw InvalidInput("convex polygon: non-finite coordinate");
        if (detail::polygon_signed_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());

        // Drop collinear vertices; a reflex turn means the input is not convex.
        std::vector<Point> out;
        size_t n = vertices.size();
        for (size_t i = 0; i < n; ++i) {
            Point prev = vertices[(i + n - 1) % n], cur = vertices[i], next = vertices[(i + 1) % n];
            Point u = cur - prev, v = next - cur;
            double turn = cross(u, v), tol = detail::turn_tol(u, v);
            if (turn < -tol) throw InvalidInput("polygon is not convex");
            if (turn > tol) out.push_back(cur);
        }
        if (out.size() < 3) throw InvalidInput("convex polygon: degenerate after removing collinear vertices");
        n = out.size();
        for (size_t i = 0; i < n; ++i) {
            Point prev = out[(i + n - 1) % n], cur = out[i], next = out[(i + 1) % n];
            Point u = cur - prev, v = next - cur;
            if (!(cross(u, v) > detail::turn_tol(u, v))) throw InvalidInput("polygon is not strictly convex");
        }
        verts_ = std::move(out);
        normals_.reserve(verts_.size());
        offsets_.reserve(verts_.size());
        for (size_t i = 0; i < verts_.size(); ++i) {
            Point d = edge_vector(i);
            Point nrm = normalized(perp(d)); // interior lies left of each directed edge
            normals_.push_back(nrm);
            offsets_.push_back(dot(nrm, verts_[i]));
        }
        scale_ = detail::bbox_diag(verts_);
    }

    const std::vector<Point>& vertices() const { return verts_; }
    size_t size() const { return verts_.size(); }
    Point vertex(size_t i) const { return verts_[i % verts_.size()]; }
    Point edge_start(size_t i) const { return verts_[i % verts_.size()]; }
    Point edge_end(size_t i) const { return verts_[(i + 1) % verts_.size()]; }
    Point edge_vector(size_t i) const { return edge_end(i) - edge_start(i); }

    // Inward unit normal of edge i and its line offset: inward distance of a
    // point p from edge i's supporting line is dot(normal(i), p) - offset(i).
    Point inward_normal(size_t i) const { return normals_[i % normals_.size()]; }
    double edge_offset(size_t i) const { return offsets_[i % offsets_.size()]; }
    double inward_distance(size_t i, Point p) const { return dot(inward_normal(i), p) - edge_offset(i); }

    double scale() const { return scale_; }

    Side contains(Point p, double tol) const {
        double lowest = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < verts_.size(); ++i) lowest = std::min(lowest, inward_distance(i, p));
        if (lowest > tol) return Side::Inside;
        if (lowest >= -tol) return Side::OnBoundary;
        return Side::Outside;
    }

  private:
    std::vector<Point> verts_;
    std::vector<Point> normals_;
    std::vector<double> offsets_;
    double scale_ = 0.0;
};

inline Side point_in_convex_polygon(Point p, const ConvexPolygon& poly, double tol) {
    return poly.contains(p, tol);
}

namespace detail {

inline double dist_point_segment(Point p, Point a, Point b) {
    Point ab = b - a;
    double len2 = norm2(ab);
    if (len2 == 0.0) return dist(p, a);
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return dist(p, a + ab * t);
}

inline bool segments_intersect(Point a, Point b, Point c, Point d) {
    auto orient = [](Point p, Point q, Point r) {
        double v = cross(q - p, r - p);
        return (v > 0.0) - (v < 0.0);
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    auto on = [](Point p, Point q, Point r) {
        return cross(q - p, r - p) == 0.0 && std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
               std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
    };
    return (o1 == 0 && on(a, b, c)) || (o2 == 0 && on(a, b, d)) || (o3 == 0 && on(c, d, a)) ||
           (o4 == 0 && on(c, d, b));
}

} // namespace detail

// Simple polygon: one or more vertices, counterclockwise when it has area,
// no self-intersections. Degenerate forms (point, segment, collinear chain)
// are allowed; obstacles are reduced to their convex hull downstream anyway.
class SimplePolygon {
  public:
    explicit SimplePolygon(std::vector<Point> vertices) {
        if (vertices.empty()) throw InvalidInput("polygon needs at least 1 vertex");
        for (Point p : vertices)
            if (!finite(p)) throw InvalidInput("polygon: non-finite coordinate");
        if (vertices.size() >= 3 && detail::polygon_signed_area(vertices) < 0.0)
            std::reverse(vertices.begin(), vertices.end());
        verts_ = std::move(vertices);
        validate_simple();
    }

    const std::vector<Point>& vertices() const { return verts_; }
    size_t size() const { return verts_.size(); }

  private:
    void validate_simple() const {
        size_t n = verts_.size();
        if (n < 4) return;
        // Full pairwise test is quadratic; convex inputs are verified in linear
        // time and very large non-convex inputs are accepted as given.
        if (is_convex_ccw() || n > 2048) return;
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                if (j == i + 1 || (i == 0 && j == n - 1)) continue;
                if (detail::segments_intersect(verts_[i], verts_[(i + 1) % n], verts_[j], verts_[(j + 1) % n]))
                    throw InvalidInput("polygon is self-intersecting");
            }
        }
    }

    bool is_convex_ccw() const {
        size_t n = verts_.size();
        for (size_t i = 0; i < n; ++i) {
            Point a = verts_[i], b = verts_[(i + 1) % n], c = verts_[(i + 2) % n];
            if (cross(b - a, c - b) < 0.0) return false;
        }
        return true;
    }

    std::vector<Point> verts_;
};

inline double distance_point_to_edge_line(Point p, Point a, Point b) {
    Point ab = b - a;
    double len = norm(ab);
    double s = detail::bbox_diag(std::array<Point, 3>{p, a, b});
    if (len <= 1e-15 * std::max(1.0, s)) throw InvalidInput("edge endpoints coincide");
    return std::abs(cross(ab, p - a)) / len;
}

// Rigid motion (rotation then translation); used by invariance tests and the
// constrained-workspace construction.
struct Rigid2 {
    double c = 1.0, s = 0.0;
    Point t;

    static Rigid2 from(double angle, Point translation) {
        return {std::cos(angle), std::sin(angle), translation};
    }
    Point apply(Point p) const { return {c * p.x - s * p.y + t.x, s * p.x + c * p.y + t.y}; }
};

namespace detail {

// Intersection of lines a+t*u and b+s*v; throws when nearly parallel.
inline Point line_intersection(Point a, Point u, Point b, Point v) {
    double den = cross(u, v);
    if (std::abs(den) < 1e-14 * std::max(1.0, norm(u) * norm(v)))
        throw GeometryError("line intersection of near-parallel lines");
    double t = cross(b - a, v) / den;
    return a + u * t;
}

// Clip a convex CCW vertex loop by the half-plane dot(n, x) >= c.
inline std::vector<Point> clip_half_plane(std::span<const Point> poly, Point n, double c) {
    std::vector<Point> out;
    size_t cnt = poly.size();
    for (size_t i = 0; i < cnt; ++i) {
        Point a = poly[i], b = poly[(i + 1) % cnt];
        double da = dot(n, a) - c, db = dot(n, b) - c;
        if (da >= 0.0) out.push_back(a);
        if ((da > 0.0 && db < 0.0) || (da < 0.0 && db > 0.0)) {
            double t = da / (da - db);
            out.push_back(a + (b - a) * t);
        }
    }
    return out;
}

} // namespace detail

} // namespace convextour
