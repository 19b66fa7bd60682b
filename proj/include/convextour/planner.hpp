#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "convextour/arcs.hpp"
#include "convextour/errors.hpp"
#include "convextour/geometry.hpp"
#include "convextour/skeleton.hpp"
#include "convextour/tour.hpp"

namespace convextour {

// Inscribed circle through v tangent to two boundary edges, with v on the
// sub-semicircular arc between the tangency points. The binding constraint of
// v on any smooth convex path around it.
struct CriticalArc {
    Circle circle;
    Point vertex;
    Point p1, p2;
    double sweep = 0.0;
};

struct OptimalResult {
    double kappa_star = 0.0;
    std::optional<Point> limiting_vertex;
    Tour tour;
    size_t loop_iterations = 0;
};

struct TangentConstraint {
    Point point;
    Direction direction;
};

namespace detail {

inline bool inside_convex(const ConvexPolygon& E, Point p, double tol) {
    size_t m = E.size();
    for (size_t i = 0; i < m; ++i) {
        Point a = E.vertex(i), b = E.vertex(i + 1);
        if (cross(b - a, p - a) < -tol * dist(a, b)) return false;
    }
    return true;
}

// Arc sweep of the circle piece p1 -> v -> p2.
inline double arc_sweep_through(const Circle& c, Point p1, Point v, Point p2) {
    double a1 = std::atan2(p1.y - c.center.y, p1.x - c.center.x);
    double a2 = std::atan2(p2.y - c.center.y, p2.x - c.center.x);
    double av = std::atan2(v.y - c.center.y, v.x - c.center.x);
    double fwd = norm_angle(a2 - a1);
    if (norm_angle(av - a1) <= fwd + 1e-9) return fwd;
    return norm_angle(a1 - a2);
}

} // namespace detail

inline CriticalArc critical_arc(Point v, int left_edge, int right_edge, const MedialSkeleton& T) {
    const ConvexPolygon& E = T.polygon();
    double eps_len = epsilon() * std::max(1.0, E.scale());
    if (dist(v, T.incenter()) < T.inradius() - eps_len)
        throw NoCriticalArc("vertex inside the largest inscribed circle");

    Point a1 = E.vertex(left_edge), b1 = E.vertex(left_edge + 1);
    Point a2 = E.vertex(right_edge), b2 = E.vertex(right_edge + 1);
    Point d1 = b1 - a1, d2 = b2 - a2;
    Point n1 = Direction(-d1.y, d1.x).vec();
    Point n2 = Direction(-d2.y, d2.x).vec();

    Circle c;
    if (std::abs(cross(n1, n2)) < 1e-9) {
        if (dot(n1, n2) > 0) throw GeometryError("support edges face the same way");
        double o1 = dot(n1, a1), o2 = dot(n2, a2);
        double r = -(o1 + o2) / 2.0;
        if (!(r > 0)) throw GeometryError("support edges do not bound a slab");
        Point base = (o1 + r) * n1;
        Point t1{-n1.y, n1.x};
        Point w = v - base;
        double along = dot(w, t1), off = dot(w, n1);
        double disc = std::max(0.0, r * r - off * off);
        double root = std::sqrt(disc);
        Point ca = base + (along + root) * t1;
        Point cb = base + (along - root) * t1;
        // v and the skeleton root sit on opposite sides of the chord p1p2,
        // which runs through the center along n1.
        Point sk = T.nodes()[T.root()].pos;
        auto side = [&](Point c0, Point x) { return cross(n1, x - c0); };
        c = {side(ca, v) * side(ca, sk) <= 0 ? ca : cb, r};
    } else {
        Point apex = detail::line_intersection(a1, d1, a2, d2);
        Point din = Direction(n1.x + n2.x, n1.y + n2.y).vec();
        double k = (dot(n1, din) + dot(n2, din)) / 2.0;
        Point w = v - apex;
        double B = dot(w, din), C = dot(w, w);
        double A = 1.0 - k * k;
        double t;
        if (std::abs(A) < 1e-14) {
            if (!(B > 0)) throw GeometryError("no critical circle on the bisector");
            t = C / (2.0 * B);
        } else {
            double disc = B * B - A * C;
            if (disc < 0) {
                // An exact double root computes to a few ulps below zero.
                if (disc < -1e-10 * (B * B + std::abs(A * C)))
                    throw GeometryError("no critical circle on the bisector");
                disc = 0;
            }
            // The larger root keeps the center on the root side of v.
            t = (B + std::sqrt(disc)) / A;
        }
        if (!(t > 0)) throw GeometryError("no critical circle on the bisector");
        c = {apex + t * din, k * t};
    }

    CriticalArc res;
    res.circle = c;
    res.vertex = v;
    res.p1 = c.center - c.radius * n1;
    res.p2 = c.center - c.radius * n2;
    res.sweep = detail::arc_sweep_through(c, res.p1, v, res.p2);
    return res;
}

namespace detail {

inline std::vector<Point> hull_points(const std::vector<Point>& pts) {
    ConvexHull h = convex_hull(pts);
    return h.vertices;
}

inline void require_obstacle_inside(const ConvexPolygon& E, const std::vector<Point>& pts,
                                    double tol) {
    for (Point p : pts)
        if (!inside_convex(E, p, tol)) throw InvalidInput("obstacle outside workspace");
}

} // namespace detail

// Lowest-curvature smooth convex tour of I inside E: one radial sweep over the
// obstacle's hull vertices against the arc structure, tightening the radius at
// every constrained vertex, then the maximal path for the final bound.
inline OptimalResult optimal_tour(const ConvexPolygon& E, const SimplePolygon& I) {
    MedialSkeleton T = build_skeleton(E);
    ArcStructure arcs = build_arcs(T);
    double eps_len = epsilon() * std::max(1.0, E.scale());
    detail::require_obstacle_inside(E, I.vertices(), eps_len);

    struct RadialVertex {
        Point p;
        double phi, d;
    };
    std::vector<RadialVertex> V;
    Point root = arcs.root_center();
    for (Point p : detail::hull_points(I.vertices()))
        V.push_back({p, arcs.phi(p), dist(p, root)});
    std::sort(V.begin(), V.end(), [](const RadialVertex& a, const RadialVertex& b) {
        return a.phi < b.phi || (a.phi == b.phi && a.d < b.d);
    });

    double r = arcs.entry(0).circle.radius;
    std::optional<Point> limiting;
    size_t vi = 0, ai = 0, iters = 0;
    while (vi < V.size()) {
        if (ai >= arcs.size()) throw GeometryError("radial sweep ran out of arcs");
        ++iters;
        switch (classify_vertex(arcs, ai, V[vi].p, V[vi].phi)) {
            case Region::R1: {
                const ArcEntry& e = arcs.entry(ai);
                try {
                    CriticalArc ca = critical_arc(V[vi].p, e.sup_left, e.sup_right, T);
                    if (ca.circle.radius < r) {
                        r = ca.circle.radius;
                        limiting = V[vi].p;
                    }
                } catch (const NoCriticalArc&) {
                }
                ++vi;
                break;
            }
            case Region::R3:
            case Region::R5:
                ++vi;
                break;
            case Region::R2:
            case Region::R4:
                ++ai;
                break;
        }
    }

    OptimalResult res;
    res.kappa_star = 1.0 / r;
    res.limiting_vertex = limiting;
    res.loop_iterations = iters;
    res.tour = maximal_path(T, res.kappa_star);
    return res;
}

// Maximal path for the given bound when it encloses the obstacle, otherwise
// nothing: curvature kappa admits a tour of I iff this succeeds.
inline std::optional<Tour> tour_with_curvature(const ConvexPolygon& E, const SimplePolygon& I,
                                               double kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidInput("curvature bound must be positive");
    MedialSkeleton T = build_skeleton(E);
    double eps_len = epsilon() * std::max(1.0, E.scale());
    detail::require_obstacle_inside(E, I.vertices(), eps_len);
    if (1.0 / kappa > T.inradius() + eps_len) return std::nullopt;
    Tour t = maximal_path(T, kappa);
    if (!contains_polygon(t, I, eps_len)) return std::nullopt;
    return t;
}

// Tour constrained to given tangent lines at given points: clip the workspace
// by each tangent half-plane, grow the obstacle hull over the points, and
// solve the reduced instance.
inline OptimalResult constrained_tour(const ConvexPolygon& E, const SimplePolygon& I,
                                      const std::vector<TangentConstraint>& constraints) {
    if (constraints.empty()) return optimal_tour(E, I);
    double eps_len = epsilon() * std::max(1.0, E.scale());

    std::vector<Point> aug = I.vertices();
    for (const TangentConstraint& c : constraints) {
        if (!detail::inside_convex(E, c.point, eps_len))
            throw InvalidInput("constraint point outside workspace");
        aug.push_back(c.point);
    }
    std::vector<Point> iverts = detail::hull_points(aug);

    std::vector<Point> everts = E.vertices();
    for (const TangentConstraint& c : constraints) {
        Point d = c.direction.vec();
        double mx = -std::numeric_limits<double>::infinity();
        double mn = std::numeric_limits<double>::infinity();
        for (Point v : iverts) {
            double s = cross(d, v - c.point);
            mx = std::max(mx, s);
            mn = std::min(mn, s);
        }
        if (mx > eps_len && mn < -eps_len)
            throw Infeasible("constraint line crosses the obstacle");
        Point n = (mx >= -mn) ? Point{-d.y, d.x} : Point{d.y, -d.x};
        everts = detail::clip_half_plane(everts, n, dot(n, c.point));
        if (everts.size() < 3) throw Infeasible("constraints leave no workspace");
    }

    ConvexPolygon clipped = [&] {
        try {
            return ConvexPolygon(everts);
        } catch (const InvalidInput&) {
            throw Infeasible("constraints leave a degenerate workspace");
        }
    }();
    for (Point v : iverts)
        if (!detail::inside_convex(clipped, v, eps_len))
            throw Infeasible("obstacle escapes the clipped workspace");
    return optimal_tour(clipped, SimplePolygon(iverts));
}

inline OptimalResult tour_of_points(const ConvexPolygon& E, const std::vector<Point>& S) {
    if (S.empty()) throw InvalidInput("no points to tour");
    double eps_len = epsilon() * std::max(1.0, E.scale());
    detail::require_obstacle_inside(E, S, eps_len);
    return optimal_tour(E, SimplePolygon(detail::hull_points(S)));
}

} // namespace convextour
