#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "convextour/errors.hpp"
#include "convextour/geometry.hpp"
#include "convextour/skeleton.hpp"
#include "convextour/tour.hpp"

namespace convextour {

struct CurvatureEstimate {
    double max_avg_curvature = 0.0;
    double max_junction_tangent_gap = 0.0;
};

// Per-vertex result of the brute-force critical-radius search: the two edges
// of the workspace the circle is tangent to, by index.
struct OracleRow {
    Point vertex;
    Point center;
    double radius = 0.0;
    int edge_a = -1, edge_b = -1;
};

struct OracleReport {
    double min_radius = 0.0;
    std::vector<OracleRow> rows;
};

namespace detail {

struct EdgeLine {
    Point n;      // inward unit normal
    double off;   // n . (point on line)
};

inline std::vector<EdgeLine> edge_lines(const ConvexPolygon& E) {
    std::vector<EdgeLine> lines;
    size_t m = E.size();
    lines.reserve(m);
    for (size_t i = 0; i < m; ++i) {
        Point a = E.vertex(i), b = E.vertex(i + 1);
        Point d = b - a;
        Point n = Direction(-d.y, d.x).vec();
        lines.push_back({n, dot(n, a)});
    }
    return lines;
}

inline double wrap_pi(double a) {
    a = std::fmod(a + pi, two_pi);
    if (a < 0) a += two_pi;
    return a - pi;
}

// Brute-force critical radius of one vertex: enumerate ordered pairs of edge
// lines, solve for circles tangent to both through v, keep the inscribed ones
// holding v on a sub-semicircular arc between the tangent points.
inline bool oracle_vertex_radius(const std::vector<EdgeLine>& lines, Point v,
                                 double eps_len, OracleRow& out) {
    struct Hit {
        double r;
        Point c;
        int i, j;
    };
    std::vector<Hit> hits;
    int m = static_cast<int>(lines.size());

    auto consider = [&](double r, Point c, int i, int j) {
        if (!(r > eps_len) || !std::isfinite(r)) return;
        if (std::abs(dist(c, v) - r) > 1e-6 * std::max(1.0, r)) return;
        for (const EdgeLine& e : lines)
            if (dot(e.n, c) - e.off < r - eps_len) return;
        Point p1 = c - r * lines[i].n;
        Point p2 = c - r * lines[j].n;
        if (dist(p1, p2) <= eps_len) return;
        double a1 = std::atan2(p1.y - c.y, p1.x - c.x);
        double a2 = std::atan2(p2.y - c.y, p2.x - c.x);
        double av = std::atan2(v.y - c.y, v.x - c.x);
        double sweep = norm_angle(a2 - a1);
        if (sweep > pi + 1e-9) return;
        if (norm_angle(av - a1) > sweep + 1e-9) return;
        hits.push_back({r, c, i, j});
    };

    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            const EdgeLine& e1 = lines[i];
            const EdgeLine& e2 = lines[j];
            double det = cross(e1.n, e2.n);
            if (std::abs(det) <= 1e-9) {
                if (dot(e1.n, e2.n) > 0) continue;  // same-facing lines, no circle
                double r = -(e1.off + e2.off) / 2.0;
                if (!(r > eps_len)) continue;
                Point base = (e1.off + r) * e1.n;
                Point t{-e1.n.y, e1.n.x};
                Point w = base - v;
                double wt = dot(w, t);
                double disc = wt * wt - dot(w, w) + r * r;
                if (disc < 0) continue;
                double root = std::sqrt(disc);
                consider(r, base + (-wt + root) * t, i, j);
                consider(r, base + (-wt - root) * t, i, j);
                continue;
            }
            // Center is affine in the radius: c(r) = p + r q.
            Point p{(e1.off * e2.n.y - e2.off * e1.n.y) / det,
                    (e1.n.x * e2.off - e2.n.x * e1.off) / det};
            Point q{(e2.n.y - e1.n.y) / det, (e1.n.x - e2.n.x) / det};
            double qa = dot(q, q) - 1.0;
            double qb = 2.0 * dot(p - v, q);
            double qc = dot(p - v, p - v);
            if (std::abs(qa) < 1e-14) {
                if (std::abs(qb) < 1e-300) continue;
                double r = -qc / qb;
                consider(r, p + r * q, i, j);
                continue;
            }
            double disc = qb * qb - 4.0 * qa * qc;
            if (disc < 0) continue;
            double s = std::sqrt(disc);
            double big = -(qb + (qb >= 0 ? s : -s)) / 2.0;
            double r1 = big / qa;
            double r2 = (big == 0.0) ? 0.0 : qc / big;
            consider(r1, p + r1 * q, i, j);
            if (r2 != r1) consider(r2, p + r2 * q, i, j);
        }
    }

    if (hits.empty()) return false;
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        if (a.r != b.r) return a.r < b.r;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    if (hits.back().r - hits.front().r > 10.0 * eps_len)
        throw GeometryError("oracle: ambiguous critical radius");
    out = {v, hits.front().c, hits.front().r, hits.front().i, hits.front().j};
    return true;
}

} // namespace detail

inline OracleReport oracle_report(const ConvexPolygon& E, const SimplePolygon& I) {
    MedialSkeleton T = build_skeleton(E);
    double rstar = T.inradius();
    Point center = T.incenter();
    double eps_len = epsilon() * std::max(1.0, E.scale());

    std::vector<detail::EdgeLine> lines = detail::edge_lines(E);
    ConvexHull h = convex_hull(I.vertices());

    OracleReport rep;
    rep.min_radius = rstar;
    for (Point v : h.vertices) {
        if (dist(v, center) <= rstar + eps_len) continue;
        OracleRow row;
        if (!detail::oracle_vertex_radius(lines, v, eps_len, row))
            throw GeometryError("oracle: no critical circle for vertex");
        rep.rows.push_back(row);
        rep.min_radius = std::min(rep.min_radius, row.radius);
    }
    return rep;
}

inline double oracle_min_critical_radius(const ConvexPolygon& E, const SimplePolygon& I) {
    return oracle_report(E, I).min_radius;
}

struct TourCheckReport {
    bool closed = true, smooth = true, convex = true;
    bool inside_outer = true, contains_obstacle = true, curvature_ok = true;
    CurvatureEstimate curvature;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

namespace detail {

// Samples each element at step (arc radius or segment length)/64 with exact
// tangents and arclengths, ending with a closing sample at the start point.
inline std::vector<PathSample> check_samples(const Tour& t) {
    std::vector<PathSample> out;
    double s0 = 0.0;
    for (const TourElement& e : t.elements) {
        double len = e.length();
        double metric = e.is_arc() ? e.circle.radius : len;
        int n = std::max(2, static_cast<int>(std::ceil(len / (metric / 64.0))));
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

// Membership in the closed convex region bounded by a tour. Tours whose arcs
// share one radius use the exact offset form; otherwise every sampled tangent
// line must keep the point on its left.
struct RegionTester {
    bool uniform = false;
    double R = 0.0;
    std::vector<Point> hull;
    const std::vector<PathSample>* samples = nullptr;

    RegionTester(const Tour& t, const std::vector<PathSample>& s) : samples(&s) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const TourElement& e : t.elements)
            if (e.is_arc()) {
                lo = std::min(lo, e.circle.radius);
                hi = std::max(hi, e.circle.radius);
            }
        if (hi > 0.0 && hi - lo <= 1e-9 * hi) {
            uniform = true;
            R = hi;
            hull = convex_hull(t.arc_centers()).vertices;
        }
    }
    bool contains(Point p, double tol) const {
        if (uniform) return dist_to_convex(hull, p) <= R + tol;
        for (const PathSample& s : *samples)
            if (cross(s.dir.vec(), p - s.pos) < -tol) return false;
        return true;
    }
};

inline double tour_scale(const Tour& t) {
    std::vector<Point> pts;
    for (const TourElement& e : t.elements) {
        pts.push_back(e.start_point());
        pts.push_back(e.end_point());
        if (e.is_arc()) pts.push_back(e.circle.center);
    }
    return pts.empty() ? 1.0 : std::max(1.0, bbox_diag(pts));
}

} // namespace detail

inline TourCheckReport check_tour(const Tour& t, const ConvexPolygon& E, const SimplePolygon& I) {
    TourCheckReport rep;
    auto fail = [&rep](bool& flag, const std::string& msg) {
        flag = false;
        rep.violations.push_back(msg);
    };

    if (t.elements.empty()) {
        fail(rep.closed, "tour has no elements");
        return rep;
    }
    for (const TourElement& e : t.elements)
        if (!(e.length() > 1e-300)) {
            fail(rep.closed, "degenerate zero-length element");
            return rep;
        }

    double eps_len = epsilon() * detail::tour_scale(t);
    size_t k = t.elements.size();

    for (size_t i = 0; i < k; ++i) {
        const TourElement& a = t.elements[i];
        const TourElement& b = t.elements[(i + 1) % k];
        if (dist(a.end_point(), b.start_point()) > eps_len)
            fail(rep.closed, "chain not closed at element " + std::to_string(i));
        double gap = std::abs(detail::wrap_pi(b.tangent_at_start().angle() -
                                              a.tangent_at_end().angle()));
        rep.curvature.max_junction_tangent_gap =
            std::max(rep.curvature.max_junction_tangent_gap, gap);
        if (gap > 1e-9)
            fail(rep.smooth, "tangent break at junction " + std::to_string(i));
    }

    std::vector<PathSample> samples = detail::check_samples(t);

    double total_turn = 0.0;
    bool kink_reported = false, curv_reported = false;
    for (size_t i = 1; i < samples.size(); ++i) {
        double dth = detail::wrap_pi(samples[i].dir.angle() - samples[i - 1].dir.angle());
        double ds = samples[i].s - samples[i - 1].s;
        total_turn += dth;
        if (dth < -1e-9 && !kink_reported) {
            fail(rep.convex, "tangent angle decreases along the tour");
            kink_reported = true;
        }
        if (ds > 1e-300) {
            double avg = std::abs(dth) / ds;
            rep.curvature.max_avg_curvature = std::max(rep.curvature.max_avg_curvature, avg);
            if (avg > t.kappa * (1.0 + 1e-6) && !curv_reported) {
                fail(rep.curvature_ok, "sampled curvature exceeds the bound");
                curv_reported = true;
            }
        }
    }
    if (std::abs(total_turn - two_pi) > 1e-6)
        fail(rep.convex, "total turning differs from one full turn");

    for (const TourElement& e : t.elements)
        if (e.is_arc() && 1.0 / e.circle.radius > t.kappa + epsilon() * std::max(1.0, t.kappa)) {
            fail(rep.curvature_ok, "arc radius below 1/kappa");
            break;
        }

    size_t m = E.size();
    bool outside_reported = false;
    for (const PathSample& s : samples) {
        for (size_t i = 0; i < m && !outside_reported; ++i) {
            Point a = E.vertex(i), b = E.vertex(i + 1);
            if (cross(b - a, s.pos - a) < -eps_len * dist(a, b)) {
                fail(rep.inside_outer, "tour leaves the workspace");
                outside_reported = true;
            }
        }
        if (outside_reported) break;
    }

    detail::RegionTester region(t, samples);
    for (Point v : I.vertices())
        if (!region.contains(v, eps_len)) {
            fail(rep.contains_obstacle, "obstacle vertex outside the tour");
            break;
        }
    return rep;
}

inline bool check_enclosed_circle(const Tour& t) {
    if (!(t.kappa > 0.0)) throw InvalidInput("tour has no curvature bound");
    double R = 1.0 / t.kappa;
    Point c = {0, 0};
    bool found = false;
    for (const TourElement& e : t.elements)
        if (e.is_arc()) {
            c = e.circle.center;
            found = true;
            break;
        }
    if (!found) throw InvalidInput("tour has no arcs");

    std::vector<PathSample> samples = detail::check_samples(t);
    detail::RegionTester region(t, samples);
    double tol = 2.0 * epsilon() * detail::tour_scale(t);
    for (int i = 0; i < 129; ++i) {
        double a = two_pi * i / 129.0;
        if (!region.contains(c + R * Point{std::cos(a), std::sin(a)}, tol)) return false;
    }
    return true;
}

// Numerical form of the arc-comparison lemma: two convex curves in contact at
// the origin, the reference a circular arc of radius r; when the other curve
// stays strictly above it, its average curvature at the contact beats 1/r.
inline bool check_curvature_comparison(const std::vector<Point>& f_samples,
                                       const std::vector<Point>& g_samples) {
    if (f_samples.size() < 3 || g_samples.size() < 2)
        throw InvalidInput("not enough samples");
    auto in_contact = [](const std::vector<Point>& s) {
        if (std::hypot(s[0].x, s[0].y) > 1e-9) return false;
        Point d = s[1] - s[0];
        if (!(d.x > 0)) return false;
        return std::abs(d.y / d.x) <= 0.05;
    };
    if (!in_contact(f_samples) || !in_contact(g_samples))
        throw InvalidInput("curves not in contact at the origin");
    for (size_t i = 1; i < f_samples.size(); ++i)
        if (!(f_samples[i].x > f_samples[i - 1].x))
            throw InvalidInput("samples must advance in x");

    double r = 0.0;
    int cnt = 0;
    for (size_t i = 1; i < g_samples.size(); ++i) {
        if (!(g_samples[i].y > 0)) continue;
        r += (g_samples[i].x * g_samples[i].x + g_samples[i].y * g_samples[i].y) /
             (2.0 * g_samples[i].y);
        ++cnt;
    }
    if (!cnt) throw InvalidInput("reference curve is flat");
    r /= cnt;

    // Strict dominance f > g on the shared range; failure means the lemma's
    // hypothesis does not hold and nothing can be concluded.
    double gmax = g_samples.back().x;
    bool compared = false;
    for (const Point& p : f_samples) {
        if (!(p.x > 0) || p.x > gmax) continue;
        size_t j = 1;
        while (j + 1 < g_samples.size() && g_samples[j].x < p.x) ++j;
        const Point& a = g_samples[j - 1];
        const Point& b = g_samples[j];
        double gy = a.y + (b.y - a.y) * (p.x - a.x) / (b.x - a.x);
        compared = true;
        if (!(p.y > gy)) return false;
    }
    if (!compared) throw InvalidInput("sample ranges do not overlap");

    size_t nseg = f_samples.size() - 1;
    size_t K = std::min<size_t>(nseg, 6);
    auto seg_angle = [&](size_t i) {
        Point d = f_samples[i + 1] - f_samples[i];
        return std::atan2(d.y, d.x);
    };
    double turn = std::abs(seg_angle(K - 1) - seg_angle(0));
    double len = dist(f_samples[0], f_samples[1]) / 2.0 +
                 dist(f_samples[K - 1], f_samples[K]) / 2.0;
    for (size_t i = 1; i + 1 < K; ++i) len += dist(f_samples[i], f_samples[i + 1]);
    double avg = turn / len;
    return avg > 1.0 / r - 1e-3 / r;
}

} // namespace convextour
