#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "convextour/skeleton.hpp"

namespace convextour {

// One piece of the clearance-circle boundary walk. Every skeleton edge
// parent -> child contributes the arc of the circle at parent between the
// tangent feet of the edge's two supports (right foot first, counterclockwise,
// sweep at most pi). Every leaf contributes a radius-zero corner entry.
// Bearings phi are measured from the root center relative to the cut (the
// bearing of entry 0's first endpoint). Entries appear in depth-first order,
// which walks the polygon boundary counterclockwise; phi_first never
// decreases and subtree entries nest inside their facing arc's range.
struct ArcEntry {
    int node = -1;    // circle center node
    int child = -1;   // subtree this arc faces; == node for corner entries
    bool corner = false;
    Circle circle;    // radius 0 for corner entries
    int sup_left = -1, sup_right = -1;
    Point p_first, p_second;
    double a_first = 0.0, sweep = 0.0;  // own-circle angles; unused for corners
    double phi_first = 0.0, phi_second = 0.0;
    double ext_start = 0.0, ext_sweep = 0.0;  // extended arc of this circle
};

inline bool angle_in_span(double a, double start, double sweep) {
    return norm_angle(a - start) <= sweep;
}

// Crossing of the ray origin + t*dir with a circle, t >= 0, restricted to an
// angular span of the circle. Returns the smallest such t, or -1 if none.
inline double first_span_crossing(Point origin, Point dir, const Circle& c, double start,
                                  double sweep) {
    Point w = origin - c.center;
    double b = dot(dir, w);
    double disc = b * b - (norm2(w) - c.radius * c.radius);
    if (disc < 0.0) return -1.0;
    double s = std::sqrt(disc);
    for (double t : {-b - s, -b + s}) {
        if (t < 0.0) continue;
        Point p = origin + t * dir;
        double a = std::atan2(p.y - c.center.y, p.x - c.center.x);
        if (angle_in_span(a, start, sweep)) return t;
    }
    return -1.0;
}

class ArcStructure {
  public:
    const std::vector<ArcEntry>& entries() const { return entries_; }
    const ArcEntry& entry(size_t i) const { return entries_[i]; }
    size_t size() const { return entries_.size(); }

    Point root_center() const { return root_center_; }
    double root_radius() const { return root_radius_; }
    double cut_angle() const { return cut_angle_; }

    // Bearing of p from the root center, measured from the cut, in [0, 2*pi).
    double phi(Point p) const {
        return norm_angle(std::atan2(p.y - root_center_.y, p.x - root_center_.x) - cut_angle_);
    }

    // Entry of the arc facing `child_node`; for a leaf, its corner entry
    // directly follows its facing arc.
    int arc_entry_of(int child_node) const { return arc_entry_of_[child_node]; }
    int corner_entry_of(int leaf) const { return arc_entry_of_[leaf] + 1; }

  private:
    friend ArcStructure build_arcs(const MedialSkeleton&);

    std::vector<ArcEntry> entries_;
    std::vector<int> arc_entry_of_;  // child node -> its facing entry index
    Point root_center_;
    double root_radius_ = 0.0;
    double cut_angle_ = 0.0;
};

namespace detail {

inline double bearing(Point from, Point to) { return std::atan2(to.y - from.y, to.x - from.x); }

// Extended arc of an internal node's circle: everything except the opening
// that faces its parent, delimited by the tangent feet of the node's own
// edge supports.
inline void node_extended_arc(const MedialSkeleton& s, int node, double& start, double& sweep) {
    const SkeletonNode& n = s.nodes()[node];
    Point fl = n.pos - n.weight * s.polygon().inward_normal(s.left_support(node));
    Point fr = n.pos - n.weight * s.polygon().inward_normal(s.right_support(node));
    double al = bearing(n.pos, fl), ar = bearing(n.pos, fr);
    double ap = bearing(n.pos, s.nodes()[s.parent(node)].pos);
    if (angle_in_span(ap, al, norm_angle(ar - al))) {
        start = ar;
        sweep = two_pi - norm_angle(ar - al);
    } else {
        start = al;
        sweep = two_pi - norm_angle(al - ar);
    }
}

// Gaps between consecutive tangent feet of the root circle, each spanned by
// exactly one root arc. Built once; every root-centered entry's extension
// queries it.
struct RootGaps {
    std::vector<double> start, sweep;  // gap i runs start[i] ccw by sweep[i]
    std::vector<int> by_size;          // indices, widest first, position tie-break

    void build(const MedialSkeleton& s) {
        const SkeletonNode& r = s.nodes()[s.root()];
        std::vector<double> feet;
        feet.reserve(r.tangent_edges.size());
        for (int edge : r.tangent_edges)
            feet.push_back(bearing(r.pos, r.pos - r.weight * s.polygon().inward_normal(edge)));
        std::sort(feet.begin(), feet.end());
        feet.erase(std::unique(feet.begin(), feet.end()), feet.end());
        size_t k = feet.size();
        for (size_t i = 0; i < k; ++i) {
            start.push_back(feet[i]);
            sweep.push_back(i + 1 == k ? norm_angle(feet[0] - feet[i]) : feet[i + 1] - feet[i]);
        }
        by_size.resize(k);
        for (size_t i = 0; i < k; ++i) by_size[i] = static_cast<int>(i);
        std::sort(by_size.begin(), by_size.end(),
                  [&](int a, int b) { return sweep[a] != sweep[b] ? sweep[a] > sweep[b] : a < b; });
    }

    // Extension of a root entry spanning [a_first, a_first + esweep]: drop the
    // widest gap that does not meet that span and keep the complement.
    void extend(double a_first, double esweep, double& out_start, double& out_sweep) const {
        for (int g : by_size) {
            double off = norm_angle(start[g] - a_first);
            if (off < esweep - 1e-12 || off + sweep[g] > two_pi + 1e-12) continue;
            out_start = norm_angle(start[g] + sweep[g]);
            out_sweep = two_pi - sweep[g];
            return;
        }
        out_start = a_first;  // entry rings the whole circle; no room to drop
        out_sweep = esweep;
    }
};

} // namespace detail

inline ArcStructure build_arcs(const MedialSkeleton& s) {
    ArcStructure out;
    out.root_center_ = s.incenter();
    out.root_radius_ = s.inradius();
    out.arc_entry_of_.assign(s.nodes().size(), -1);

    const ConvexPolygon& poly = s.polygon();

    // Depth-first over children, arcs before descent, corner entry at leaves.
    std::vector<std::pair<int, size_t>> stack;  // (node, next child slot)
    stack.push_back({s.root(), 0});
    while (!stack.empty()) {
        auto& [u, slot] = stack.back();
        if (slot >= s.children(u).size()) {
            stack.pop_back();
            continue;
        }
        int c = s.children(u)[slot++];
        const SkeletonNode& pu = s.nodes()[u];

        ArcEntry e;
        e.node = u;
        e.child = c;
        e.circle = {pu.pos, pu.weight};
        e.sup_left = s.left_support(c);
        e.sup_right = s.right_support(c);
        e.p_first = pu.pos - pu.weight * poly.inward_normal(e.sup_right);
        e.p_second = pu.pos - pu.weight * poly.inward_normal(e.sup_left);
        e.a_first = detail::bearing(pu.pos, e.p_first);
        e.sweep = norm_angle(detail::bearing(pu.pos, e.p_second) - e.a_first);
        out.arc_entry_of_[c] = static_cast<int>(out.entries_.size());
        out.entries_.push_back(e);

        if (s.is_leaf(c)) {
            const SkeletonNode& leaf = s.nodes()[c];
            ArcEntry ce;
            ce.node = c;
            ce.child = c;
            ce.corner = true;
            ce.circle = {leaf.pos, 0.0};
            ce.sup_left = leaf.tangent_edges[0];
            ce.sup_right = leaf.tangent_edges[1];
            ce.p_first = ce.p_second = leaf.pos;
            out.entries_.push_back(ce);
        } else {
            stack.push_back({c, 0});
        }
    }

    out.cut_angle_ = detail::bearing(out.root_center_, out.entries_.front().p_first);
    for (ArcEntry& e : out.entries_) {
        e.phi_first = out.phi(e.p_first);
        e.phi_second = e.phi_first + norm_angle(out.phi(e.p_second) - e.phi_first);
    }

    detail::RootGaps gaps;
    gaps.build(s);
    for (ArcEntry& e : out.entries_) {
        if (e.corner) {
            e.ext_start = 0.0;
            e.ext_sweep = 0.0;
        } else if (e.node == s.root()) {
            gaps.extend(e.a_first, e.sweep, e.ext_start, e.ext_sweep);
        } else {
            detail::node_extended_arc(s, e.node, e.ext_start, e.ext_sweep);
        }
    }
    return out;
}

// Regions of an obstacle vertex against the current entry during the sweep.
// R5: bearing before the entry.  R4: bearing past it.  R3: at or inside the
// walk at this bearing.  R1: outside, constrained by this entry's supports.
// R2: outside but belonging to a later entry.
enum class Region { R1, R2, R3, R4, R5 };

inline Region classify_vertex(const ArcStructure& arcs, size_t ei, Point v, double phi_v) {
    const ArcEntry& e = arcs.entry(ei);
    if (e.corner) {
        if (phi_v < e.phi_first) return Region::R5;
        if (phi_v > e.phi_first) return Region::R4;
        return Region::R3;
    }
    if (phi_v < e.phi_first) return Region::R5;
    if (phi_v > e.phi_second) return Region::R4;

    Point root = arcs.root_center();
    double theta = arcs.cut_angle() + phi_v;
    Point dir{std::cos(theta), std::sin(theta)};
    double dv = dist(v, root);

    double t = first_span_crossing(root, dir, e.circle, e.ext_start, e.ext_sweep);
    if (t >= 0.0 && dv <= t) return Region::R3;

    const ArcEntry& ne = arcs.entry((ei + 1) % arcs.size());
    if (ne.corner) return Region::R1;
    double tn = first_span_crossing(root, dir, ne.circle, ne.ext_start, ne.ext_sweep);
    if (tn < 0.0 || dv <= tn) return Region::R1;
    return Region::R2;
}

} // namespace convextour
