#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <unordered_map>
#include <vector>

#include "convextour/errors.hpp"
#include "convextour/geometry.hpp"

namespace convextour {

// Node of the medial-axis tree. weight is the inward clearance at pos, i.e.
// the radius of the inscribed circle centered there. tangent_edges lists the
// polygon edges that circle touches (sorted, deduplicated).
struct SkeletonNode {
    Point pos;
    double weight = 0.0;
    std::vector<int> tangent_edges;
};

// Undirected tree edge. Every point of the edge is equidistant from polygon
// edges sup_a and sup_b, which support the clearance circles along it.
struct SkeletonEdge {
    int u = -1, v = -1;
    int sup_a = -1, sup_b = -1;
};

class MedialSkeleton;
MedialSkeleton build_skeleton(const ConvexPolygon& polygon);

// Medial axis of a convex polygon, rooted at the center of the largest
// inscribed circle. Nodes 0..m-1 are the polygon vertices (the leaves);
// children of every node are sorted counterclockwise around it, starting
// from the direction back toward the parent (ascending bearing at the root).
class MedialSkeleton {
  public:
    const ConvexPolygon& polygon() const { return poly_; }
    const std::vector<SkeletonNode>& nodes() const { return nodes_; }
    const std::vector<SkeletonEdge>& edges() const { return edges_; }

    int root() const { return root_; }
    double inradius() const { return nodes_[root_].weight; }
    Point incenter() const { return nodes_[root_].pos; }
    Circle inscribed_circle() const { return {incenter(), inradius()}; }

    int parent(int node) const { return parent_[node]; }
    int parent_edge(int node) const { return parent_edge_[node]; }
    const std::vector<int>& children(int node) const { return children_[node]; }
    bool is_leaf(int node) const { return node < static_cast<int>(poly_.size()); }

    // Supports of the edge into `child`, seen walking parent -> child.
    int left_support(int child) const { return left_sup_[child]; }
    int right_support(int child) const { return right_sup_[child]; }

  private:
    friend MedialSkeleton build_skeleton(const ConvexPolygon&);
    explicit MedialSkeleton(ConvexPolygon poly) : poly_(std::move(poly)) {}

    void finish();
    void select_root();
    void orient_from_root();

    ConvexPolygon poly_;
    std::vector<SkeletonNode> nodes_;
    std::vector<SkeletonEdge> edges_;
    int root_ = -1;
    std::vector<int> parent_, parent_edge_;
    std::vector<std::vector<int>> children_;
    std::vector<int> left_sup_, right_sup_;
};

namespace detail {

// Clusters nearby node positions so simultaneous collapse events land on one
// node instead of a cloud of coincident ones.
class NodeHash {
  public:
    NodeHash(double cell) : cell_(cell) {}

    int find(const std::vector<SkeletonNode>& nodes, Point p) const {
        int64_t cx = cell_index(p.x), cy = cell_index(p.y);
        for (int64_t ix = cx - 1; ix <= cx + 1; ++ix)
            for (int64_t iy = cy - 1; iy <= cy + 1; ++iy) {
                auto it = map_.find(key(ix, iy));
                if (it == map_.end()) continue;
                for (int id : it->second)
                    if (dist(nodes[id].pos, p) <= cell_) return id;
            }
        return -1;
    }

    void insert(Point p, int id) { map_[key(cell_index(p.x), cell_index(p.y))].push_back(id); }

  private:
    int64_t cell_index(double v) const { return static_cast<int64_t>(std::floor(v / cell_)); }
    static uint64_t key(int64_t ix, int64_t iy) {
        return static_cast<uint64_t>(ix) * 0x9E3779B97F4A7C15ull ^
               static_cast<uint64_t>(iy) * 0xC2B2AE3D27D4EB4Full;
    }

    double cell_;
    std::unordered_map<uint64_t, std::vector<int>> map_;
};

// Shrinks the polygon by offsetting all edges inward at unit speed and
// records where the moving corners meet. Each corner trajectory becomes one
// skeleton edge; meeting points become internal nodes at weight = time.
class SkeletonBuilder {
  public:
    explicit SkeletonBuilder(const ConvexPolygon& poly)
        : poly_(poly),
          m_(static_cast<int>(poly.size())),
          merge_eps_(1e-9 * std::max(1.0, poly.scale())),
          hash_(1e-9 * std::max(1.0, poly.scale())) {}

    void run(std::vector<SkeletonNode>& nodes, std::vector<SkeletonEdge>& edges) {
        nodes_ = &nodes;
        edges_ = &edges;
        init();
        while (count_ > 2 && !queue_.empty()) {
            Event ev = queue_.top();
            queue_.pop();
            if (!alive_[ev.edge] || ev.version != version_[ev.edge]) continue;
            process(ev);
        }
        if (count_ > 2) throw GeometryError("polygon collapse stalled");
        finalize();
    }

  private:
    struct Vertex {
        Point ref;       // position at time t0
        double t0 = 0.0;
        Point vel;       // zero for a cap, which never moves
        int start = -1;  // node where this trajectory began
        bool cap = false;
    };

    struct Event {
        double t;
        int edge;
        int version;
        bool operator>(const Event& o) const { return t != o.t ? t > o.t : edge > o.edge; }
    };

    Point at(const Vertex& v, double t) const { return v.ref + (t - v.t0) * v.vel; }

    // Bisector velocity of the corner between edges with inward normals a, b:
    // unit advance against both. Returns false for opposite-facing normals.
    bool corner_velocity(Point a, Point b, Point& out) const {
        Point u = a + b;
        double len = norm(u);
        if (len < 1e-9) return false;
        u = u / len;
        out = u / dot(a, u);
        return true;
    }

    int make_node(Point p, double t) {
        int found = hash_.find(*nodes_, p);
        if (found >= 0) return found;
        int id = static_cast<int>(nodes_->size());
        nodes_->push_back({p, t, {}});
        hash_.insert(p, id);
        return id;
    }

    void add_edge(int u, int v, int sa, int sb) {
        if (u == v) return;
        edges_->push_back({u, v, sa, sb});
    }

    void init() {
        nodes_->reserve(2 * m_);
        for (int i = 0; i < m_; ++i) nodes_->push_back({poly_.vertex(i), 0.0, {}});

        vert_.resize(m_);
        next_.resize(m_);
        prev_.resize(m_);
        alive_.assign(m_, true);
        version_.assign(m_, 0);
        count_ = m_;
        for (int j = 0; j < m_; ++j) {
            next_[j] = (j + 1) % m_;
            prev_[j] = (j + m_ - 1) % m_;
            Vertex v;
            v.ref = poly_.vertex(j);
            v.t0 = 0.0;
            v.start = j;
            v.cap = !corner_velocity(poly_.inward_normal(prev_[j]), poly_.inward_normal(j), v.vel);
            vert_[j] = v;
        }
        for (int j = 0; j < m_; ++j) schedule(j);
    }

    // Edge j collapses when its two flanking corners meet along its direction.
    // Measured from the later of the two trajectory start times, so position
    // snapping from earlier merges cannot push the event into the past.
    void schedule(int j) {
        const Vertex& L = vert_[j];
        const Vertex& R = vert_[next_[j]];
        Point d = poly_.edge_vector(j);
        double t_now = std::max(L.t0, R.t0);
        double gap = dot(at(R, t_now) - at(L, t_now), d);
        if (gap <= merge_eps_ * norm(d)) {
            queue_.push({t_now, j, version_[j]});
            return;
        }
        double denom = dot(R.vel - L.vel, d);
        double vscale = (norm(L.vel) + norm(R.vel) + 1.0) * norm(d);
        if (denom >= -1e-14 * vscale) return;  // gap steady or widening
        double t = t_now - gap / denom;
        if (!std::isfinite(t)) return;
        if (t > 4.0 * std::max(1.0, poly_.scale())) return;
        queue_.push({t, j, version_[j]});
    }

    void process(const Event& ev) {
        int j = ev.edge;
        int i = prev_[j], k = next_[j];
        Vertex L = vert_[j], R = vert_[k];
        Point q = 0.5 * (at(L, ev.t) + at(R, ev.t));
        int nid = make_node(q, ev.t);
        add_edge(L.start, nid, i, j);
        add_edge(R.start, nid, j, k);

        next_[i] = k;
        prev_[k] = i;
        alive_[j] = false;
        --count_;

        if (count_ == 2) {
            final_node_ = nid;
            final_i_ = i;
            final_k_ = k;
            return;
        }

        Vertex merged;
        merged.ref = (*nodes_)[nid].pos;
        merged.t0 = ev.t;
        merged.start = nid;
        merged.cap = !corner_velocity(poly_.inward_normal(i), poly_.inward_normal(k), merged.vel);
        vert_[k] = merged;

        ++version_[i];
        ++version_[k];
        schedule(i);
        schedule(k);
    }

    // Two edges remain after the last collapse. The untouched vertex between
    // them either is a cap (strip midline joins it to the final node) or sits
    // on the final node already; either way one edge records its trajectory.
    void finalize() {
        if (count_ != 2 || final_node_ < 0) throw GeometryError("polygon collapse incomplete");
        const Vertex& other = vert_[final_i_];  // between final_k_ and final_i_
        add_edge(other.start, final_node_, final_k_, final_i_);
    }

    const ConvexPolygon& poly_;
    int m_;
    double merge_eps_;
    NodeHash hash_;

    std::vector<SkeletonNode>* nodes_ = nullptr;
    std::vector<SkeletonEdge>* edges_ = nullptr;
    std::vector<Vertex> vert_;
    std::vector<int> next_, prev_;
    std::vector<bool> alive_;
    std::vector<int> version_;
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue_;
    int count_ = 0;
    int final_node_ = -1;
    int final_i_ = -1, final_k_ = -1;
};

} // namespace detail

inline void MedialSkeleton::finish() {
    for (const SkeletonEdge& e : edges_) {
        nodes_[e.u].tangent_edges.push_back(e.sup_a);
        nodes_[e.u].tangent_edges.push_back(e.sup_b);
        nodes_[e.v].tangent_edges.push_back(e.sup_a);
        nodes_[e.v].tangent_edges.push_back(e.sup_b);
    }
    for (SkeletonNode& n : nodes_) {
        std::sort(n.tangent_edges.begin(), n.tangent_edges.end());
        n.tangent_edges.erase(std::unique(n.tangent_edges.begin(), n.tangent_edges.end()),
                              n.tangent_edges.end());
    }
    select_root();
    orient_from_root();
}

inline void MedialSkeleton::select_root() {
    double maxw = 0.0;
    for (const SkeletonNode& n : nodes_) maxw = std::max(maxw, n.weight);
    double tol = 1e-12 * std::max(1.0, poly_.scale());
    root_ = -1;
    for (int id = 0; id < static_cast<int>(nodes_.size()); ++id) {
        if (nodes_[id].weight < maxw - tol) continue;
        if (root_ < 0 || nodes_[id].tangent_edges < nodes_[root_].tangent_edges) root_ = id;
    }
    if (root_ < 0 || nodes_[root_].weight <= 0.0) throw GeometryError("no inscribed circle center");
}

inline void MedialSkeleton::orient_from_root() {
    int n = static_cast<int>(nodes_.size());
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
        adj[edges_[e].u].push_back({edges_[e].v, e});
        adj[edges_[e].v].push_back({edges_[e].u, e});
    }

    parent_.assign(n, -1);
    parent_edge_.assign(n, -1);
    children_.assign(n, {});
    left_sup_.assign(n, -1);
    right_sup_.assign(n, -1);

    std::vector<int> order;
    order.reserve(n);
    std::vector<bool> seen(n, false);
    seen[root_] = true;
    order.push_back(root_);
    for (size_t qi = 0; qi < order.size(); ++qi) {
        int u = order[qi];
        double ref = parent_[u] < 0 ? -pi : std::atan2(nodes_[parent_[u]].pos.y - nodes_[u].pos.y,
                                                       nodes_[parent_[u]].pos.x - nodes_[u].pos.x);
        std::vector<std::pair<double, int>> kids;
        for (auto [v, e] : adj[u]) {
            if (seen[v]) continue;
            seen[v] = true;
            parent_[v] = u;
            parent_edge_[v] = e;
            Point d = nodes_[v].pos - nodes_[u].pos;
            kids.push_back({norm_angle(std::atan2(d.y, d.x) - ref), v});
        }
        std::sort(kids.begin(), kids.end());
        for (auto& [key, v] : kids) {
            children_[u].push_back(v);
            order.push_back(v);
        }
    }
    if (static_cast<int>(order.size()) != n) throw GeometryError("skeleton is not connected");

    for (int c = 0; c < n; ++c) {
        if (parent_[c] < 0) continue;
        const SkeletonEdge& e = edges_[parent_edge_[c]];
        int p = parent_[c];
        int probe = nodes_[p].weight >= nodes_[c].weight ? p : c;
        Point dir = nodes_[c].pos - nodes_[p].pos;
        Point foot_a = nodes_[probe].pos - nodes_[probe].weight * poly_.inward_normal(e.sup_a);
        if (cross(dir, foot_a - nodes_[probe].pos) > 0.0) {
            left_sup_[c] = e.sup_a;
            right_sup_[c] = e.sup_b;
        } else {
            left_sup_[c] = e.sup_b;
            right_sup_[c] = e.sup_a;
        }
    }
}

inline MedialSkeleton build_skeleton(const ConvexPolygon& polygon) {
    MedialSkeleton s(polygon);
    detail::SkeletonBuilder builder(s.poly_);
    builder.run(s.nodes_, s.edges_);
    s.finish();
    return s;
}

} // namespace convextour
