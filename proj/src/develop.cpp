#include "dds/develop.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace dds {

PointTree::PointTree(int dims, double tolerance) : dims_(dims), tol_(tolerance) {}

int PointTree::child_index(const Node& n, const Vec3& p) const {
    int idx = 0;
    if (p.x >= n.center.x) idx |= 1;
    if (p.y >= n.center.y) idx |= 2;
    if (dims_ == 3 && p.z >= n.center.z) idx |= 4;
    return idx;
}

void PointTree::split(int node_id) {
    const int fan = dims_ == 3 ? 8 : 4;
    nodes_[node_id].children.resize(fan);
    double h = nodes_[node_id].half / 2;
    Vec3 c = nodes_[node_id].center;
    for (int k = 0; k < fan; ++k) {
        Vec3 cc{c.x + ((k & 1) ? h : -h), c.y + ((k & 2) ? h : -h),
                dims_ == 3 ? c.z + ((k & 4) ? h : -h) : c.z};
        nodes_.push_back({cc, h, {}, {}});
        nodes_[node_id].children[k] = (int)nodes_.size() - 1;
    }
    for (int id : nodes_[node_id].bucket) {
        int ch = nodes_[node_id].children[child_index(nodes_[node_id], points_[id])];
        nodes_[ch].bucket.push_back(id);
    }
    nodes_[node_id].bucket.clear();
}

bool PointTree::contains(const Node& n, const Vec3& p, double pad) const {
    if (std::abs(p.x - n.center.x) > n.half + pad) return false;
    if (std::abs(p.y - n.center.y) > n.half + pad) return false;
    if (dims_ == 3 && std::abs(p.z - n.center.z) > n.half + pad) return false;
    return true;
}

void PointTree::ensure_root(const Vec3& p) {
    if (nodes_.empty()) {
        nodes_.push_back({p, std::max(1.0, tol_ * 1e7), {}, {}});
        return;
    }
    while (!contains(nodes_[0], p, 0)) {
        // rebuild with a doubled root; geometric growth keeps this rare
        Node root = nodes_[0];
        std::vector<Vec3> pts = std::move(points_);
        nodes_.clear();
        points_.clear();
        nodes_.push_back({root.center, root.half * 2, {}, {}});
        for (const Vec3& q : pts) insert_point(q);
    }
}

int PointTree::insert(const Vec3& p, bool* fresh) {
    if (!nodes_.empty()) {
        std::deque<int> stack{0};
        while (!stack.empty()) {
            int nid = stack.front();
            stack.pop_front();
            const Node& n = nodes_[nid];
            if (!contains(n, p, tol_)) continue;
            for (int id : n.bucket) {
                const Vec3& q = points_[id];
                double d2 = (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y);
                if (dims_ == 3) d2 += (p.z - q.z) * (p.z - q.z);
                if (d2 <= tol_ * tol_) {
                    if (fresh) *fresh = false;
                    return id;
                }
            }
            for (int ch : n.children) stack.push_back(ch);
        }
    }
    if (fresh) *fresh = true;
    ensure_root(p);
    return insert_point(p);
}

int PointTree::insert_point(const Vec3& p) {
    constexpr int kBucketMax = 16;
    points_.push_back(p);
    int id = (int)points_.size() - 1;
    int nid = 0;
    for (;;) {
        if (!nodes_[nid].children.empty()) {
            nid = nodes_[nid].children[child_index(nodes_[nid], p)];
            continue;
        }
        nodes_[nid].bucket.push_back(id);
        if ((int)nodes_[nid].bucket.size() > kBucketMax && nodes_[nid].half > tol_ * 4)
            split(nid);
        return id;
    }
}

namespace {

double triangle_radius(GeometryKind g, const DomainLayout& layout, const Vec3& ref) {
    double r = 0;
    for (std::size_t v = 0; v < layout.positions.size(); ++v)
        r = std::max(r, distance_on(g, ref, layout.positions[v]));
    return r;
}

bool rect_triangle_intersect(const Region& region, const Vec3& a, const Vec3& b, const Vec3& c) {
    // separating axis test between an axis-aligned rectangle and a triangle
    auto within = [&](const Vec3& p) {
        return p.x >= region.x0 && p.x <= region.x1 && p.y >= region.y0 && p.y <= region.y1;
    };
    if (within(a) || within(b) || within(c)) return true;
    const Vec3 tri[3] = {a, b, c};
    // rectangle axes
    double tminx = std::min({a.x, b.x, c.x}), tmaxx = std::max({a.x, b.x, c.x});
    double tminy = std::min({a.y, b.y, c.y}), tmaxy = std::max({a.y, b.y, c.y});
    if (tmaxx < region.x0 || tminx > region.x1 || tmaxy < region.y0 || tminy > region.y1)
        return false;
    // triangle edge normals
    Vec2 rect[4] = {{region.x0, region.y0}, {region.x1, region.y0},
                    {region.x1, region.y1}, {region.x0, region.y1}};
    for (int e = 0; e < 3; ++e) {
        Vec3 p = tri[e], q = tri[(e + 1) % 3];
        Vec2 nrm{-(q.y - p.y), q.x - p.x};
        double tmin = 1e300, tmax = -1e300;
        for (const Vec3& t : tri) {
            double v = nrm.x * t.x + nrm.y * t.y;
            tmin = std::min(tmin, v);
            tmax = std::max(tmax, v);
        }
        double rmin = 1e300, rmax = -1e300;
        for (const Vec2& t : rect) {
            double v = nrm.x * t.x + nrm.y * t.y;
            rmin = std::min(rmin, v);
            rmax = std::max(rmax, v);
        }
        if (tmax < rmin || tmin > rmax) return false;
    }
    return true;
}

bool copy_visible(const Region& region, const DomainLayout& layout, const Isometry& g) {
    switch (region.geometry) {
        case GeometryKind::Spherical:
            return true;
        case GeometryKind::Euclidean: {
            for (int d = 1; d <= layout.n; ++d) {
                auto t = layout.triangle_of(d);
                if (rect_triangle_intersect(region, g(t[0]), g(t[1]), g(t[2]))) return true;
            }
            return false;
        }
        case GeometryKind::Hyperbolic: {
            for (std::size_t v = 0; v < layout.positions.size(); ++v)
                if (g(layout.positions[v]).z <= region.zmax) return true;
            return false;
        }
    }
    return false;
}

bool copy_near(const Region& region, const Isometry& g, const Vec3& ref, double radius) {
    switch (region.geometry) {
        case GeometryKind::Spherical:
            return true;
        case GeometryKind::Euclidean: {
            Vec3 p = g(ref);
            return p.x >= region.x0 - radius && p.x <= region.x1 + radius &&
                   p.y >= region.y0 - radius && p.y <= region.y1 + radius;
        }
        case GeometryKind::Hyperbolic: {
            Vec3 p = g(ref);
            double zlim = std::cosh(std::acosh(std::max(1.0, region.zmax)) + radius);
            return p.z <= zlim;
        }
    }
    return false;
}

}  // namespace

std::vector<DomainCopy> develop(const DelaneySymbol& s, const DomainLayout& layout,
                                const std::vector<Generator>& generators, const Region& region,
                                long long copy_budget) {
    (void)s;
    const GeometryKind g = layout.geometry;
    if (region.geometry != g) throw DevelopError("region geometry does not match the layout");
    const Vec3 ref = layout.reference_point();
    const double radius = triangle_radius(g, layout, ref);

    const double tol = 1e-6 * std::max(layout.diameter, 1e-12);
    PointTree tree(g == GeometryKind::Euclidean ? 2 : 3, tol);

    std::vector<DomainCopy> out;
    std::deque<Isometry> frontier;
    Isometry id = Isometry::identity(g);
    tree.insert(id(ref));
    frontier.push_back(id);
    out.push_back({id, copy_visible(region, layout, id)});

    while (!frontier.empty()) {
        Isometry cur = frontier.front();
        frontier.pop_front();
        for (const Generator& gen : generators) {
            Isometry next = cur * gen.iso;
            bool fresh = false;
            tree.insert(next(ref), &fresh);
            if (!fresh) continue;
            if (!copy_near(region, next, ref, 2 * radius + tol)) continue;
            if ((long long)out.size() >= copy_budget)
                throw DevelopError("development exceeded the copy budget");
            out.push_back({next, copy_visible(region, layout, next)});
            frontier.push_back(next);
        }
    }
    return out;
}

}  // namespace dds
