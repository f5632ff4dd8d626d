#pragma once

#include <optional>
#include <vector>

#include "dds/layout.hpp"

namespace dds {

// Region of model space to cover.  Euclidean: an axis-aligned rectangle.
// Hyperbolic: the hyperboloid cap z <= zmax (a Poincare or Klein disc).
// Spherical: the whole sphere.
struct Region {
    GeometryKind geometry = GeometryKind::Euclidean;
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // euclidean
    double zmax = 0;                        // hyperbolic

    static Region rectangle(double x0, double y0, double x1, double y1) {
        return {GeometryKind::Euclidean, x0, y0, x1, y1, 0};
    }
    static Region poincare_disc(double radius) {
        Region r;
        r.geometry = GeometryKind::Hyperbolic;
        r.zmax = (1 + radius * radius) / (1 - radius * radius);
        return r;
    }
    static Region sphere() {
        Region r;
        r.geometry = GeometryKind::Spherical;
        return r;
    }
};

// Point-dedup index: a quad-tree over (x, y) for euclidean layouts, an
// oct-tree over the embedding coordinates otherwise.
class PointTree {
public:
    PointTree(int dims, double tolerance);
    // Returns the id of a previously inserted point within tolerance, or
    // inserts and returns the new id.  `fresh` reports which happened.
    int insert(const Vec3& p, bool* fresh = nullptr);
    int size() const { return (int)points_.size(); }
    const Vec3& point(int id) const { return points_[id]; }

private:
    struct Node {
        Vec3 center;
        double half = 0;
        std::vector<int> bucket;
        std::vector<int> children;  // empty or 2^dims ids
    };
    int child_index(const Node& n, const Vec3& p) const;
    void split(int node_id);
    bool contains(const Node& n, const Vec3& p, double pad) const;
    void ensure_root(const Vec3& p);
    int insert_point(const Vec3& p);

    int dims_;
    double tol_;
    std::vector<Node> nodes_;
    std::vector<Vec3> points_;
};

struct DomainCopy {
    Isometry transform;
    bool visible = false;  // transformed domain meets the region exactly
};

class DevelopError : public std::runtime_error {
public:
    explicit DevelopError(const std::string& what) : std::runtime_error(what) {}
};

// Breadth-first closure of the generator set over the region; copies are
// deduplicated by the transformed reference point.  Returns the copies
// whose domain meets the (slightly inflated) region; the `visible` flag
// marks exact intersection.  Throws DevelopError past the copy budget.
std::vector<DomainCopy> develop(const DelaneySymbol& s, const DomainLayout& layout,
                                const std::vector<Generator>& generators, const Region& region,
                                long long copy_budget = 1'000'000);

}  // namespace dds
