#include <algorithm>
#include <vector>

#include "dds/develop.hpp"
#include "dds/invariants.hpp"
#include "dds/layout.hpp"

namespace dds {

namespace {

struct Instance {
    int node = 0;
    Isometry iso;
};

// cross one chamber wall, composing the side transition when the wall is
// a domain boundary side
Instance cross(const DelaneySymbol& s, const TransitionTable& tr, const Instance& z, int color) {
    Instance out;
    out.iso = tr.is_boundary(z.node, color) ? z.iso * tr.transition(z.node, color) : z.iso;
    out.node = s.sigma(color, z.node);
    return out;
}

}  // namespace

bool is_pseudo_convex(const DelaneySymbol& s, double tolerance) {
    DomainLayout layout = layout_fundamental_domain(s);
    TransitionTable tr(s, layout);
    const GeometryKind g = layout.geometry;
    const double tol = tolerance > 0 ? tolerance : 1e-6 * layout.diameter;

    for (const Component& tile_class : components(s, 0, 1)) {
        const int start = tile_class.nodes.front();
        const int m = s.m01(start);

        // walk the tile boundary: 2m chamber instances around its center
        std::vector<Instance> ring;
        std::vector<Vec3> corner(m), mid(m);
        Instance z{start, Isometry::identity(g)};
        for (int t = 0; t < m; ++t) {
            corner[t] = z.iso(layout.vertex_of(z.node, 0));
            ring.push_back(z);
            Instance z1 = cross(s, tr, z, 1);
            mid[t] = z1.iso(layout.vertex_of(z1.node, 1));
            ring.push_back(z1);
            z = cross(s, tr, z1, 0);
        }
        const Vec3 base_center = ring.front().iso(layout.vertex_of(start, 2));

        // (a) self-touching: the boundary walk must not revisit a vertex or
        // edge instance
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) {
                if (distance_on(g, corner[a], corner[b]) <= tol) return false;
                if (distance_on(g, mid[a], mid[b]) <= tol) return false;
            }

        // first corona: all chambers in the fans around the tile's corners
        std::vector<Instance> pool = ring;
        for (int t = 0; t < m; ++t) {
            Instance f = ring[2 * t];
            const int deg = s.m12(f.node);
            for (int step = 0; step < 2 * deg; ++step) {
                f = cross(s, tr, f, step % 2 == 0 ? 1 : 2);
                pool.push_back(f);
            }
        }

        // group chamber instances into tile instances by their center
        PointTree centers(g == GeometryKind::Euclidean ? 2 : 3, tol);
        int base_id = centers.insert(base_center);
        std::vector<std::vector<char>> cells;  // per tile id: marked boundary cells
        auto ensure = [&](int id) {
            while ((int)cells.size() <= id) cells.emplace_back(2 * m, 0);
        };
        ensure(base_id);
        for (const Instance& inst : pool) {
            Vec3 center = inst.iso(layout.vertex_of(inst.node, 2));
            int id = centers.insert(center);
            ensure(id);
            if (id == base_id) continue;
            Vec3 p0 = inst.iso(layout.vertex_of(inst.node, 0));
            Vec3 p1 = inst.iso(layout.vertex_of(inst.node, 1));
            for (int t = 0; t < m; ++t) {
                if (distance_on(g, p0, corner[t]) <= tol) cells[id][2 * t] = 1;
                if (distance_on(g, p1, mid[t]) <= tol) cells[id][2 * t + 1] = 1;
            }
        }

        // (b) every neighbor must meet the base tile in one contiguous arc
        // of boundary cells
        for (std::size_t id = 0; id < cells.size(); ++id) {
            if ((int)id == base_id) continue;
            const auto& marked = cells[id];
            int total = std::count(marked.begin(), marked.end(), (char)1);
            if (total == 0 || total == 2 * m) continue;
            int runs = 0;
            for (int k = 0; k < 2 * m; ++k)
                if (marked[k] && !marked[(k + 2 * m - 1) % (2 * m)]) ++runs;
            if (runs > 1) return false;
        }
    }
    return true;
}

}  // namespace dds
