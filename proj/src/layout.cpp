#include "dds/layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>

#include "dds/invariants.hpp"

namespace dds {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------
// Combinatorial disc: glue one triangle per chamber along sigma edges,
// breadth-first from node 1, then fold adjacent boundary sides that are
// sigma partners ("zipping") as long as the complex stays a disc and no
// cone or corner vertex would be pulled into the interior.
// ---------------------------------------------------------------------

struct Disc {
    const DelaneySymbol& s;
    int n;
    std::vector<int> uf;  // slots (d-1)*3 + k

    struct Side {
        int node = 0, color = 0;
        int sc = 0;  // color of the start vertex; end color = 3 - color - sc
        int next = -1, prev = -1;
        bool alive = false;
    };
    std::vector<Side> sides;
    std::vector<int> side_of;  // (d-1)*3+color -> side index or -1
    int head = -1;
    int boundary_count = 0;
    std::vector<char> placed;
    std::vector<int> parity;

    // component lookup per vertex color: comp_idx[c][node], comps[c]
    std::array<std::vector<Component>, 3> comps;       // by vertex color c: pair = others
    std::array<std::vector<int>, 3> comp_idx;

    explicit Disc(const DelaneySymbol& sym) : s(sym), n(sym.size()) {
        uf.resize(3 * n);
        std::iota(uf.begin(), uf.end(), 0);
        side_of.assign(3 * n, -1);
        placed.assign(n + 1, 0);
        parity.assign(n + 1, 0);
        for (int c = 0; c < 3; ++c) {
            int a = c == 0 ? 1 : 0;
            int b = c == 2 ? 1 : 2;
            comps[c] = components(s, a, b);
            comp_idx[c].assign(n + 1, -1);
            for (std::size_t k = 0; k < comps[c].size(); ++k)
                for (int d : comps[c][k].nodes) comp_idx[c][d] = (int)k;
        }
        build();
    }

    int slot(int d, int k) const { return (d - 1) * 3 + k; }
    int find(int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); }
    void unite(int a, int b) { uf[find(a)] = find(b); }

    int ec(const Side& sd) const { return 3 - sd.color - sd.sc; }
    int start_slot(const Side& sd) const { return slot(sd.node, sd.sc); }
    int end_slot(const Side& sd) const { return slot(sd.node, ec(sd)); }

    int add_side(int node, int color, int sc) {
        sides.push_back({node, color, sc, -1, -1, true});
        side_of[slot(node, color)] = (int)sides.size() - 1;
        ++boundary_count;
        return (int)sides.size() - 1;
    }
    void drop_side(int i) {
        sides[i].alive = false;
        side_of[slot(sides[i].node, sides[i].color)] = -1;
        --boundary_count;
        if (head == i) head = sides[i].next != i ? sides[i].next : -1;
    }
    void link(int a, int b) {
        sides[a].next = b;
        sides[b].prev = a;
    }

    void build() {
        placed[1] = 1;
        parity[1] = 1;
        int s2 = add_side(1, 2, 0);
        int s0 = add_side(1, 0, 1);
        int s1 = add_side(1, 1, 2);
        link(s2, s0);
        link(s0, s1);
        link(s1, s2);
        head = s2;

        std::vector<int> queue{1};
        std::size_t qi = 0;
        while (qi < queue.size()) {
            int d = queue[qi++];
            for (int i = 0; i < 3; ++i) {
                int e = s.sigma(i, d);
                if (placed[e]) continue;
                attach(side_of[slot(d, i)], e);
                queue.push_back(e);
                zip_sweep();
            }
        }
        zip_sweep();
    }

    void attach(int sd_idx, int e) {
        Side sd = sides[sd_idx];
        const int d = sd.node, i = sd.color;
        const int j = sd.sc, k = ec(sd);
        unite(slot(d, j), slot(e, j));
        unite(slot(d, k), slot(e, k));
        placed[e] = 1;
        parity[e] = -parity[d];
        int u1 = add_side(e, k, j);  // from (e,j) to (e,i)
        int u2 = add_side(e, j, i);  // from (e,i) to (e,k)
        int p = sd.prev, q = sd.next;
        drop_side(sd_idx);
        link(p, u1);
        link(u1, u2);
        link(u2, q);
        if (head == -1) head = u1;
    }

    int boundary_sides_at(int root) {
        int count = 0;
        int i = head;
        if (i < 0) return 0;
        do {
            if (find(start_slot(sides[i])) == root) ++count;
            if (find(end_slot(sides[i])) == root) ++count;
            i = sides[i].next;
        } while (i != head);
        return count;
    }

    bool zip_one() {
        int i = head;
        if (i < 0 || boundary_count < 2) return false;
        do {
            Side& a = sides[i];
            int t = a.next;
            if (t != i) {
                Side& b = sides[t];
                if (a.color == b.color && b.node == s.sigma(a.color, a.node) &&
                    b.node != a.node && ec(a) == b.sc && boundary_count > 2) {
                    int u = find(end_slot(a));
                    const int vc = ec(a);  // middle vertex color
                    const Component& comp = comps[vc][comp_idx[vc][a.node]];
                    bool closes = boundary_sides_at(u) == 2;
                    if (!closes || (!comp.chain && comp.v == 1)) {
                        unite(slot(a.node, a.sc), slot(b.node, a.sc));
                        unite(slot(a.node, vc), slot(b.node, vc));
                        int p = a.prev, q = b.next;
                        drop_side(t);
                        drop_side(i);
                        if (boundary_count > 0) link(p, q);
                        return true;
                    }
                }
            }
            i = sides[i].next;
        } while (i != head);
        return false;
    }

    void zip_sweep() {
        while (zip_one()) {
        }
    }
};

// per boundary position: the disc vertex between side t and side t+1
struct BoundaryData {
    std::vector<int> side_index;   // into Disc::sides, cyclic order
    std::vector<int> vertex_id;    // disc vertex after each side
};

struct Turtle {
    GeometryKind g;
    Vec3 p, d;

    static Turtle start(GeometryKind g) {
        if (g == GeometryKind::Euclidean) return {g, {0, 0, 1}, {1, 0, 0}};
        return {g, {0, 0, 1}, {1, 0, 0}};
    }
    void advance(double len) {
        switch (g) {
            case GeometryKind::Euclidean:
                p = p + d * len;
                break;
            case GeometryKind::Spherical: {
                Vec3 np = p * std::cos(len) + d * std::sin(len);
                Vec3 nd = p * -std::sin(len) + d * std::cos(len);
                p = np;
                d = nd;
                break;
            }
            case GeometryKind::Hyperbolic: {
                Vec3 np = p * std::cosh(len) + d * std::sinh(len);
                Vec3 nd = p * std::sinh(len) + d * std::cosh(len);
                p = np;
                d = nd;
                break;
            }
        }
    }
    void turn(double theta) {
        Vec3 e;
        switch (g) {
            case GeometryKind::Euclidean:
                e = {-d.y, d.x, 0};
                break;
            case GeometryKind::Spherical:
                e = cross(p, d);
                break;
            case GeometryKind::Hyperbolic: {
                Vec3 w = cross(p, d);
                e = {w.x, w.y, -w.z};
                break;
            }
        }
        d = d * std::cos(theta) + e * std::sin(theta);
    }
};

struct PolygonSpec {
    std::vector<double> angle;    // per corner, radians
    std::vector<int> runs;        // boundary sides per polygon side
    std::vector<int> cls;         // pairing class per polygon side
    int classes = 0;
};

// walk the polygon; lengths of polygon side m = runs[m] * unit[cls[m]]
std::array<double, 6> closure_error(GeometryKind g, const PolygonSpec& spec,
                                    const std::vector<double>& unit,
                                    std::vector<Vec3>* corners = nullptr) {
    Turtle t = Turtle::start(g);
    Vec3 p0 = t.p, d0 = t.d;
    if (corners) {
        corners->clear();
        corners->push_back(t.p);
    }
    const std::size_t m = spec.runs.size();
    for (std::size_t k = 0; k < m; ++k) {
        t.advance(spec.runs[k] * unit[spec.cls[k]]);
        if (corners && k + 1 < m) corners->push_back(t.p);
        t.turn(kPi - spec.angle[(k + 1) % m]);
    }
    return {t.p.x - p0.x, t.p.y - p0.y, t.p.z - p0.z,
            t.d.x - d0.x, t.d.y - d0.y, t.d.z - d0.z};
}

double err_norm(const std::array<double, 6>& e) {
    double s = 0;
    for (double v : e) s += v * v;
    return std::sqrt(s);
}

// Solve polygon side unit lengths so the turtle walk closes.
// Returns false if no positive solution was found.
bool solve_closure(GeometryKind g, const PolygonSpec& spec, double init,
                   std::vector<double>& unit) {
    const int C = spec.classes;
    unit.assign(C, init);
    if (g == GeometryKind::Euclidean) {
        // linear least squares: sum of runs * unit * heading = 0
        double heading = 0;
        std::vector<std::array<double, 2>> acc(C, {0, 0});
        for (std::size_t k = 0; k < spec.runs.size(); ++k) {
            acc[spec.cls[k]][0] += spec.runs[k] * std::cos(heading);
            acc[spec.cls[k]][1] += spec.runs[k] * std::sin(heading);
            heading += kPi - spec.angle[(k + 1) % spec.runs.size()];
        }
        for (int pass = 0; pass < 8; ++pass) {
            double a00 = 0, a01 = 0, a11 = 0, b0 = 0, b1 = 0;
            for (int c = 0; c < C; ++c) {
                a00 += acc[c][0] * acc[c][0];
                a01 += acc[c][0] * acc[c][1];
                a11 += acc[c][1] * acc[c][1];
                b0 += acc[c][0] * unit[c];
                b1 += acc[c][1] * unit[c];
            }
            double det = a00 * a11 - a01 * a01;
            double l0, l1;
            if (std::abs(det) < 1e-14) {
                if (std::hypot(b0, b1) < 1e-12) return true;  // already closed
                return false;
            }
            l0 = (a11 * b0 - a01 * b1) / det;
            l1 = (-a01 * b0 + a00 * b1) / det;
            bool clamped = false;
            for (int c = 0; c < C; ++c) {
                unit[c] -= acc[c][0] * l0 + acc[c][1] * l1;
                if (unit[c] < 0.05 * init) {
                    unit[c] = 0.05 * init;
                    clamped = true;
                }
            }
            if (!clamped) break;
        }
        auto e = closure_error(g, spec, unit);
        return err_norm(e) < 1e-9 * (1 + init * spec.runs.size());
    }

    // curved: damped Gauss-Newton on log lengths
    std::vector<double> w(C, std::log(init));
    auto eval = [&](const std::vector<double>& wv, std::vector<double>& uv) {
        uv.resize(C);
        for (int c = 0; c < C; ++c) uv[c] = std::exp(wv[c]);
        return closure_error(g, spec, uv);
    };
    std::vector<double> uv;
    auto r = eval(w, uv);
    double lambda = 1e-6;
    for (int it = 0; it < 200; ++it) {
        double rn = err_norm(r);
        if (rn < 1e-12) break;
        // numeric Jacobian, 6 x C
        std::vector<std::array<double, 6>> J(C);
        const double h = 1e-7;
        for (int c = 0; c < C; ++c) {
            std::vector<double> wp = w;
            wp[c] += h;
            std::vector<double> tmp;
            auto rp = eval(wp, tmp);
            for (int k = 0; k < 6; ++k) J[c][k] = (rp[k] - r[k]) / h;
        }
        // normal equations with damping
        std::vector<std::vector<double>> A(C, std::vector<double>(C, 0));
        std::vector<double> b(C, 0);
        for (int i = 0; i < C; ++i) {
            for (int j = 0; j < C; ++j)
                for (int k = 0; k < 6; ++k) A[i][j] += J[i][k] * J[j][k];
            for (int k = 0; k < 6; ++k) b[i] -= J[i][k] * r[k];
            A[i][i] += lambda + 1e-12;
        }
        // gaussian elimination
        std::vector<double> delta = b;
        {
            std::vector<std::vector<double>> M = A;
            for (int col = 0; col < C; ++col) {
                int piv = col;
                for (int rr = col + 1; rr < C; ++rr)
                    if (std::abs(M[rr][col]) > std::abs(M[piv][col])) piv = rr;
                std::swap(M[piv], M[col]);
                std::swap(delta[piv], delta[col]);
                if (std::abs(M[col][col]) < 1e-300) return false;
                for (int rr = col + 1; rr < C; ++rr) {
                    double f = M[rr][col] / M[col][col];
                    for (int cc = col; cc < C; ++cc) M[rr][cc] -= f * M[col][cc];
                    delta[rr] -= f * delta[col];
                }
            }
            for (int col = C - 1; col >= 0; --col) {
                for (int cc = col + 1; cc < C; ++cc) delta[col] -= M[col][cc] * delta[cc];
                delta[col] /= M[col][col];
            }
        }
        std::vector<double> wn = w;
        for (int c = 0; c < C; ++c) wn[c] += std::clamp(delta[c], -1.0, 1.0);
        std::vector<double> un;
        auto rn2 = eval(wn, un);
        if (err_norm(rn2) < rn) {
            w = wn;
            r = rn2;
            lambda = std::max(lambda * 0.5, 1e-12);
        } else {
            lambda *= 8;
            if (lambda > 1e8) break;
        }
    }
    eval(w, unit);
    return err_norm(r) < 1e-9 * (1 + init * spec.runs.size());
}

}  // namespace

Vec3 DomainLayout::incenter_of(int node) const {
    auto t = triangle_of(node);
    // weighted by opposite side lengths; adequate on all three surfaces
    double a = distance_on(geometry, t[1], t[2]);
    double b = distance_on(geometry, t[0], t[2]);
    double c = distance_on(geometry, t[0], t[1]);
    Vec3 p = (t[0] * a + t[1] * b + t[2] * c) / std::max(1e-300, a + b + c);
    return normalize_to_surface(geometry, p);
}

Vec3 DomainLayout::reference_point() const {
    Vec3 acc{0, 0, 0};
    for (int d = 1; d <= n; ++d) acc = acc + incenter_of(d);
    return normalize_to_surface(geometry, acc / n);
}

namespace {

struct Builder {
    const DelaneySymbol& s;
    GeometryKind g;
    Disc disc;
    DomainLayout out;

    std::vector<int> vid;           // slot root -> vertex id (or -1)
    std::vector<int> vslot;         // vertex id -> representative slot
    BoundaryData bd;

    explicit Builder(const DelaneySymbol& sym)
        : s(sym), g(geometry_of(sym)), disc(sym) {
        out.geometry = g;
        out.n = s.size();
        collect_vertices();
        assign_angles();
        place_boundary();
        relax_interior(1000, 1e-6);
        polish();
        finish();
    }

    void collect_vertices() {
        const int n = s.size();
        vid.assign(3 * n, -1);
        out.chamber.assign(n + 1, {0, 0, 0});
        for (int d = 1; d <= n; ++d)
            for (int k = 0; k < 3; ++k) {
                int r = disc.find(disc.slot(d, k));
                if (vid[r] < 0) {
                    vid[r] = (int)vslot.size();
                    vslot.push_back(r);
                }
                out.chamber[d][k] = vid[r];
            }
        out.positions.assign(vslot.size(), Vec3{});
        out.vertex_info.assign(vslot.size(), LayoutVertexInfo{});

        for (std::size_t v = 0; v < vslot.size(); ++v) {
            int r = vslot[v];
            int node = r / 3 + 1, color = r % 3;
            LayoutVertexInfo& info = out.vertex_info[v];
            info.color = color;
            info.ci = color == 0 ? 1 : 0;
            info.cj = color == 2 ? 1 : 2;
            info.comp = disc.comp_idx[color][node];
        }
        // split counts
        std::map<std::pair<int, int>, int> splits;  // (color, comp) -> count
        for (const auto& info : out.vertex_info) ++splits[{info.color, info.comp}];
        for (auto& info : out.vertex_info) info.split = splits[{info.color, info.comp}];

        // boundary walk
        int i = disc.head;
        if (i < 0) throw LayoutError("layout failed: empty boundary");
        do {
            const auto& side = disc.sides[i];
            bd.side_index.push_back(i);
            out.boundary.push_back({side.node, side.color});
            bd.vertex_id.push_back(vid[disc.find(disc.end_slot(side))]);
            i = side.next;
        } while (i != disc.head);
        for (int id : bd.vertex_id) out.vertex_info[id].on_boundary = true;
    }

    const Component& comp_of_vertex(int v) const {
        const auto& info = out.vertex_info[v];
        return disc.comps[info.color][info.comp];
    }

    void assign_angles() {
        for (std::size_t v = 0; v < out.vertex_info.size(); ++v) {
            auto& info = out.vertex_info[v];
            const Component& c = comp_of_vertex((int)v);
            if (!info.on_boundary) {
                info.angle = 2 * kPi;
                if (c.v >= 2)
                    throw LayoutError("layout failed: branched vertex fell interior");
                continue;
            }
            double full = c.chain ? kPi : 2 * kPi;
            info.angle = full / (info.split * c.v);
        }
    }

    void place_boundary() {
        const std::size_t M = bd.vertex_id.size();
        // corner = boundary vertex whose exact angle is not pi
        std::vector<char> is_corner(M, 0);
        std::size_t corners = 0;
        for (std::size_t t = 0; t < M; ++t) {
            const auto& info = out.vertex_info[bd.vertex_id[t]];
            const Component& c = comp_of_vertex(bd.vertex_id[t]);
            int sv = info.split * c.v;
            bool straight = c.chain ? sv == 1 : sv == 2;
            is_corner[t] = !straight;
            corners += is_corner[t];
        }
        if (corners < 3) {
            place_circle();
            return;
        }

        // polygon sides = maximal runs between corners, starting after a corner
        std::size_t first = 0;
        while (!is_corner[first]) ++first;
        PolygonSpec spec;
        std::vector<std::vector<std::size_t>> run_positions;  // boundary indices per polygon side
        {
            std::size_t t = first;
            do {
                spec.angle.push_back(out.vertex_info[bd.vertex_id[t]].angle);
                std::vector<std::size_t> run;
                std::size_t u = (t + 1) % M;
                run.push_back(u);  // the side after vertex t
                // walk forward until the next corner
                std::size_t w = u;
                while (!is_corner[w]) {
                    w = (w + 1) % M;
                    run.push_back(w);
                }
                // run boundary sides: positions t+1 .. w (sides indices)
                // each element of `run` is the boundary *position* whose side
                // leads to vertex at that position
                spec.runs.push_back((int)run.size());
                run_positions.push_back(run);
                t = w;
            } while (t != first);
        }
        // corner list starts at vertex `first`; angle[k] belongs to corner k,
        // but closure_error turns with angle[(k+1)%m] after side k, matching
        // sides run_positions[k] from corner k to corner k+1.

        // pairing classes over polygon sides
        const std::size_t P = spec.runs.size();
        std::vector<int> cls(P);
        std::iota(cls.begin(), cls.end(), 0);
        std::function<int(int)> findc = [&](int x) {
            return cls[x] == x ? x : cls[x] = findc(cls[x]);
        };
        std::vector<int> poly_of(M, -1);
        for (std::size_t p = 0; p < P; ++p)
            for (std::size_t pos : run_positions[p]) poly_of[pos] = (int)p;
        for (std::size_t pos = 0; pos < M; ++pos) {
            const auto& side = out.boundary[pos];
            int partner_node = s.sigma(side.color, side.node);
            if (partner_node == side.node) continue;  // mirror
            for (std::size_t q = 0; q < M; ++q) {
                if (out.boundary[q].node == partner_node &&
                    out.boundary[q].color == side.color) {
                    int a = findc(poly_of[pos]), b = findc(poly_of[q]);
                    if (a != b) cls[a] = b;
                    break;
                }
            }
        }
        std::map<int, int> remap;
        spec.cls.resize(P);
        for (std::size_t p = 0; p < P; ++p) {
            int root = findc((int)p);
            if (!remap.count(root)) {
                int id = (int)remap.size();
                remap[root] = id;
            }
            spec.cls[p] = remap[root];
        }
        spec.classes = (int)remap.size();

        double init = initial_unit();
        std::vector<double> unit;
        if (!solve_closure(g, spec, init, unit)) {
            place_circle();
            return;
        }
        std::vector<Vec3> corner_pos;
        closure_error(g, spec, unit, &corner_pos);
        if (getenv("DDS_DEBUG_LAYOUT")) {
            fprintf(stderr, "corners=%zu classes=%d init=%g\n", spec.angle.size(), spec.classes, init);
            for (size_t k = 0; k < spec.angle.size(); ++k)
                fprintf(stderr, "  corner %zu angle=%g runs=%d cls=%d pos=(%g,%g,%g)\n",
                        k, spec.angle[k], spec.runs[k], spec.cls[k],
                        corner_pos[k].x, corner_pos[k].y, corner_pos[k].z);
            for (double u : unit) fprintf(stderr, "  unit %g\n", u);
        }

        // corner k sits at boundary position: vertex `first` is corner 0
        for (std::size_t p = 0; p < P; ++p) {
            Vec3 a = corner_pos[p];
            Vec3 b = corner_pos[(p + 1) % P];
            const auto& run = run_positions[p];
            const int steps = (int)run.size();
            for (int t = 0; t < steps; ++t) {
                int vtx = bd.vertex_id[run[t]];
                double frac = double(t + 1) / steps;
                Vec3 pos = t + 1 == steps ? b : geodesic_point(g, a, b, frac);
                out.positions[vtx] = pos;
            }
        }
        recentre();
    }

    double initial_unit() const {
        if (g == GeometryKind::Euclidean) return 1.0;
        double area = 2 * kPi * std::abs(to_double(curvature(s)) / 2);
        double m = std::max<std::size_t>(3, bd.vertex_id.size());
        if (g == GeometryKind::Hyperbolic) {
            double R = std::acosh(1 + area / (2 * kPi));
            return std::max(0.05, 2 * R * std::sin(kPi / m));
        }
        double c = std::clamp(1 - area / (2 * kPi), -0.9, 0.999);
        double R = std::acos(c);
        return std::max(0.02, 2 * R * std::sin(kPi / m));
    }

    // fallback: all boundary vertices uniformly on a metric circle
    void place_circle() {
        const std::size_t M = bd.vertex_id.size();
        double R;
        if (g == GeometryKind::Euclidean) {
            R = 1.0;
        } else {
            double area = 2 * kPi * std::abs(to_double(curvature(s)) / 2);
            R = g == GeometryKind::Hyperbolic ? std::acosh(1 + area / (2 * kPi))
                                              : std::acos(std::clamp(1 - area / (2 * kPi), -0.9, 0.999));
            R = std::max(R, 0.05);
        }
        for (std::size_t t = 0; t < M; ++t) {
            double th = 2 * kPi * t / M;
            Turtle tu = Turtle::start(g);
            tu.turn(th);
            tu.advance(R);
            out.positions[bd.vertex_id[t]] = tu.p;
        }
    }

    void recentre() {
        Vec3 acc{0, 0, 0};
        int cnt = 0;
        std::vector<char> onb(out.positions.size(), 0);
        for (int v : bd.vertex_id) onb[v] = 1;
        for (std::size_t v = 0; v < out.positions.size(); ++v)
            if (onb[v]) {
                acc = acc + out.positions[v];
                ++cnt;
            }
        if (!cnt) return;
        Vec3 c = normalize_to_surface(g, acc / cnt);
        Vec3 apex{0, 0, 1};
        if (distance_on(g, c, apex) < 1e-12) return;
        // translate c to the apex: point reflection at c, then at the midpoint
        Vec3 mid = geodesic_point(g, c, apex, 0.5);
        Isometry tr = point_reflection(mid) * point_reflection(c);
        // interior vertices are still unset here and get seeded afterwards
        for (std::size_t v = 0; v < out.positions.size(); ++v)
            if (onb[v]) out.positions[v] = normalize_to_surface(g, tr(out.positions[v]));
    }

    // rotation by pi about a point: two reflections in orthogonal geodesics
    Isometry point_reflection(const Vec3& p) {
        Vec3 t = tangent_at(p);
        Vec3 q1 = advance_copy(p, t, 0.5);
        Vec3 q2 = advance_copy(p, perp_at(p, t), 0.5);
        return reflection_through(g, p, q1) * reflection_through(g, p, q2);
    }
    Vec3 tangent_at(const Vec3& p) {
        // any unit tangent
        Vec3 trial{1, 0, 0};
        double c = form_dot(g, trial, p);
        Vec3 t;
        if (g == GeometryKind::Euclidean) {
            t = {1, 0, 0};
        } else if (g == GeometryKind::Hyperbolic) {
            t = trial + p * c;
            double n = std::sqrt(std::max(1e-300, form_dot(g, t, t)));
            if (n < 1e-9) {
                trial = {0, 1, 0};
                c = form_dot(g, trial, p);
                t = trial + p * c;
                n = std::sqrt(std::max(1e-300, form_dot(g, t, t)));
            }
            t = t / n;
        } else {
            t = trial - p * c;
            double n = norm(t);
            if (n < 1e-9) {
                trial = {0, 1, 0};
                t = trial - p * dot(trial, p);
                n = norm(t);
            }
            t = t / n;
        }
        return t;
    }
    Vec3 perp_at(const Vec3& p, const Vec3& d) {
        if (g == GeometryKind::Euclidean) return {-d.y, d.x, 0};
        Vec3 w = cross(p, d);
        if (g == GeometryKind::Hyperbolic) w = {w.x, w.y, -w.z};
        double n = std::sqrt(std::max(1e-300, form_dot(g, w, w)));
        return w / n;
    }
    Vec3 advance_copy(const Vec3& p, const Vec3& d, double len) {
        Turtle t{g, p, d};
        t.advance(len);
        return t.p;
    }

    void relax_interior(int iterations, double tol_factor) {
        // adjacency from triangle edges
        std::vector<std::vector<int>> adj(out.positions.size());
        auto add = [&](int a, int b) {
            if (std::find(adj[a].begin(), adj[a].end(), b) == adj[a].end()) adj[a].push_back(b);
        };
        for (int d = 1; d <= s.size(); ++d) {
            auto& ch = out.chamber[d];
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    if (a != b) add(ch[a], ch[b]);
        }
        std::vector<char> interior(out.positions.size(), 1);
        for (int v : bd.vertex_id) interior[v] = 0;
        // init interior at the boundary centroid
        Vec3 acc{0, 0, 0};
        for (int v : bd.vertex_id) acc = acc + out.positions[v];
        Vec3 c0 = normalize_to_surface(g, acc / std::max<std::size_t>(1, bd.vertex_id.size()));
        bool any = false;
        for (std::size_t v = 0; v < out.positions.size(); ++v)
            if (interior[v]) {
                out.positions[v] = c0;
                any = true;
            }
        if (!any) return;
        double diam = rough_diameter();
        for (int it = 0; it < iterations; ++it) {
            double maxdisp = 0;
            for (std::size_t v = 0; v < out.positions.size(); ++v) {
                if (!interior[v]) continue;
                Vec3 m{0, 0, 0};
                for (int u : adj[v]) m = m + out.positions[u];
                m = normalize_to_surface(g, m / (double)adj[v].size());
                maxdisp = std::max(maxdisp, distance_on(g, m, out.positions[v]));
                out.positions[v] = m;
            }
            if (maxdisp < tol_factor * diam) break;
        }
    }

    double rough_diameter() const {
        double d = 0;
        for (std::size_t a = 0; a < out.positions.size(); ++a)
            for (std::size_t b = a + 1; b < out.positions.size(); ++b)
                d = std::max(d, distance_on(g, out.positions[a], out.positions[b]));
        return std::max(d, 1e-9);
    }

    double pairing_residual() {
        double worst = 0;
        for (const auto& side : out.boundary) {
            int D = side.node, i = side.color;
            int E = s.sigma(i, D);
            int j = i == 0 ? 1 : 0, k = i == 2 ? 1 : 2;
            auto td = out.triangle_of(D);
            auto te = out.triangle_of(E);
            Isometry refl = reflection_through(g, td[j], td[k]);
            Isometry gen = fit_isometry(g, {te[j], te[k], te[i]}, {td[j], td[k], refl(td[i])});
            worst = std::max(worst, distance_on(g, gen(te[j]), td[j]));
            worst = std::max(worst, distance_on(g, gen(te[k]), td[k]));
        }
        return worst;
    }

    void polish() {
        out.diameter = rough_diameter();
        double res = pairing_residual();
        const double target = 1e-3 * out.diameter;
        for (int round = 0; round < 5 && res > 1e-9 * out.diameter; ++round) {
            // average each boundary vertex with its mapped partner images
            std::vector<Vec3> accum(out.positions.size(), Vec3{0, 0, 0});
            std::vector<int> cnt(out.positions.size(), 0);
            for (const auto& side : out.boundary) {
                int D = side.node, i = side.color;
                int E = s.sigma(i, D);
                if (E == D) continue;
                int j = i == 0 ? 1 : 0, k = i == 2 ? 1 : 2;
                auto td = out.triangle_of(D);
                auto te = out.triangle_of(E);
                Isometry refl = reflection_through(g, td[j], td[k]);
                Isometry gen = fit_isometry(g, {te[j], te[k], te[i]}, {td[j], td[k], refl(td[i])});
                for (int c : {j, k}) {
                    accum[out.chamber[D][c]] = accum[out.chamber[D][c]] + gen(out.positions[out.chamber[E][c]]);
                    cnt[out.chamber[D][c]] += 1;
                }
            }
            for (std::size_t v = 0; v < out.positions.size(); ++v) {
                if (!cnt[v]) continue;
                Vec3 m = (out.positions[v] + accum[v]) / (1.0 + cnt[v]);
                out.positions[v] = normalize_to_surface(g, m);
            }
            relax_interior(300, 1e-8);
            res = pairing_residual();
            if (res < target && round >= 1) break;
        }
        out.residual = res;
    }

    void finish() {
        out.diameter = rough_diameter();
        // orientation and area floor
        double total = 0;
        std::vector<double> area(s.size() + 1, 0);
        for (int d = 1; d <= s.size(); ++d) {
            auto t = out.triangle_of(d);
            Vec3 cr = cross(t[1] - t[0], t[2] - t[0]);
            double a;
            if (g == GeometryKind::Euclidean)
                a = 0.5 * cr.z;
            else {
                // signed volume against the surface normal direction
                double vol = dot(t[0], cr);
                a = 0.5 * vol;
            }
            area[d] = a * disc.parity[d];
            total += std::abs(a);
        }
        int pos = 0, neg = 0;
        for (int d = 1; d <= s.size(); ++d) (area[d] > 0 ? pos : neg) += 1;
        double sign = pos >= neg ? 1.0 : -1.0;
        for (int d = 1; d <= s.size(); ++d) {
            if (sign * area[d] <= 1e-9 * std::max(total, 1e-12))
                throw LayoutError("degenerate layout: chamber " + std::to_string(d) +
                                  " has non-positive area");
        }
    }
};

}  // namespace

DomainLayout layout_fundamental_domain(const DelaneySymbol& s) {
    Builder b(s);
    return std::move(b.out);
}

std::vector<Generator> compute_generators(const DelaneySymbol& s, const DomainLayout& layout) {
    std::vector<Generator> gens;
    const GeometryKind g = layout.geometry;
    double worst = 0;
    for (const auto& side : layout.boundary) {
        int D = side.node, i = side.color;
        int E = s.sigma(i, D);
        int j = i == 0 ? 1 : 0, k = i == 2 ? 1 : 2;
        auto td = layout.triangle_of(D);
        auto te = layout.triangle_of(E);
        Isometry refl = reflection_through(g, td[j], td[k]);
        Isometry gen = fit_isometry(g, {te[j], te[k], te[i]}, {td[j], td[k], refl(td[i])});
        worst = std::max(worst, distance_on(g, gen(te[j]), td[j]));
        worst = std::max(worst, distance_on(g, gen(te[k]), td[k]));
        gens.push_back({D, i, gen});
    }
    if (worst > 1e-3 * layout.diameter)
        throw LayoutError("generator residual " + std::to_string(worst) +
                          " exceeds tolerance for this layout");
    return gens;
}

TransitionTable::TransitionTable(const DelaneySymbol& s, const DomainLayout& layout) {
    boundary_.assign(3 * s.size(), 0);
    iso_.assign(3 * s.size(), Isometry::identity(layout.geometry));
    for (const Generator& gen : compute_generators(s, layout)) {
        boundary_[idx(gen.node, gen.color)] = 1;
        iso_[idx(gen.node, gen.color)] = gen.iso;
    }
}

}  // namespace dds
