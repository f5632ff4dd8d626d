#include "dds/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "dds/invariants.hpp"

namespace dds {

namespace {

std::string hsl_hex(double h, double sat, double light) {
    auto f = [&](double n) {
        double k = std::fmod(n + h / 30.0, 12.0);
        double a = sat * std::min(light, 1 - light);
        return light - a * std::max(-1.0, std::min({k - 3, 9 - k, 1.0}));
    };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", (unsigned)std::lround(f(0) * 255),
                  (unsigned)std::lround(f(8) * 255), (unsigned)std::lround(f(4) * 255));
    return buf;
}

}  // namespace

RenderStyle RenderStyle::defaults() {
    RenderStyle st;
    st.palette = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#edc948",
                  "#76b7b2", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295"};
    return st;
}

namespace {

struct Mapper {
    double cx = 0, cy = 0, half = 1;
    int size = 512;
    Vec2 operator()(const Vec2& p) const {
        return {(p.x - cx + half) / (2 * half) * size,
                (cy + half - p.y) / (2 * half) * size};  // y up -> svg y down
    }
};

void fmt(std::ostringstream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v + 0.0);  // avoid -0.000
    if (std::string(buf) == "-0.000") out << "0.000";
    else out << buf;
}

struct PathBuilder {
    PathBuilder(GeometryKind g, ModelKind m, const Mapper& mp) : geom(g), model(m), map(mp) {}

    GeometryKind geom;
    ModelKind model;
    const Mapper& map;
    std::ostringstream d;
    Vec2 last{};
    bool open = false;

    Vec2 project(const Vec3& p) const { return map(to_model(geom, model, p)); }

    void move_to(const Vec3& p) {
        Vec2 q = project(p);
        d << "M";
        fmt(d, q.x);
        d << " ";
        fmt(d, q.y);
        last = q;
        open = true;
    }

    // geodesic from a to b, approximated by cubics within 0.25 px sagitta
    void geodesic_to(const Vec3& a, const Vec3& b) {
        if (geom == GeometryKind::Euclidean) {
            Vec2 q = project(b);
            d << "L";
            fmt(d, q.x);
            d << " ";
            fmt(d, q.y);
            last = q;
            return;
        }
        segment(a, b, 0);
    }

    void segment(const Vec3& a, const Vec3& b, int depth) {
        // cubic through the projected endpoints and the 1/3, 2/3 samples
        Vec2 p0 = project(a);
        Vec2 p3 = project(b);
        Vec2 q1 = project(geodesic_point(geom, a, b, 1.0 / 3));
        Vec2 q2 = project(geodesic_point(geom, a, b, 2.0 / 3));
        Vec2 c1 = (p0 * -5.0 + q1 * 18.0 + q2 * -9.0 + p3 * 2.0) * (1.0 / 6);
        Vec2 c2 = (p0 * 2.0 + q1 * -9.0 + q2 * 18.0 + p3 * -5.0) * (1.0 / 6);
        if (depth < 8) {
            // sagitta check at the midpoint
            Vec2 mid_true = project(geodesic_point(geom, a, b, 0.5));
            Vec2 mid_bez = (p0 + c1 * 3.0 + c2 * 3.0 + p3) * 0.125;
            double err = norm(mid_true - mid_bez);
            if (err > 0.25) {
                Vec3 m = geodesic_point(geom, a, b, 0.5);
                segment(a, m, depth + 1);
                segment(m, b, depth + 1);
                return;
            }
        }
        d << "C";
        fmt(d, c1.x);
        d << " ";
        fmt(d, c1.y);
        d << " ";
        fmt(d, c2.x);
        d << " ";
        fmt(d, c2.y);
        d << " ";
        fmt(d, p3.x);
        d << " ";
        fmt(d, p3.y);
        last = p3;
    }

    void close() { d << "Z"; }
};

struct TileInstance {
    int cls = 0;
    std::vector<Vec3> outline;  // corner, mid, corner, mid, ...
    Vec3 center;
};

}  // namespace

std::string render_svg(const DelaneySymbol& s, const RenderOptions& opt) {
    const GeometryKind geom = geometry_of(s);
    DomainLayout layout = layout_fundamental_domain(s);
    std::vector<Generator> gens = compute_generators(s, layout);
    TransitionTable transitions(s, layout);

    // region and screen mapping
    Region region;
    Mapper map;
    map.size = opt.style.size_px;
    double radius = opt.radius;
    switch (opt.model) {
        case ModelKind::Euclidean: {
            if (geom != GeometryKind::Euclidean)
                throw std::invalid_argument("euclidean model requires a euclidean symbol");
            if (radius <= 0) radius = 2.5;
            Vec3 ref = layout.reference_point();
            double w = radius * layout.diameter;
            region = Region::rectangle(ref.x - w, ref.y - w, ref.x + w, ref.y + w);
            map.cx = ref.x;
            map.cy = ref.y;
            map.half = w;
            break;
        }
        case ModelKind::Poincare:
        case ModelKind::Klein: {
            if (geom != GeometryKind::Hyperbolic)
                throw std::invalid_argument("disc models require a hyperbolic symbol");
            if (radius <= 0) radius = 0.95;
            double prad = radius;
            if (opt.model == ModelKind::Klein)
                prad = radius / (1 + std::sqrt(std::max(0.0, 1 - radius * radius)));
            region = Region::poincare_disc(std::min(prad, 0.9999));
            map.half = opt.model == ModelKind::Klein ? 1.0 : 1.0;
            break;
        }
        case ModelKind::Orthographic: {
            if (geom != GeometryKind::Spherical)
                throw std::invalid_argument("orthographic model requires a spherical symbol");
            region = Region::sphere();
            map.half = 1.0;
            break;
        }
    }

    std::vector<DomainCopy> copies = develop(s, layout, gens, region);

    // tile classes by 0,1-component
    auto comps01 = components(s, 0, 1);
    std::vector<int> cls_of(s.size() + 1, 0);
    for (std::size_t k = 0; k < comps01.size(); ++k)
        for (int d : comps01[k].nodes) cls_of[d] = (int)k;

    // collect tile instances, dedup by transformed tile center
    PointTree centers(geom == GeometryKind::Euclidean ? 2 : 3,
                      1e-6 * std::max(layout.diameter, 1e-12));
    std::vector<TileInstance> tiles;
    for (const DomainCopy& copy : copies) {
        if (!copy.visible) continue;
        for (int d = 1; d <= s.size(); ++d) {
            Vec3 center = copy.transform(layout.vertex_of(d, 2));
            bool fresh = false;
            centers.insert(center, &fresh);
            if (!fresh) continue;
            // unfold the tile outline around this center
            TileInstance tile;
            tile.cls = cls_of[d];
            tile.center = center;
            int node = d;
            Isometry h = copy.transform;
            const int m = s.m01(d);
            for (int step = 0; step < m; ++step) {
                tile.outline.push_back(h(layout.vertex_of(node, 0)));
                // cross sigma_1
                if (transitions.is_boundary(node, 1)) h = h * transitions.transition(node, 1);
                node = s.sigma(1, node);
                tile.outline.push_back(h(layout.vertex_of(node, 1)));
                // cross sigma_0
                if (transitions.is_boundary(node, 0)) h = h * transitions.transition(node, 0);
                node = s.sigma(0, node);
            }
            tiles.push_back(std::move(tile));
        }
    }

    // visibility of whole tiles in the chosen model
    auto tile_drawable = [&](const TileInstance& t) {
        switch (opt.model) {
            case ModelKind::Euclidean: {
                for (const Vec3& p : t.outline)
                    if (p.x >= region.x0 && p.x <= region.x1 && p.y >= region.y0 &&
                        p.y <= region.y1)
                        return true;
                return false;
            }
            case ModelKind::Poincare:
            case ModelKind::Klein: {
                for (const Vec3& p : t.outline)
                    if (p.z <= region.zmax) return true;
                return false;
            }
            case ModelKind::Orthographic: {
                for (const Vec3& p : t.outline)
                    if (p.z < 1e-9) return false;  // back hemisphere culled
                return true;
            }
        }
        return false;
    };

    // deterministic draw order
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < tiles.size(); ++k)
        if (tile_drawable(tiles[k])) order.push_back(k);
    auto quant = [](double v) { return (long long)std::llround(v * 1e7); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const TileInstance &ta = tiles[a], &tb = tiles[b];
        auto ka = std::tuple{ta.cls, quant(ta.center.x), quant(ta.center.y), quant(ta.center.z)};
        auto kb = std::tuple{tb.cls, quant(tb.center.x), quant(tb.center.y), quant(tb.center.z)};
        return ka < kb;
    });

    // palette, extended by hue rotation when there are many classes
    std::vector<std::string> palette = opt.style.palette;
    for (std::size_t k = palette.size(); k < comps01.size(); ++k)
        palette.push_back(hsl_hex(std::fmod(47.0 * (double)k, 360.0), 0.65, 0.52));

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << opt.style.size_px << "\" height=\"" << opt.style.size_px << "\" viewBox=\"0 0 "
        << opt.style.size_px << " " << opt.style.size_px << "\">\n";
    svg << "<rect width=\"" << opt.style.size_px << "\" height=\"" << opt.style.size_px
        << "\" fill=\"" << opt.style.background << "\"/>\n";

    for (std::size_t k : order) {
        const TileInstance& t = tiles[k];
        PathBuilder pb{geom, opt.model, map};
        pb.move_to(t.outline[0]);
        for (std::size_t i = 0; i < t.outline.size(); ++i)
            pb.geodesic_to(t.outline[i], t.outline[(i + 1) % t.outline.size()]);
        pb.close();
        svg << "<path d=\"" << pb.d.str() << "\" fill=\"" << palette[t.cls]
            << "\" stroke=\"#1f1f1f\" stroke-width=\"" << opt.style.stroke_width
            << "\" stroke-linejoin=\"round\"/>\n";
    }

    if (opt.style.show_chambers) {
        for (const DomainCopy& copy : copies) {
            if (!copy.visible) continue;
            for (int d = 1; d <= s.size(); ++d) {
                auto tri = layout.triangle_of(d);
                PathBuilder pb{geom, opt.model, map};
                bool ok = true;
                for (auto& v : tri)
                    if (surface_residual(geom, copy.transform(v)) > 1e-6) ok = false;
                if (!ok) continue;
                pb.move_to(copy.transform(tri[0]));
                pb.geodesic_to(copy.transform(tri[0]), copy.transform(tri[1]));
                pb.geodesic_to(copy.transform(tri[1]), copy.transform(tri[2]));
                pb.geodesic_to(copy.transform(tri[2]), copy.transform(tri[0]));
                pb.close();
                svg << "<path d=\"" << pb.d.str()
                    << "\" fill=\"none\" stroke=\"#777777\" stroke-width=\"0.5\"/>\n";
            }
        }
    }

    if (opt.model != ModelKind::Euclidean) {
        // model disc outline
        double r = map.size / 2.0;
        svg << "<circle cx=\"" << r << "\" cy=\"" << r << "\" r=\"" << r
            << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_file_name(const DelaneySymbol& s, ModelKind model) {
    const std::string trace = canonical_trace(s);
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : trace) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return std::string(buf) + "." + model_name(model) + ".svg";
}

}  // namespace dds
