#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "dds/develop.hpp"
#include "dds/enumerate.hpp"
#include "dds/layout.hpp"
#include "fixtures.hpp"

using dds::DelaneySymbol;
using dds::GeometryKind;
using dds::parse_symbol;
using dds::Vec3;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double angle_at(GeometryKind g, const Vec3& apex, const Vec3& a, const Vec3& b) {
    if (g == GeometryKind::Euclidean) {
        double ax = a.x - apex.x, ay = a.y - apex.y;
        double bx = b.x - apex.x, by = b.y - apex.y;
        double den = std::hypot(ax, ay) * std::hypot(bx, by);
        return std::acos(std::clamp((ax * bx + ay * by) / den, -1.0, 1.0));
    }
    // tangent-space angle on the curved surfaces
    auto tangent = [&](const Vec3& to) {
        double c = dds::form_dot(g, to, apex);
        Vec3 t = g == GeometryKind::Hyperbolic ? to + apex * c : to - apex * c;
        double n = std::sqrt(std::max(1e-300, dds::form_dot(g, t, t)));
        return t / n;
    };
    Vec3 ta = tangent(a), tb = tangent(b);
    return std::acos(std::clamp(dds::form_dot(g, ta, tb), -1.0, 1.0));
}

}  // namespace

TEST_CASE("square-grid layout is the exact 45-90-45 chamber") {
    DelaneySymbol s = parse_symbol(fixtures::kSquare);
    dds::DomainLayout layout = dds::layout_fundamental_domain(s);
    CHECK(layout.n == 1);
    auto tri = layout.triangle_of(1);
    double a0 = angle_at(layout.geometry, tri[0], tri[1], tri[2]);
    double a1 = angle_at(layout.geometry, tri[1], tri[0], tri[2]);
    double a2 = angle_at(layout.geometry, tri[2], tri[0], tri[1]);
    CHECK(a0 == doctest::Approx(kPi / 4).epsilon(1e-9));
    CHECK(a1 == doctest::Approx(kPi / 2).epsilon(1e-9));
    CHECK(a2 == doctest::Approx(kPi / 4).epsilon(1e-9));
}

TEST_CASE("eight-chamber layout: split component and interior angle sums") {
    DelaneySymbol s = parse_symbol(fixtures::kS8);
    dds::DomainLayout layout = dds::layout_fundamental_domain(s);
    CHECK(layout.n == 8);

    // every component's boundary representatives carry angles that add to
    // a half turn per rotational order for chains, a full turn for cycles;
    // branched vertices always sit on the boundary
    for (int color = 0; color < 3; ++color) {
        int ci = color == 0 ? 1 : 0, cj = color == 2 ? 1 : 2;
        auto comps = components(s, ci, cj);
        for (std::size_t k = 0; k < comps.size(); ++k) {
            double sum = 0;
            int reps = 0;
            bool boundary_all = true;
            for (const auto& info : layout.vertex_info) {
                if (info.color != color || info.comp != (int)k) continue;
                ++reps;
                if (!info.on_boundary) {
                    boundary_all = false;
                    continue;
                }
                sum += info.angle;
            }
            REQUIRE(reps >= 1);
            for (const auto& info : layout.vertex_info)
                if (info.color == color && info.comp == (int)k) CHECK(info.split == reps);
            if (comps[k].v >= 2) CHECK(boundary_all);
            if (boundary_all) {
                double expect = (comps[k].chain ? kPi : 2 * kPi) / comps[k].v;
                CHECK(sum == doctest::Approx(expect).epsilon(1e-9));
            }
        }
    }

    // interior vertices: incident chamber angles add to a full turn
    for (std::size_t v = 0; v < layout.positions.size(); ++v) {
        if (layout.vertex_info[v].on_boundary) continue;
        double sum = 0;
        for (int d = 1; d <= s.size(); ++d) {
            const auto& ch = layout.chamber[d];
            for (int k = 0; k < 3; ++k)
                if (ch[k] == (int)v)
                    sum += angle_at(layout.geometry, layout.positions[ch[k]],
                                    layout.positions[ch[(k + 1) % 3]],
                                    layout.positions[ch[(k + 2) % 3]]);
        }
        CHECK(sum == doctest::Approx(2 * kPi).epsilon(1e-6));
    }
}

TEST_CASE("square-grid generators are the three side reflections") {
    DelaneySymbol s = parse_symbol(fixtures::kSquare);
    dds::DomainLayout layout = dds::layout_fundamental_domain(s);
    auto gens = dds::compute_generators(s, layout);
    REQUIRE(gens.size() == 3);
    for (const auto& g : gens) {
        CHECK(g.iso.form_error() < 1e-9);
        // reflections are involutions
        dds::Isometry sq = g.iso * g.iso;
        for (int d = 1; d <= 1; ++d) {
            auto tri = layout.triangle_of(d);
            for (const auto& v : tri)
                CHECK(dds::distance_on(layout.geometry, sq(v), v) < 1e-6 * layout.diameter);
        }
        // orientation-reversing linear part
        double det = g.iso.m.a[0][0] * g.iso.m.a[1][1] - g.iso.m.a[0][1] * g.iso.m.a[1][0];
        CHECK(det == doctest::Approx(-1.0).epsilon(1e-9));
    }
}

TEST_CASE("layouts succeed for every symbol through complexity 3") {
    dds::EnumerateOptions opt;
    opt.max_complexity = 3;
    std::vector<DelaneySymbol> symbols;
    dds::enumerate_symbols(opt, [&](const DelaneySymbol& s) { symbols.push_back(s); });
    for (const auto& s : symbols) {
        dds::DomainLayout layout = dds::layout_fundamental_domain(s);
        CHECK(layout.residual < 1e-3 * layout.diameter);
        auto gens = dds::compute_generators(s, layout);
        CHECK(gens.size() == layout.boundary.size());
        for (const auto& g : gens) CHECK(g.iso.form_error() < 1e-9);
    }
}

TEST_CASE("euclidean development of the square grid matches the reflection oracle") {
    DelaneySymbol s = parse_symbol(fixtures::kSquare);
    dds::DomainLayout layout = dds::layout_fundamental_domain(s);
    auto gens = dds::compute_generators(s, layout);

    Vec3 ref = layout.reference_point();
    const double w = 4 * layout.diameter;
    // generic offsets so no chamber side lies on the region border
    dds::Region region = dds::Region::rectangle(ref.x + 0.1234 * layout.diameter - w / 2,
                                                ref.y + 0.2468 * layout.diameter - w / 2,
                                                ref.x + 0.1234 * layout.diameter + w / 2,
                                                ref.y + 0.2468 * layout.diameter + w / 2);
    auto copies = dds::develop(s, layout, gens, region);
    long long visible = 0;
    for (const auto& c : copies) visible += c.visible ? 1 : 0;

    // oracle: breadth-first closure over the three side reflections with
    // exact dedup on vertex coordinates
    auto tri0 = layout.triangle_of(1);
    auto reflect = [&](const std::array<Vec3, 3>& t, int side) {
        int a = (side + 1) % 3, b = (side + 2) % 3;
        dds::Isometry r = dds::reflection_through(GeometryKind::Euclidean, t[a], t[b]);
        return std::array<Vec3, 3>{r(t[0]), r(t[1]), r(t[2])};
    };
    auto key = [&](const std::array<Vec3, 3>& t) {
        Vec3 c = (t[0] + t[1] + t[2]) / 3.0;
        return std::pair{(long long)std::llround(c.x * 1e6 / layout.diameter),
                         (long long)std::llround(c.y * 1e6 / layout.diameter)};
    };
    auto inside = [&](const std::array<Vec3, 3>& t) {
        for (const auto& v : t)
            if (v.x >= region.x0 && v.x <= region.x1 && v.y >= region.y0 && v.y <= region.y1)
                return true;
        auto inside_tri = [&](double px, double py) {
            double s1 = (t[1].x - t[0].x) * (py - t[0].y) - (t[1].y - t[0].y) * (px - t[0].x);
            double s2 = (t[2].x - t[1].x) * (py - t[1].y) - (t[2].y - t[1].y) * (px - t[1].x);
            double s3 = (t[0].x - t[2].x) * (py - t[2].y) - (t[0].y - t[2].y) * (px - t[2].x);
            return (s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0);
        };
        if (inside_tri(region.x0, region.y0) || inside_tri(region.x0, region.y1) ||
            inside_tri(region.x1, region.y0) || inside_tri(region.x1, region.y1))
            return true;
        // triangle edge crossing a rectangle edge with no vertex contained
        auto seg_cross = [](double ax, double ay, double bx, double by, double cx, double cy,
                            double dx, double dy) {
            auto orient = [](double px, double py, double qx, double qy, double rx, double ry) {
                double v = (qx - px) * (ry - py) - (qy - py) * (rx - px);
                return v > 0 ? 1 : v < 0 ? -1 : 0;
            };
            int o1 = orient(ax, ay, bx, by, cx, cy), o2 = orient(ax, ay, bx, by, dx, dy);
            int o3 = orient(cx, cy, dx, dy, ax, ay), o4 = orient(cx, cy, dx, dy, bx, by);
            return o1 != o2 && o3 != o4 && o1 && o2 && o3 && o4;
        };
        double rx[5] = {region.x0, region.x1, region.x1, region.x0, region.x0};
        double ry[5] = {region.y0, region.y0, region.y1, region.y1, region.y0};
        for (int e = 0; e < 3; ++e)
            for (int r = 0; r < 4; ++r)
                if (seg_cross(t[e].x, t[e].y, t[(e + 1) % 3].x, t[(e + 1) % 3].y, rx[r], ry[r],
                              rx[r + 1], ry[r + 1]))
                    return true;
        return false;
    };
    std::set<std::pair<long long, long long>> seen;
    std::vector<std::array<Vec3, 3>> frontier{tri0};
    seen.insert(key(tri0));
    long long expected = inside(tri0) ? 1 : 0;
    while (!frontier.empty()) {
        auto t = frontier.back();
        frontier.pop_back();
        for (int side = 0; side < 3; ++side) {
            auto nt = reflect(t, side);
            if (!seen.insert(key(nt)).second) continue;
            // expand a margin beyond the region so every intersecting
            // triangle is reached
            Vec3 c = (nt[0] + nt[1] + nt[2]) / 3.0;
            if (c.x < region.x0 - 3 * layout.diameter || c.x > region.x1 + 3 * layout.diameter ||
                c.y < region.y0 - 3 * layout.diameter || c.y > region.y1 + 3 * layout.diameter)
                continue;
            if (inside(nt)) ++expected;
            frontier.push_back(nt);
        }
    }
    CHECK(visible == expected);
}

TEST_CASE("euclidean development covers every probe point exactly once") {
    DelaneySymbol s = parse_symbol(fixtures::kSquare);
    dds::DomainLayout layout = dds::layout_fundamental_domain(s);
    auto gens = dds::compute_generators(s, layout);
    Vec3 ref = layout.reference_point();
    const double w = 2.5 * layout.diameter;
    dds::Region region = dds::Region::rectangle(ref.x - w, ref.y - w, ref.x + w, ref.y + w);
    auto copies = dds::develop(s, layout, gens, region);

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> unif(-0.8, 0.8);
    auto side = [](const Vec3& a, const Vec3& b, double px, double py) {
        return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
    };
    int tested = 0;
    while (tested < 1000) {
        double px = ref.x + unif(rng) * w;
        double py = ref.y + unif(rng) * w;
        int hits = 0;
        bool near_edge = false;
        for (const auto& c : copies) {
            auto t = layout.triangle_of(1);
            std::array<Vec3, 3> tt{c.transform(t[0]), c.transform(t[1]), c.transform(t[2])};
            double s1 = side(tt[0], tt[1], px, py);
            double s2 = side(tt[1], tt[2], px, py);
            double s3 = side(tt[2], tt[0], px, py);
            double eps = 1e-7 * layout.diameter * layout.diameter;
            if (std::abs(s1) < eps || std::abs(s2) < eps || std::abs(s3) < eps) {
                near_edge = true;
                break;
            }
            if ((s1 > 0 && s2 > 0 && s3 > 0) || (s1 < 0 && s2 < 0 && s3 < 0)) ++hits;
        }
        if (near_edge) continue;  // resample points on chamber borders
        CHECK(hits == 1);
        ++tested;
    }
}

TEST_CASE("hyperbolic development stays inside the unit disc and grows with the radius") {
    DelaneySymbol s = parse_symbol(fixtures::size1(3, 7));
    dds::DomainLayout layout = dds::layout_fundamental_domain(s);
    auto gens = dds::compute_generators(s, layout);
    long long last = 0;
    for (double radius : {0.7, 0.9, 0.97}) {
        auto copies = dds::develop(s, layout, gens, dds::Region::poincare_disc(radius));
        long long visible = 0;
        for (const auto& c : copies) {
            if (!c.visible) continue;
            ++visible;
            for (std::size_t v = 0; v < layout.positions.size(); ++v) {
                dds::Vec2 p = dds::to_model(GeometryKind::Hyperbolic, dds::ModelKind::Poincare,
                                            c.transform(layout.positions[v]));
                CHECK(norm(p) < 1.0);
            }
        }
        CHECK(visible > last);
        last = visible;
    }
}

TEST_CASE("spherical development closes up into the full group") {
    DelaneySymbol s = parse_symbol(fixtures::size1(5, 3));  // order-120 reflection group
    dds::DomainLayout layout = dds::layout_fundamental_domain(s);
    auto gens = dds::compute_generators(s, layout);
    auto copies = dds::develop(s, layout, gens, dds::Region::sphere());
    CHECK(copies.size() == 120);
}

TEST_CASE("model projections") {
    GeometryKind g = GeometryKind::Hyperbolic;
    Vec3 apex{0, 0, 1};
    dds::Vec2 p = dds::to_model(g, dds::ModelKind::Poincare, apex);
    dds::Vec2 k = dds::to_model(g, dds::ModelKind::Klein, apex);
    CHECK(norm(p) == doctest::Approx(0.0));
    CHECK(norm(k) == doctest::Approx(0.0));

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unif(-2, 2);
    for (int t = 0; t < 50; ++t) {
        Vec3 q = dds::normalize_to_surface(g, Vec3{unif(rng), unif(rng), 4.0});
        dds::Vec2 pp = dds::to_model(g, dds::ModelKind::Poincare, q);
        dds::Vec2 kk = dds::to_model(g, dds::ModelKind::Klein, q);
        CHECK(norm(pp) < 1.0);
        CHECK(norm(kk) < 1.0);
        CHECK(norm(kk) == doctest::Approx(dds::poincare_to_klein_radius(norm(pp))).epsilon(1e-9));
    }
    CHECK_THROWS_AS(dds::to_model(g, dds::ModelKind::Poincare, Vec3{1, 1, 1}),
                    std::domain_error);
}

TEST_CASE("isometries preserve their bilinear form") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> unif(-1, 1);
    for (GeometryKind g :
         {GeometryKind::Euclidean, GeometryKind::Spherical, GeometryKind::Hyperbolic}) {
        for (int t = 0; t < 25; ++t) {
            Vec3 raw1{unif(rng), unif(rng), 3.0}, raw2{unif(rng), unif(rng), 3.0};
            Vec3 p = dds::normalize_to_surface(g, raw1);
            Vec3 q = dds::normalize_to_surface(g, raw2);
            if (dds::distance_on(g, p, q) < 1e-3) continue;
            dds::Isometry r = dds::reflection_through(g, p, q);
            CHECK(r.form_error() < 1e-9);
            // chordal comparison; the intrinsic acos/acosh loses half the
            // digits near zero
            CHECK(norm(r(p) - p) < 1e-12);
            CHECK(norm(r(q) - q) < 1e-12);
        }
    }
}

TEST_CASE("cone angles close up in the developed corona") {
    // the cone of order 3 in the eight-chamber example: total developed
    // angle around its vertex is a full turn
    DelaneySymbol s = parse_symbol(fixtures::kS8);
    dds::DomainLayout layout = dds::layout_fundamental_domain(s);
    dds::TransitionTable tr(s, layout);

    // locate a boundary vertex of the v=3 cycle component {4,6,7,8}
    auto c12 = components(s, 1, 2);
    int comp = -1;
    for (std::size_t k = 0; k < c12.size(); ++k)
        if (!c12[k].chain && c12[k].v == 3) comp = (int)k;
    REQUIRE(comp >= 0);

    // walk around the 0-vertex of node 4: 2*m12 chambers, angle 2*pi
    int node = 4;
    dds::Isometry h = dds::Isometry::identity(layout.geometry);
    double total = 0;
    const int deg = s.m12(node);
    int cur = node;
    for (int step = 0; step < 2 * deg; ++step) {
        auto tri = layout.triangle_of(cur);
        total += angle_at(layout.geometry, h(tri[0]), h(tri[1]), h(tri[2]));
        int color = step % 2 == 0 ? 1 : 2;
        if (tr.is_boundary(cur, color)) h = h * tr.transition(cur, color);
        cur = s.sigma(color, cur);
    }
    CHECK(total == doctest::Approx(2 * kPi).epsilon(1e-3));
    // and the walk returns to the start
    CHECK(cur == node);
    auto tri = layout.triangle_of(node);
    CHECK(dds::distance_on(layout.geometry, h(tri[0]), tri[0]) < 1e-6 * layout.diameter);
}
