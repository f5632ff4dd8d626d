#include <doctest.h>

#include <set>

#include "dds/render.hpp"
#include "fixtures.hpp"

using dds::parse_symbol;

namespace {

std::set<std::string> fill_colors(const std::string& svg) {
    std::set<std::string> out;
    std::size_t pos = 0;
    while ((pos = svg.find("fill=\"", pos)) != std::string::npos) {
        pos += 6;
        std::size_t end = svg.find('"', pos);
        std::string c = svg.substr(pos, end - pos);
        if (c != "none" && c != "#ffffff") out.insert(c);
        pos = end;
    }
    return out;
}

}  // namespace

TEST_CASE("square grid renders with one tile color") {
    dds::RenderOptions opt;
    opt.model = dds::ModelKind::Euclidean;
    std::string svg = dds::render_svg(parse_symbol(fixtures::kSquare), opt);
    CHECK(svg.find("<?xml") == 0);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
    CHECK(fill_colors(svg).size() == 1);
    CHECK(svg.find("width=\"512\"") != std::string::npos);
}

TEST_CASE("the eight-chamber example uses exactly three tile colors") {
    dds::RenderOptions opt;
    opt.model = dds::ModelKind::Euclidean;
    std::string svg = dds::render_svg(parse_symbol(fixtures::kS8), opt);
    CHECK(fill_colors(svg).size() == 3);
}

TEST_CASE("poincare render keeps every path point inside the disc") {
    dds::RenderOptions opt;
    opt.model = dds::ModelKind::Poincare;
    opt.radius = 0.9;
    opt.style.size_px = 400;
    std::string svg = dds::render_svg(parse_symbol(fixtures::size1(3, 7)), opt);
    // all numeric coordinates must fall inside the 400x400 viewport circle
    std::size_t pos = 0;
    int checked = 0;
    while ((pos = svg.find("d=\"", pos)) != std::string::npos) {
        pos += 3;
        std::size_t end = svg.find('"', pos);
        std::string d = svg.substr(pos, end - pos);
        double x = 0, y = 0;
        int fields = 0;
        const char* p = d.c_str();
        while (*p) {
            if (*p == 'M' || *p == 'L' || *p == 'C' || *p == ' ') {
                ++p;
                continue;
            }
            if (*p == 'Z') break;
            char* after = nullptr;
            double v = std::strtod(p, &after);
            if (after == p) {
                ++p;
                continue;
            }
            p = after;
            if (fields % 2 == 0) x = v;
            else {
                y = v;
                double dx = x - 200, dy = y - 200;
                CHECK(dx * dx + dy * dy < 200.0 * 200.0 + 1e-6);
                ++checked;
            }
            ++fields;
        }
        pos = end;
    }
    CHECK(checked > 100);
}

TEST_CASE("rendering is deterministic") {
    dds::RenderOptions opt;
    opt.model = dds::ModelKind::Euclidean;
    std::string a = dds::render_svg(parse_symbol(fixtures::kS8), opt);
    std::string b = dds::render_svg(parse_symbol(fixtures::kS8), opt);
    CHECK(a == b);
}

TEST_CASE("orthographic render of a spherical tiling") {
    dds::RenderOptions opt;
    opt.model = dds::ModelKind::Orthographic;
    std::string svg = dds::render_svg(parse_symbol(fixtures::size1(4, 3)), opt);
    CHECK(svg.find("<path") != std::string::npos);
}

TEST_CASE("file naming convention") {
    std::string name = dds::render_file_name(parse_symbol(fixtures::kSquare),
                                             dds::ModelKind::Euclidean);
    CHECK(name.size() == 16 + 1 + 9 + 4);
    CHECK(name.find(".euclidean.svg") == 16);
}
