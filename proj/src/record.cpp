#include "dds/record.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "dds/orbifold.hpp"
#include "dds/rational.hpp"

namespace dds {

const std::vector<std::string>& record_columns() {
    static const std::vector<std::string> cols = {
        "id",        "symbol",         "complexity", "geometry",  "curvature",
        "euler",     "orbifold",       "symmetry_class", "signature", "tile_deg",
        "vertex_deg", "tiles",         "edges",      "vertices",  "normal",
        "maximal",   "colorable",      "orientable", "fixed_point_free", "self_dual"};
    return cols;
}

std::string format_real(double v) {
    // shortest text that round-trips the exact double
    for (int prec = 15; prec <= 17; ++prec) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return "0";
}

namespace {

std::string join_spaces(const std::vector<int>& v) {
    std::ostringstream out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out << ' ';
        out << v[k];
    }
    return out.str();
}

}  // namespace

TilingRecord make_record(const DelaneySymbol& s) {
    TilingRecord r;
    DelaneySymbol canon = canonical_form(s);
    r.symbol = serialize(canon);
    r.complexity = s.size();
    r.geometry = geometry_name(geometry_of(s));
    r.curvature = to_string(curvature(s));
    r.euler = to_double(euler_characteristic(s));
    OrbifoldSignature sig = orbifold(s);
    r.orbifold = orbifold_name(sig);
    r.symmetry_class = symmetry_class(sig);
    r.signature = signature_string(s);
    DegreeLists deg = degree_lists(s);
    r.tile_deg = join_spaces(deg.tile_degrees);
    r.vertex_deg = join_spaces(deg.vertex_degrees);
    ClassCounts counts = class_counts(s);
    r.tiles = counts.tiles;
    r.edges = counts.edges;
    r.vertices = counts.vertices;
    r.normal = is_pseudo_convex(s);
    SymbolFlags f = flags_of(s);
    r.maximal = f.maximal;
    r.colorable = f.colorable;
    r.orientable = f.orientable;
    r.fixed_point_free = f.fixed_point_free;
    r.self_dual = f.self_dual;
    return r;
}

}  // namespace dds
