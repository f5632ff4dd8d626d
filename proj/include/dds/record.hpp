#pragma once

#include <string>
#include <vector>

#include "dds/invariants.hpp"
#include "dds/symbol.hpp"

namespace dds {

// One database row; columns in schema order.
struct TilingRecord {
    long long id = 0;
    std::string symbol;        // canonical text encoding
    int complexity = 0;
    std::string geometry;      // "Spherical" | "Euclidean" | "Hyperbolic"
    std::string curvature;     // exact rational "p/q"
    double euler = 0;          // orbifold Euler characteristic
    std::string orbifold;
    std::string symmetry_class;
    std::string signature;
    std::string tile_deg;      // ascending, space separated
    std::string vertex_deg;
    int tiles = 0, edges = 0, vertices = 0;
    bool normal = false;
    bool maximal = false;
    bool colorable = false;
    bool orientable = false;
    bool fixed_point_free = false;
    bool self_dual = false;

    bool operator==(const TilingRecord&) const = default;
};

// Column names in schema order.
const std::vector<std::string>& record_columns();

// Compute all invariants (including the corona normality test) for one
// symbol.  The id is assigned by the caller.
TilingRecord make_record(const DelaneySymbol& s);

std::string format_real(double v);

}  // namespace dds
