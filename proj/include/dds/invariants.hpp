#pragma once

#include <string>
#include <vector>

#include "dds/orbifold.hpp"
#include "dds/rational.hpp"
#include "dds/symbol.hpp"

namespace dds {

enum class GeometryKind { Spherical, Euclidean, Hyperbolic };

std::string geometry_name(GeometryKind g);

// K = sum over nodes of (1/m01 + 1/m12 - 1/2), exact.
Rational curvature(const DelaneySymbol& s);

GeometryKind geometry_of(const DelaneySymbol& s);

// Derive the orbifold signature: cones and corners from the components,
// boundary circuits from the mirror walk, handles or crosscaps from the
// cost identity.  Throws std::logic_error if the identity cannot be
// satisfied with non-negative integers (an internal inconsistency).
// A structurally valid symbol may still produce a bad orbifold (such
// symbols encode no tiling and are excluded from enumeration); use
// is_bad_orbifold to detect them.
OrbifoldSignature orbifold(const DelaneySymbol& s);

// Orbifold Euler characteristic, = curvature / 2.
Rational euler_characteristic(const DelaneySymbol& s);

struct ClassCounts {
    int tiles = 0, edges = 0, vertices = 0;
    bool operator==(const ClassCounts&) const = default;
};
ClassCounts class_counts(const DelaneySymbol& s);

bool is_geometry_minimal(const DelaneySymbol& s);

struct SymbolFlags {
    bool maximal = false;
    bool colorable = false;
    bool orientable = false;
    bool fixed_point_free = false;
    bool self_dual = false;
    bool operator==(const SymbolFlags&) const = default;
};
SymbolFlags flags_of(const DelaneySymbol& s);

// Two-colorability with every sigma_i swapping the classes; loops fail.
bool is_orientable(const DelaneySymbol& s);

struct DegreeLists {
    std::vector<int> tile_degrees;    // ascending
    std::vector<int> vertex_degrees;  // ascending
    bool operator==(const DegreeLists&) const = default;
};
DegreeLists degree_lists(const DelaneySymbol& s);

// Corner-degree cycle of one tile class, in tile order (length m01).
std::vector<int> tile_corner_cycle(const DelaneySymbol& s, int node);

// Per tile class, the canonicalized corner-degree cycle "(d1 d2 ...)",
// concatenated in ascending lexicographic order.
std::string signature_string(const DelaneySymbol& s);

// Corona-based normality test; declared here, implemented on top of the
// geometry module.  tolerance <= 0 picks the default.
bool is_pseudo_convex(const DelaneySymbol& s, double tolerance = 0.0);

}  // namespace dds
