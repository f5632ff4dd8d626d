#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dds/geometry.hpp"
#include "dds/symbol.hpp"

namespace dds {

class LayoutError : public std::runtime_error {
public:
    explicit LayoutError(const std::string& what) : std::runtime_error(what) {}
};

struct BoundarySide {
    int node = 0, color = 0;
};

struct LayoutVertexInfo {
    int color = 0;       // which triangle vertex (0-, 1- or 2-vertex) this is
    int ci = 0, cj = 0;  // colors of the represented component
    int comp = 0;        // index into components(symbol, ci, cj)
    int split = 0;       // s(Z) of that component
    bool on_boundary = false;
    double angle = 0;    // assigned interior angle (radians); 2*pi if interior
};

// Chamber triangles of a fundamental domain glued into a disc, with
// coordinates in the symbol's geometry.  Chamber d's triangle vertices
// are positions[chamber[d][k]] for the k-vertex.
struct DomainLayout {
    GeometryKind geometry = GeometryKind::Euclidean;
    int n = 0;
    std::vector<std::array<int, 3>> chamber;     // 1-based by node; [0] unused
    std::vector<Vec3> positions;                 // per disc vertex
    std::vector<LayoutVertexInfo> vertex_info;   // per disc vertex
    std::vector<BoundarySide> boundary;          // cyclic order
    double diameter = 0;                         // max intrinsic vertex distance
    double residual = 0;                         // worst side-pairing endpoint mismatch

    Vec3 vertex_of(int node, int k) const { return positions[chamber[node][k]]; }
    std::array<Vec3, 3> triangle_of(int node) const {
        return {vertex_of(node, 0), vertex_of(node, 1), vertex_of(node, 2)};
    }
    Vec3 incenter_of(int node) const;
    // centroid of all chamber incenters, the development reference point
    Vec3 reference_point() const;
};

DomainLayout layout_fundamental_domain(const DelaneySymbol& s);

struct Generator {
    int node = 0, color = 0;  // the boundary side this pairs
    Isometry iso;             // neighbor of instance (node, g) across color is
                              // (sigma_color(node), g * iso)
};

// One generator per boundary side; mirror sides yield reflections.
// Throws LayoutError if any endpoint mismatch exceeds 1e-3 * diameter.
std::vector<Generator> compute_generators(const DelaneySymbol& s, const DomainLayout& layout);

// Transition isometry for crossing chamber `node`'s side of the given
// color: identity for sides glued inside the disc, the side's generator
// otherwise.
class TransitionTable {
public:
    TransitionTable(const DelaneySymbol& s, const DomainLayout& layout);
    bool is_boundary(int node, int color) const { return boundary_[idx(node, color)]; }
    const Isometry& transition(int node, int color) const { return iso_[idx(node, color)]; }

private:
    std::size_t idx(int node, int color) const { return (node - 1) * 3 + color; }
    std::vector<char> boundary_;
    std::vector<Isometry> iso_;
};

}  // namespace dds
