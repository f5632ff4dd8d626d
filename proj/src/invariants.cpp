#include "dds/invariants.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dds {

std::string geometry_name(GeometryKind g) {
    switch (g) {
        case GeometryKind::Spherical: return "Spherical";
        case GeometryKind::Euclidean: return "Euclidean";
        case GeometryKind::Hyperbolic: return "Hyperbolic";
    }
    throw std::logic_error("internal: bad geometry tag");
}

Rational curvature(const DelaneySymbol& s) {
    Rational k(0);
    for (int d = 1; d <= s.size(); ++d)
        k += Rational(1, s.m01(d)) + Rational(1, s.m12(d)) - Rational(1, 2);
    return k;
}

GeometryKind geometry_of(const DelaneySymbol& s) {
    Rational k = curvature(s);
    if (k.numerator() > 0) return GeometryKind::Spherical;
    if (k.numerator() < 0) return GeometryKind::Hyperbolic;
    return GeometryKind::Euclidean;
}

namespace {

// Mirror slot: a pair (node, color) with sigma_color(node) == node.
struct Slot {
    int node = 0, color = 0;
    auto operator<=>(const Slot&) const = default;
};

// A chain joins its two end slots; walking the boundary alternates
// slot -> chain -> slot, leaving each slot by the chain whose color pair
// differs from the arrival pair in the third color.
struct ChainInfo {
    Slot ends[2];
    int v = 0;
};

// True iff the graph restricted to non-loop sigma edges is bipartite,
// i.e. the chamber triangles of the quotient surface can be coherently
// oriented (mirror sides are boundary and impose no constraint).
bool surface_orientable(const DelaneySymbol& s) {
    const int n = s.size();
    std::vector<int> color(n + 1, 0);
    for (int d0 = 1; d0 <= n; ++d0) {
        if (color[d0]) continue;
        color[d0] = 1;
        std::vector<int> stack{d0};
        while (!stack.empty()) {
            int d = stack.back();
            stack.pop_back();
            for (int i = 0; i < 3; ++i) {
                int e = s.sigma(i, d);
                if (e == d) continue;
                if (color[e] == 0) {
                    color[e] = -color[d];
                    stack.push_back(e);
                } else if (color[e] == color[d]) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

bool is_orientable(const DelaneySymbol& s) {
    const int n = s.size();
    std::vector<int> color(n + 1, 0);
    color[1] = 1;
    std::vector<int> stack{1};
    while (!stack.empty()) {
        int d = stack.back();
        stack.pop_back();
        for (int i = 0; i < 3; ++i) {
            int e = s.sigma(i, d);
            if (e == d) return false;  // a mirror reverses orientation
            if (color[e] == 0) {
                color[e] = -color[d];
                stack.push_back(e);
            } else if (color[e] == color[d]) {
                return false;
            }
        }
    }
    return true;
}

OrbifoldSignature orbifold(const DelaneySymbol& s) {
    OrbifoldSignature sig;

    std::map<std::pair<int, int>, std::vector<Component>> comps;
    for (auto [ci, cj] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}})
        comps[{ci, cj}] = components(s, ci, cj);

    // cones: cycle components of order >= 2; chains contribute corners via
    // the boundary walk below
    std::map<Slot, std::vector<const ChainInfo*>> at_slot;
    std::vector<ChainInfo> chains;
    chains.reserve(s.size() * 3);
    for (auto& [pair, list] : comps) {
        for (const Component& c : list) {
            if (!c.chain) {
                if (c.v >= 2) sig.cones.push_back(c.v);
                continue;
            }
            ChainInfo info;
            info.v = c.v;
            int found = 0;
            for (int d : c.nodes)
                for (int col : {pair.first, pair.second})
                    if (s.sigma(col, d) == d) {
                        if (found >= 2) throw std::logic_error("internal: chain with >2 ends");
                        info.ends[found++] = Slot{d, col};
                    }
            if (found != 2) throw std::logic_error("internal: chain without 2 ends");
            chains.push_back(info);
        }
    }
    for (const ChainInfo& c : chains) {
        at_slot[c.ends[0]].push_back(&c);
        at_slot[c.ends[1]].push_back(&c);
    }
    for (auto& [slot, list] : at_slot)
        if (list.size() != 2) throw std::logic_error("internal: slot not on 2 chains");

    // Trace boundary circuits.  Each slot lies on exactly two chains (one
    // per remaining color); the circuit enters a slot by one and leaves by
    // the other.  Chains are marked walked in both directions so every
    // circuit is produced once.
    std::set<const ChainInfo*> walked;
    for (auto& [start, list] : at_slot) {
        for (const ChainInfo* first : list) {
            if (walked.count(first)) continue;
            std::vector<int> corners;
            Slot cur = start;
            const ChainInfo* chain = first;
            do {
                walked.insert(chain);
                if (chain->v >= 2) corners.push_back(chain->v);
                Slot far = (chain->ends[0] == cur) ? chain->ends[1] : chain->ends[0];
                const auto& options = at_slot[far];
                const ChainInfo* next = (options[0] == chain) ? options[1] : options[0];
                cur = far;
                chain = next;
            } while (!(cur == start && chain == first));
            sig.boundaries.push_back(std::move(corners));
        }
    }

    // handles or crosscaps from the cost identity
    Rational chi = curvature(s) / 2;
    Rational base(2);
    base -= Rational((int)sig.boundaries.size());
    for (int a : sig.cones) base -= Rational(1) - Rational(1, a);
    for (const auto& b : sig.boundaries)
        for (int a : b) base -= (Rational(1) - Rational(1, a)) / 2;
    Rational excess = base - chi;  // = 2h or k
    if (surface_orientable(s)) {
        if (excess.denominator() != 1 || excess.numerator() < 0 || excess.numerator() % 2 != 0)
            throw std::logic_error("internal: cost identity gives no integral handle count for " +
                                   serialize(s));
        sig.handles = (int)(excess.numerator() / 2);
    } else {
        if (excess.denominator() != 1 || excess.numerator() < 1)
            throw std::logic_error("internal: cost identity gives no crosscap count for " +
                                   serialize(s));
        sig.crosscaps = (int)excess.numerator();
    }
    return sig;
}

Rational euler_characteristic(const DelaneySymbol& s) { return curvature(s) / 2; }

ClassCounts class_counts(const DelaneySymbol& s) {
    ClassCounts c;
    c.tiles = (int)components(s, 0, 1).size();
    c.edges = (int)components(s, 0, 2).size();
    c.vertices = (int)components(s, 1, 2).size();
    return c;
}

bool is_geometry_minimal(const DelaneySymbol& s) {
    Rational k = curvature(s);
    if (k.numerator() == 0) return true;

    auto c01 = components(s, 0, 1);
    auto c12 = components(s, 1, 2);

    if (k.numerator() > 0) {
        bool small = true;
        for (const auto& list : {c01, c12})
            for (const Component& c : list)
                if (c.v > 4) small = false;
        if (small) return true;
        OrbifoldSignature sig = orbifold(s);
        if (is_bad_orbifold(sig)) return false;  // has no name, so not 532 or *532
        std::string name = orbifold_name(sig);
        return name == "532" || name == "*532";
    }

    // hyperbolic: no single branching reduction may stay hyperbolic
    for (const auto& list : {c01, c12}) {
        for (const Component& c : list) {
            if (c.v < 2) continue;
            if ((c.v - 1) * c.r < 3) continue;  // degree would drop below 3
            int weight = c.chain ? 1 : 2;       // |C| = r for chains, 2r for cycles
            Rational reduced = k - Rational(weight, c.v) + Rational(weight, c.v - 1);
            if (reduced.numerator() < 0) return false;
        }
    }
    return true;
}

SymbolFlags flags_of(const DelaneySymbol& s) {
    SymbolFlags f;
    f.maximal = minimal_image(s).size() == s.size();

    auto c01 = components(s, 0, 1);
    std::vector<int> tile_class(s.size() + 1, 0);
    for (std::size_t k = 0; k < c01.size(); ++k)
        for (int d : c01[k].nodes) tile_class[d] = (int)k;
    f.colorable = true;
    for (int d = 1; d <= s.size(); ++d)
        if (tile_class[d] == tile_class[s.sigma(2, d)]) f.colorable = false;

    f.orientable = is_orientable(s);

    f.fixed_point_free = true;
    for (int d = 1; d <= s.size(); ++d)
        for (int i = 0; i < 3; ++i)
            if (s.sigma(i, d) == d) f.fixed_point_free = false;
    if (f.fixed_point_free)
        for (auto [ci, cj] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}})
            for (const Component& c : components(s, ci, cj))
                if (c.v != 1) f.fixed_point_free = false;

    f.self_dual = is_isomorphic(s, dual(s));
    return f;
}

DegreeLists degree_lists(const DelaneySymbol& s) {
    DegreeLists out;
    for (const Component& c : components(s, 0, 1)) out.tile_degrees.push_back(s.m01(c.nodes[0]));
    for (const Component& c : components(s, 1, 2)) out.vertex_degrees.push_back(s.m12(c.nodes[0]));
    std::sort(out.tile_degrees.begin(), out.tile_degrees.end());
    std::sort(out.vertex_degrees.begin(), out.vertex_degrees.end());
    return out;
}

std::vector<int> tile_corner_cycle(const DelaneySymbol& s, int node) {
    // successive corners of the tile are reached by sigma_1 then sigma_0;
    // the orbit pattern repeats v times around the full tile
    const int m = s.m01(node);
    std::vector<int> cycle;
    cycle.reserve(m);
    int d = node;
    for (int k = 0; k < m; ++k) {
        cycle.push_back(s.m12(d));
        d = s.sigma(0, s.sigma(1, d));
    }
    return cycle;
}

namespace {

std::vector<int> min_cycle_rep(const std::vector<int>& cycle) {
    std::vector<int> best = cycle;
    for (const std::vector<int>& base : {cycle, std::vector<int>(cycle.rbegin(), cycle.rend())}) {
        std::vector<int> cur = base;
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            if (cur < best) best = cur;
            std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        }
    }
    return best;
}

}  // namespace

std::string signature_string(const DelaneySymbol& s) {
    std::vector<std::string> parts;
    for (const Component& c : components(s, 0, 1)) {
        std::vector<int> cycle = min_cycle_rep(tile_corner_cycle(s, c.nodes[0]));
        std::ostringstream out;
        out << '(';
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            if (k) out << ' ';
            out << cycle[k];
        }
        out << ')';
        parts.push_back(out.str());
    }
    std::sort(parts.begin(), parts.end());
    std::string all;
    for (const auto& p : parts) all += p;
    return all;
}

}  // namespace dds
