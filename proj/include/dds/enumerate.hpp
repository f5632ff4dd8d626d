#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dds/invariants.hpp"
#include "dds/symbol.hpp"

namespace dds {

// A Delaney-Dress graph in canonical numbering: the involutions without
// branching numbers.  trace is the graph's own traversal sequence from
// node 1, which equals its canonical sequence (the orderly property).
struct DelaneyGraph {
    int n = 0;
    std::array<std::vector<int>, 3> sigma;
    std::vector<int> trace;
};

// Emits one representative per isomorphism class of connected graphs with
// three involutive color classes and all sigma_0 sigma_2 orbits of length
// <= 2, of exactly the given size, in lexicographic trace order.
void enumerate_graphs(int size, const std::function<void(const DelaneyGraph&)>& emit);

// All geometry-minimal symbols over a fixed graph, pairwise
// non-isomorphic, in canonical (m01 list, m12 list) order.
void assign_branching(const DelaneyGraph& g,
                      const std::function<void(const DelaneySymbol&)>& emit);

struct EnumerateOptions {
    int max_complexity = 1;
    std::optional<GeometryKind> geometry;
    int jobs = 1;
    // called on stderr-style progress sinks; optional
    std::function<void(const std::string&)> progress;
};

// Composes the two stages over sizes 1..max_complexity and streams symbols
// in (size, canonical trace) order, independent of the job count.
void enumerate_symbols(const EnumerateOptions& opt,
                       const std::function<void(const DelaneySymbol&)>& emit);

// Per-complexity (spherical, euclidean, hyperbolic) counts, convenience
// over enumerate_symbols.
struct CensusRow {
    long long spherical = 0, euclidean = 0, hyperbolic = 0;
    long long total() const { return spherical + euclidean + hyperbolic; }
    bool operator==(const CensusRow&) const = default;
};
std::vector<CensusRow> census(int max_complexity, int jobs = 1);

}  // namespace dds
