#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dds {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t pos, const std::string& what)
        : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + what),
          position(pos) {}
    std::size_t position;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what)
        : std::runtime_error("invalid symbol: " + what) {}
};

// A maximal subset of nodes connected by edges of two colors.  Always a
// cycle (no fixed node of either color) or a chain (at least one end
// fixed).  r is the sigma_i sigma_j orbit length of any member, v = m/r.
struct Component {
    int ci = 0, cj = 0;
    std::vector<int> nodes;  // ascending
    bool chain = false;
    int r = 0;
    int v = 0;
};

// Delaney-Dress symbol: nodes 1..n, three involutions sigma_0/1/2 and
// branching numbers m01, m12 (m02 is the constant 2 and never stored).
// Immutable after construction; the constructor enforces all structural
// invariants and throws ValidationError otherwise.
class DelaneySymbol {
public:
    DelaneySymbol(int n, std::array<std::vector<int>, 3> sigma,
                  std::vector<int> m01, std::vector<int> m12);

    int size() const { return n_; }
    // node arguments are 1-based throughout
    int sigma(int color, int node) const { return sigma_[color][node]; }
    int m01(int node) const { return m01_[node]; }
    int m12(int node) const { return m12_[node]; }
    // branching value for a color pair: (0,1)->m01, (1,2)->m12, (0,2)->2
    int m(int ci, int cj, int node) const;

    bool operator==(const DelaneySymbol& other) const = default;

private:
    int n_;
    std::array<std::vector<int>, 3> sigma_;  // index 0 unused
    std::vector<int> m01_, m12_;
};

DelaneySymbol parse_symbol(const std::string& text);
std::string serialize(const DelaneySymbol& s);

std::vector<Component> components(const DelaneySymbol& s, int ci, int cj);
const Component& component_of(const std::vector<Component>& comps, int node);

inline int complexity(const DelaneySymbol& s) { return s.size(); }

// Ordered traversal from a start node: breadth-first, edges visited in
// color order, nodes renumbered in discovery order.  Returns the 3n
// neighbor numbers (sigma_0, sigma_1, sigma_2 per node, in discovery
// order).  new_of, when non-null, receives the renumbering (old -> new).
std::vector<int> traversal_sequence(const DelaneySymbol& s, int start,
                                    std::vector<int>* new_of = nullptr);

// Graph part of the canonical trace, e.g. "1,1,2; 2,3,1; ...".
std::string canonical_graph_trace(const DelaneySymbol& s);
// Full trace: graph part, then the renumbered m01 and m12 lists.
std::string canonical_trace(const DelaneySymbol& s);
// The symbol renumbered into canonical-trace order.
DelaneySymbol canonical_form(const DelaneySymbol& s);

bool is_isomorphic(const DelaneySymbol& a, const DelaneySymbol& b);

// Swap sigma_0 <-> sigma_2 and m01 <-> m12.
DelaneySymbol dual(const DelaneySymbol& s);

// Quotient by the coarsest partition compatible with the sigma maps that
// refines the partition by (m01, m12); idempotent.
DelaneySymbol minimal_image(const DelaneySymbol& s);

// perm maps old node -> new node (perm[0] unused); used by tests and by
// canonical_form.
DelaneySymbol relabel(const DelaneySymbol& s, const std::vector<int>& perm);

std::string format_graph_trace(const std::vector<int>& seq);

}  // namespace dds
