#pragma once

#include <string>
#include <vector>

#include "dds/rational.hpp"

namespace dds {

// Structured Conway signature of a two-dimensional orbifold: h handles,
// cone orders, boundary components with cyclic corner lists, k crosscaps.
// Handles and crosscaps never coexist (a handle converts to two crosscaps
// on a non-orientable surface).
struct OrbifoldSignature {
    int handles = 0;
    std::vector<int> cones;                       // orders >= 2, unordered
    std::vector<std::vector<int>> boundaries;     // cyclic corner lists (orders >= 2)
    int crosscaps = 0;

    bool trivial() const {
        return handles == 0 && crosscaps == 0 && cones.empty() && boundaries.empty();
    }
    int corner_count() const {
        int c = 0;
        for (const auto& b : boundaries) c += (int)b.size();
        return c;
    }
};

// Teardrops and unequal spindles (p, pq, *p, *pq with p != q) are realized
// by no symmetry group.
bool is_bad_orbifold(const OrbifoldSignature& o);

// chi = 2 - 2h - k - b - sum(1 - 1/A) - 1/2 sum(1 - 1/a)
Rational orbifold_cost(const OrbifoldSignature& o);

// Conway name: "o"*h, cone orders descending, "*" + corners per boundary,
// "x"*k; "1" for the trivial signature.  Corner cycles are canonicalized
// over rotation, and over reversal exactly when the flip is a
// homeomorphism of the named orbifold.  Orders >= 10 are parenthesized.
std::string orbifold_name(const OrbifoldSignature& o);

// Coarse taxonomy by feature pattern; see README for the decision table.
std::string symmetry_class(const OrbifoldSignature& o);

}  // namespace dds
