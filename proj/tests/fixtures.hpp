#pragma once

#include <random>
#include <string>
#include <vector>

#include "dds/symbol.hpp"

namespace fixtures {

// smallest symbol: one node, all loops
inline const char* kSquare = "<1:1,1,1:4,4>";

inline std::string size1(int p, int q) {
    return "<1:1,1,1:" + std::to_string(p) + "," + std::to_string(q) + ">";
}

// the eight-chamber euclidean example with orbifold 3*3
inline const char* kS8 =
    "<8:1 2 4 3 7 6 5 8,1 3 2 6 5 4 8 7,2 1 5 7 3 8 4 6:3 4 4 4 3 4 3 3,4 4 4 6 4 6 6 6>";

// two-node cover of the square tiling, collapses under minimal_image
inline const char* kDouble44 = "<2:2 1,2 1,2 1:4 4,4 4>";

inline dds::DelaneySymbol random_relabel(const dds::DelaneySymbol& s, std::mt19937& rng) {
    std::vector<int> perm(s.size() + 1);
    for (int d = 1; d <= s.size(); ++d) perm[d] = d;
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    return dds::relabel(s, perm);
}

}  // namespace fixtures
