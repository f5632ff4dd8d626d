#pragma once

// Brute-force generation of geometry-minimal symbols, used as the
// independent reference for the orderly enumerator: every involution
// triple is tried, validity is checked directly, and isomorphs are
// removed by canonical-trace dedup.

#include <array>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dds/invariants.hpp"
#include "dds/rational.hpp"
#include "dds/symbol.hpp"

namespace oracle {

using Sigma = std::array<std::vector<int>, 3>;

inline void involutions(int n, const std::function<void(const std::vector<int>&)>& sink) {
    std::vector<int> map(n + 1, 0);
    std::function<void(int)> rec = [&](int d) {
        while (d <= n && map[d] != 0) ++d;
        if (d > n) {
            sink(map);
            return;
        }
        map[d] = d;
        rec(d + 1);
        map[d] = 0;
        for (int e = d + 1; e <= n; ++e) {
            if (map[e] != 0) continue;
            map[d] = e;
            map[e] = d;
            rec(d + 1);
            map[d] = 0;
            map[e] = 0;
        }
    };
    rec(1);
}

inline bool connected(int n, const Sigma& sigma) {
    std::vector<char> seen(n + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int count = 1;
    while (!stack.empty()) {
        int d = stack.back();
        stack.pop_back();
        for (int i = 0; i < 3; ++i)
            if (!seen[sigma[i][d]]) {
                seen[sigma[i][d]] = 1;
                ++count;
                stack.push_back(sigma[i][d]);
            }
    }
    return count == n;
}

inline bool orbits02_short(int n, const Sigma& sigma) {
    for (int d = 1; d <= n; ++d)
        if (sigma[0][sigma[2][sigma[0][sigma[2][d]]]] != d) return false;
    return true;
}

struct Comp {
    std::vector<int> nodes;
    bool chain = false;
    int r = 0;
};

inline std::vector<Comp> comps(int n, const Sigma& sigma, int ci, int cj) {
    std::vector<char> done(n + 1, 0);
    std::vector<Comp> out;
    for (int d0 = 1; d0 <= n; ++d0) {
        if (done[d0]) continue;
        Comp c;
        std::vector<int> stack{d0};
        done[d0] = 1;
        while (!stack.empty()) {
            int d = stack.back();
            stack.pop_back();
            c.nodes.push_back(d);
            if (sigma[ci][d] == d || sigma[cj][d] == d) c.chain = true;
            for (int col : {ci, cj})
                if (!done[sigma[col][d]]) {
                    done[sigma[col][d]] = 1;
                    stack.push_back(sigma[col][d]);
                }
        }
        int r = 0, x = d0;
        do {
            x = sigma[ci][sigma[cj][x]];
            ++r;
        } while (x != d0);
        c.r = r;
        out.push_back(c);
    }
    return out;
}

// all geometry-minimal symbols of exactly size n, as canonical traces
inline std::set<std::string> minimal_traces(int n) {
    std::set<std::string> out;
    std::vector<std::vector<int>> invs;
    involutions(n, [&](const std::vector<int>& m) { invs.push_back(m); });

    for (const auto& s0 : invs)
        for (const auto& s1 : invs)
            for (const auto& s2 : invs) {
                Sigma sigma{s0, s1, s2};
                if (!connected(n, sigma) || !orbits02_short(n, sigma)) continue;

                std::vector<Comp> all = comps(n, sigma, 0, 1);
                const std::size_t n01 = all.size();
                for (const Comp& c : comps(n, sigma, 1, 2)) all.push_back(c);

                std::vector<int> v(all.size(), 0);
                std::vector<int> weight(all.size()), vmin(all.size());
                for (std::size_t t = 0; t < all.size(); ++t) {
                    weight[t] = all[t].chain ? 1 : 2;
                    vmin[t] = std::max(1, (3 + all[t].r - 1) / all[t].r);
                }
                std::vector<dds::Rational> rest(all.size() + 1, dds::Rational(0));
                for (int t = (int)all.size() - 1; t >= 0; --t)
                    rest[t] = rest[t + 1] + dds::Rational(weight[t], vmin[t]);

                std::function<void(std::size_t, dds::Rational)> rec =
                    [&](std::size_t t, dds::Rational partial) {
                        if (t == all.size()) {
                            std::vector<int> m01(n + 1, 0), m12(n + 1, 0);
                            for (std::size_t k = 0; k < all.size(); ++k)
                                for (int d : all[k].nodes)
                                    (k < n01 ? m01 : m12)[d] = v[k] * all[k].r;
                            dds::DelaneySymbol sym(n, sigma, m01, m12);
                            if (dds::is_geometry_minimal(sym) &&
                                !dds::is_bad_orbifold(dds::orbifold(sym)))
                                out.insert(dds::canonical_trace(sym));
                            return;
                        }
                        for (int vv = vmin[t];; ++vv) {
                            if ((vv - 1) * all[t].r >= 3) {
                                dds::Rational dec = partial +
                                                    dds::Rational(weight[t], vv - 1) +
                                                    rest[t + 1] - dds::Rational(n, 2);
                                if (dec.numerator() < 0) break;
                            }
                            if (vv > 200) break;
                            v[t] = vv;
                            rec(t + 1, partial + dds::Rational(weight[t], vv));
                        }
                    };
                rec(0, dds::Rational(0));
            }
    return out;
}

}  // namespace oracle
