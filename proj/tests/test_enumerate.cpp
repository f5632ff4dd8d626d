#include <doctest.h>

#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "dds/enumerate.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using dds::DelaneySymbol;

namespace {

std::vector<DelaneySymbol> run(int max, int jobs = 1,
                               std::optional<dds::GeometryKind> geom = std::nullopt) {
    dds::EnumerateOptions opt;
    opt.max_complexity = max;
    opt.jobs = jobs;
    opt.geometry = geom;
    std::vector<DelaneySymbol> out;
    dds::enumerate_symbols(opt, [&](const DelaneySymbol& s) { out.push_back(s); });
    return out;
}

std::set<std::pair<int, int>> pq_set(const std::vector<DelaneySymbol>& symbols) {
    std::set<std::pair<int, int>> out;
    for (const auto& s : symbols)
        if (s.size() == 1) out.insert({s.m01(1), s.m12(1)});
    return out;
}

}  // namespace

TEST_CASE("one graph of size 1") {
    int count = 0;
    dds::enumerate_graphs(1, [&](const dds::DelaneyGraph& g) {
        ++count;
        CHECK(g.trace == std::vector<int>{1, 1, 1});
    });
    CHECK(count == 1);
}

TEST_CASE("size-2 graphs match a brute-force involution census") {
    // brute force: all involution triples on two nodes, connected, deduped
    std::set<std::string> reference;
    std::vector<std::vector<int>> invs;
    oracle::involutions(2, [&](const std::vector<int>& m) { invs.push_back(m); });
    for (const auto& a : invs)
        for (const auto& b : invs)
            for (const auto& c : invs) {
                oracle::Sigma sigma{a, b, c};
                if (!oracle::connected(2, sigma) || !oracle::orbits02_short(2, sigma)) continue;
                // trace of the graph alone: use constant m to make it a symbol
                std::vector<int> m01(3, 0), m12(3, 0);
                for (int d = 1; d <= 2; ++d) m01[d] = m12[d] = 12;
                dds::DelaneySymbol sym(2, sigma, m01, m12);
                reference.insert(dds::canonical_graph_trace(sym));
            }
    std::set<std::string> produced;
    dds::enumerate_graphs(2, [&](const dds::DelaneyGraph& g) {
        produced.insert(dds::format_graph_trace(g.trace));
    });
    CHECK(produced == reference);
}

TEST_CASE("the twelve size-1 symbols") {
    std::vector<DelaneySymbol> out = run(1);
    REQUIRE(out.size() == 12);
    std::set<std::pair<int, int>> sph, euc, hyp;
    for (const auto& s : out) {
        switch (dds::geometry_of(s)) {
            case dds::GeometryKind::Spherical: sph.insert({s.m01(1), s.m12(1)}); break;
            case dds::GeometryKind::Euclidean: euc.insert({s.m01(1), s.m12(1)}); break;
            case dds::GeometryKind::Hyperbolic: hyp.insert({s.m01(1), s.m12(1)}); break;
        }
    }
    CHECK(sph == std::set<std::pair<int, int>>{{3, 3}, {3, 4}, {4, 3}, {3, 5}, {5, 3}});
    CHECK(euc == std::set<std::pair<int, int>>{{4, 4}, {3, 6}, {6, 3}});
    CHECK(hyp == std::set<std::pair<int, int>>{{4, 5}, {5, 4}, {3, 7}, {7, 3}});
}

TEST_CASE("hyperbolic filter on size 1") {
    std::vector<DelaneySymbol> out = run(1, 1, dds::GeometryKind::Hyperbolic);
    CHECK(pq_set(out) == std::set<std::pair<int, int>>{{4, 5}, {5, 4}, {3, 7}, {7, 3}});
}

TEST_CASE("complexity-2 census") {
    std::vector<dds::CensusRow> rows = dds::census(2);
    CHECK(rows[1].total() == 12);
    CHECK(rows[2].spherical == 13);
    CHECK(rows[2].euclidean == 15);
    CHECK(rows[2].hyperbolic == 22);
    CHECK(rows[2].total() == 50);
}

TEST_CASE("orderly output never repeats a trace and arrives sorted by size") {
    std::vector<DelaneySymbol> out = run(5);
    std::set<std::string> traces;
    int last_size = 0;
    for (const auto& s : out) {
        CHECK(s.size() >= last_size);
        last_size = s.size();
        std::string t = dds::canonical_trace(s);
        CHECK(traces.insert(t).second);
    }
}

TEST_CASE("every emitted symbol is valid, minimal and canonically numbered") {
    std::vector<DelaneySymbol> out = run(4);
    for (const auto& s : out) {
        CHECK(dds::is_geometry_minimal(s));
        CHECK(dds::serialize(dds::canonical_form(s)) == dds::serialize(s));
    }
}

TEST_CASE("oracle equivalence through complexity 4") {
    std::vector<DelaneySymbol> out = run(4);
    std::map<int, std::set<std::string>> by_size;
    for (const auto& s : out) by_size[s.size()].insert(dds::canonical_trace(s));
    for (int n = 1; n <= 4; ++n) {
        std::set<std::string> reference = oracle::minimal_traces(n);
        CHECK(by_size[n] == reference);
    }
}

TEST_CASE("parallel enumeration is deterministic") {
    std::vector<DelaneySymbol> a = run(5, 1);
    std::vector<DelaneySymbol> b = run(5, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
}
