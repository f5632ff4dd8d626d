#include "dds/orbifold.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dds {

bool is_bad_orbifold(const OrbifoldSignature& o) {
    if (o.handles > 0 || o.crosscaps > 0) return false;
    if (o.boundaries.empty()) {
        if (o.cones.size() == 1) return true;
        if (o.cones.size() == 2 && o.cones[0] != o.cones[1]) return true;
        return false;
    }
    if (o.boundaries.size() == 1 && o.cones.empty()) {
        const auto& b = o.boundaries.front();
        if (b.size() == 1) return true;
        if (b.size() == 2 && b[0] != b[1]) return true;
    }
    return false;
}

Rational orbifold_cost(const OrbifoldSignature& o) {
    Rational chi(2);
    chi -= Rational(2 * o.handles + o.crosscaps + (int)o.boundaries.size());
    for (int a : o.cones) chi -= Rational(1) - Rational(1, a);
    for (const auto& b : o.boundaries)
        for (int a : b) chi -= (Rational(1) - Rational(1, a)) / 2;
    return chi;
}

namespace {

// Largest rotation of a cyclic list (Conway names list high orders first).
std::vector<int> best_rotation(const std::vector<int>& cycle) {
    std::vector<int> best = cycle;
    std::vector<int> cur = cycle;
    for (std::size_t k = 1; k < cycle.size(); ++k) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur > best) best = cur;
    }
    return best;
}

std::string render_orders(const std::vector<int>& orders) {
    std::string out;
    for (int a : orders) {
        if (a >= 10)
            out += "(" + std::to_string(a) + ")";
        else
            out += std::to_string(a);
    }
    return out;
}

}  // namespace

std::string orbifold_name(const OrbifoldSignature& o) {
    if (is_bad_orbifold(o))
        throw std::invalid_argument("bad orbifold has no symmetry group");
    if (o.trivial()) return "1";

    int cornered = 0;
    for (const auto& b : o.boundaries)
        if (!b.empty()) ++cornered;
    // Reversing one boundary's corner cycle is only a homeomorphism when no
    // other cornered boundary pins the orientation, or when the surface is
    // non-orientable anyway.
    bool flip_each = cornered <= 1 || o.crosscaps > 0;

    std::vector<std::vector<int>> named;
    if (flip_each) {
        for (const auto& b : o.boundaries) {
            std::vector<int> rev(b.rbegin(), b.rend());
            named.push_back(std::max(best_rotation(b), best_rotation(rev)));
        }
        std::sort(named.begin(), named.end(), std::greater<>());
    } else {
        // the whole surface may still be mirrored, flipping all cycles at once
        std::vector<std::vector<int>> fwd, rev;
        for (const auto& b : o.boundaries) {
            fwd.push_back(best_rotation(b));
            std::vector<int> r(b.rbegin(), b.rend());
            rev.push_back(best_rotation(r));
        }
        std::sort(fwd.begin(), fwd.end(), std::greater<>());
        std::sort(rev.begin(), rev.end(), std::greater<>());
        named = std::max(fwd, rev);
    }

    std::vector<int> cones = o.cones;
    std::sort(cones.begin(), cones.end(), std::greater<>());

    std::string out;
    for (int h = 0; h < o.handles; ++h) out += "o";
    out += render_orders(cones);
    for (const auto& b : named) out += "*" + render_orders(b);
    for (int k = 0; k < o.crosscaps; ++k) out += "x";
    return out;
}

std::string symmetry_class(const OrbifoldSignature& o) {
    const bool cones = !o.cones.empty();
    const int b = (int)o.boundaries.size();
    int cornered = 0;
    for (const auto& bd : o.boundaries)
        if (!bd.empty()) ++cornered;

    if (o.trivial()) return "Sphere";
    if (o.crosscaps > 0) {
        if (b > 0) return "Möbius";
        if (cones) return "Projective";
        return "Klein";
    }
    if (o.handles > 0 && !cones && b == 0) return "Torus";
    if (b >= 2 && !cones && cornered <= 1) return "Annular";
    if (b > 0 && cones) return "Hat";
    if (b > 0) return "Coxeter";
    return "Stellate";
}

}  // namespace dds
