#include "dds/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <mutex>
#include <sstream>
#include <thread>

#include "dds/rational.hpp"

namespace dds {

namespace {

// ---------------------------------------------------------------------
// Stage 1: orderly generation of Delaney-Dress graphs.
//
// A graph is represented by its ordered-traversal sequence: for nodes in
// discovery order, the discovery numbers of the sigma_0/1/2 neighbors.
// The search fills the 3n entries in order, trying candidates in
// ascending order, so completed graphs appear in lexicographic trace
// order.  A graph is emitted only if its own numbering is the
// lexicographically smallest traversal over all start nodes, so each
// isomorphism class appears exactly once and no duplicate bookkeeping is
// needed.
// ---------------------------------------------------------------------

class GraphSearch {
public:
    GraphSearch(int n, std::function<void(const DelaneyGraph&)> emit)
        : n_(n), emit_(std::move(emit)) {
        for (auto& s : sigma_) s.assign(n_ + 1, 0);
        seq_.reserve(3 * n_);
    }

    void run() { step(0); }

    // Enumerate valid partial sequences of the given length (the tops of
    // the search tree, used as parallel work packages).
    void prefixes(int depth, const std::function<void(const std::vector<int>&)>& sink) {
        cutoff_ = depth;
        sink_ = &sink;
        step(0);
        cutoff_ = -1;
        sink_ = nullptr;
    }

    // Resume the search along a prefix produced by prefixes().
    void run_from(const std::vector<int>& script) {
        script_ = &script;
        step(0);
        script_ = nullptr;
    }

private:
    void step(int pos) {
        if (pos == cutoff_) {
            (*sink_)(seq_);
            return;
        }
        if (pos == 3 * n_) {
            complete();
            return;
        }
        const int d = pos / 3 + 1;
        const int i = pos % 3;
        if (d > maxnum_) return;                       // ran out of nodes before size n
        if (n_ - maxnum_ > 3 * n_ - pos) return;       // cannot discover enough nodes

        const int forced = sigma_[i][d];
        if (forced != 0) {
            seq_.push_back(forced);
            if (i != 2 || !prunable(d)) step(pos + 1);
            seq_.pop_back();
            return;
        }
        const int hi = std::min(maxnum_ + 1, n_);
        for (int e = 1; e <= hi; ++e) {
            if (script_ && pos < (int)script_->size() && e != (*script_)[pos]) continue;
            if (e <= maxnum_ && sigma_[i][e] != 0) continue;  // partner slot taken
            const bool grew = (e == maxnum_ + 1);
            sigma_[i][d] = e;
            if (e != d) sigma_[i][e] = d;
            if (grew) ++maxnum_;
            bool ok = (i == 1) || commuting02();
            if (ok) {
                seq_.push_back(e);
                if (i != 2 || !prunable(d)) step(pos + 1);
                seq_.pop_back();
            }
            if (grew) --maxnum_;
            sigma_[i][d] = 0;
            if (e != d) sigma_[i][e] = 0;
        }
    }

    // sigma_0 sigma_2 must have orbits of length <= 2, i.e. the two
    // involutions commute wherever the composite is defined.
    bool commuting02() const {
        for (int x = 1; x <= maxnum_; ++x) {
            int a = sigma_[2][x];
            if (!a) continue;
            int y = sigma_[0][a];
            if (!y) continue;
            int b = sigma_[2][y];
            if (!b) continue;
            int z = sigma_[0][b];
            if (z && z != x) return false;
        }
        return true;
    }

    // -1: the traversal from s is smaller than the current prefix (prune);
    // 0/+1: equal-so-far or larger.
    int compare_from(int s) const {
        thread_local std::vector<int> num, order;
        num.assign(n_ + 1, 0);
        order.assign(n_ + 1, 0);
        num[s] = 1;
        order[1] = s;
        int mx = 1;
        std::size_t idx = 0;
        for (int k = 1; k <= mx && idx < seq_.size(); ++k) {
            const int orig = order[k];
            for (int i = 0; i < 3 && idx < seq_.size(); ++i) {
                const int t = sigma_[i][orig];
                if (t == 0) return 0;  // undetermined tail, cannot decide
                int v = num[t];
                if (v == 0) {
                    v = ++mx;
                    num[t] = v;
                    order[mx] = t;
                }
                if (v != seq_[idx]) return v < seq_[idx] ? -1 : 1;
                ++idx;
            }
        }
        return 0;
    }

    bool prunable(int upto_node) const {
        (void)upto_node;
        for (int s = 2; s <= maxnum_; ++s)
            if (compare_from(s) < 0) return true;
        return false;
    }

    void complete() {
        for (int s = 2; s <= n_; ++s)
            if (compare_from(s) < 0) return;
        DelaneyGraph g;
        g.n = n_;
        g.sigma = sigma_;
        g.trace = seq_;
        emit_(g);
    }

    int n_;
    std::function<void(const DelaneyGraph&)> emit_;
    std::array<std::vector<int>, 3> sigma_;
    std::vector<int> seq_;
    int maxnum_ = 1;
    int cutoff_ = -1;
    const std::function<void(const std::vector<int>&)>* sink_ = nullptr;
    const std::vector<int>* script_ = nullptr;
};

// raw component data over a graph (no m values yet)
struct RawComponent {
    std::vector<int> nodes;
    bool chain = false;
    int r = 0;
};

std::vector<RawComponent> raw_components(const DelaneyGraph& g, int ci, int cj) {
    std::vector<char> done(g.n + 1, 0);
    std::vector<RawComponent> out;
    for (int d0 = 1; d0 <= g.n; ++d0) {
        if (done[d0]) continue;
        RawComponent c;
        std::vector<int> stack{d0};
        done[d0] = 1;
        while (!stack.empty()) {
            int d = stack.back();
            stack.pop_back();
            c.nodes.push_back(d);
            if (g.sigma[ci][d] == d || g.sigma[cj][d] == d) c.chain = true;
            for (int col : {ci, cj}) {
                int e = g.sigma[col][d];
                if (!done[e]) {
                    done[e] = 1;
                    stack.push_back(e);
                }
            }
        }
        int r = 0, x = d0;
        do {
            x = g.sigma[ci][g.sigma[cj][x]];
            ++r;
        } while (x != d0);
        c.r = r;
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<int> graph_traversal(const DelaneyGraph& g, int start, std::vector<int>* new_of) {
    std::vector<int> num(g.n + 1, 0), order(g.n + 1, 0);
    num[start] = 1;
    order[1] = start;
    int mx = 1;
    std::vector<int> seq;
    seq.reserve(3 * g.n);
    for (int k = 1; k <= g.n; ++k) {
        int d = order[k];
        for (int i = 0; i < 3; ++i) {
            int e = g.sigma[i][d];
            if (num[e] == 0) {
                num[e] = ++mx;
                order[mx] = e;
            }
            seq.push_back(num[e]);
        }
    }
    if (new_of) *new_of = std::move(num);
    return seq;
}

// ---------------------------------------------------------------------
// Stage 2: branching assignment.
//
// Per component of colors (0,1) and (1,2) choose v >= 1 with v*r >= 3.
// The curvature is sum(w_C / v_C) - n/2 with w = 1 for chains and 2 for
// cycles, strictly decreasing in every v, which yields the cutoff below:
// once even the maximal possible future contribution leaves the
// v-decremented symbol hyperbolic, no larger v can be geometry minimal.
// ---------------------------------------------------------------------

class BranchingAssigner {
public:
    BranchingAssigner(const DelaneyGraph& g, std::function<void(const DelaneySymbol&)> emit)
        : g_(g), emit_(std::move(emit)) {
        for (auto& c : raw_components(g, 0, 1)) comps_.push_back({c, true});
        n01_ = comps_.size();
        for (auto& c : raw_components(g, 1, 2)) comps_.push_back({c, false});

        for (auto& [c, is01] : comps_) {
            vmin_.push_back(std::max(1, (3 + c.r - 1) / c.r));
            weight_.push_back(c.chain ? 1 : 2);
        }
        suffix_.assign(comps_.size() + 1, Rational(0));
        for (int t = (int)comps_.size() - 1; t >= 0; --t)
            suffix_[t] = suffix_[t + 1] + Rational(weight_[t], vmin_[t]);

        // relabelings that realize the canonical trace (graph automorphisms)
        for (int s = 1; s <= g_.n; ++s) {
            std::vector<int> num;
            if (graph_traversal(g_, s, &num) == g_.trace && s != 1)
                autos_.push_back(std::move(num));
        }
        v_.assign(comps_.size(), 0);
    }

    void run() { assign(0, Rational(0)); }

private:
    void assign(std::size_t t, Rational partial) {
        if (t == comps_.size()) {
            finish();
            return;
        }
        const auto& comp = comps_[t].first;
        const Rational half_n(g_.n, 2);
        for (int v = vmin_[t];; ++v) {
            if ((v - 1) * comp.r >= 3) {
                // decremented curvature upper bound over all completions
                Rational upper = partial + Rational(weight_[t], v - 1) + suffix_[t + 1] - half_n;
                if (upper.numerator() < 0) break;
            }
            if (v > 4 * g_.n + 8) break;  // unreachable; guards against logic errors
            v_[t] = v;
            assign(t + 1, partial + Rational(weight_[t], v));
        }
        v_[t] = 0;
    }

    void finish() {
        std::vector<int> m01(g_.n + 1, 0), m12(g_.n + 1, 0);
        for (std::size_t t = 0; t < comps_.size(); ++t) {
            const auto& [c, is01] = comps_[t];
            int m = v_[t] * c.r;
            for (int d : c.nodes) (is01 ? m01 : m12)[d] = m;
        }
        DelaneySymbol s(g_.n, g_.sigma, m01, m12);
        if (!is_geometry_minimal(s)) return;
        // spherical symbols can satisfy all structural conditions yet carry
        // a bad orbifold (a teardrop or unequal spindle); those encode no
        // tiling and are dropped
        if (curvature(s).numerator() > 0 && is_bad_orbifold(orbifold(s))) return;
        // keep only the smallest (m01, m12) lists over the automorphisms
        for (const auto& num : autos_) {
            bool smaller = false, decided = false;
            for (const auto* lists : {&m01, &m12}) {
                std::vector<int> mapped(g_.n + 1, 0);
                for (int d = 1; d <= g_.n; ++d) mapped[num[d]] = (*lists)[d];
                for (int k = 1; k <= g_.n; ++k) {
                    if (mapped[k] != (*lists)[k]) {
                        smaller = mapped[k] < (*lists)[k];
                        decided = true;
                        break;
                    }
                }
                if (decided) break;
            }
            if (decided && smaller) return;
        }
        emit_(s);
    }

    const DelaneyGraph& g_;
    std::function<void(const DelaneySymbol&)> emit_;
    std::vector<std::pair<RawComponent, bool>> comps_;  // (component, is 0,1)
    std::size_t n01_ = 0;
    std::vector<int> vmin_, weight_, v_;
    std::vector<Rational> suffix_;
    std::vector<std::vector<int>> autos_;
};

}  // namespace

void enumerate_graphs(int size, const std::function<void(const DelaneyGraph&)>& emit) {
    GraphSearch(size, emit).run();
}

void assign_branching(const DelaneyGraph& g,
                      const std::function<void(const DelaneySymbol&)>& emit) {
    BranchingAssigner(g, emit).run();
}

namespace {

struct Package {
    int n = 0;
    std::vector<int> prefix;
};

std::vector<Package> make_packages(int max_complexity) {
    std::vector<Package> packages;
    for (int n = 1; n <= max_complexity; ++n) {
        const int depth = std::min(6, 3 * n);
        GraphSearch search(n, nullptr);
        search.prefixes(depth, [&](const std::vector<int>& p) {
            packages.push_back({n, p});
        });
    }
    return packages;
}

void run_package(const Package& pkg, bool geometry_filtered,
                 std::optional<GeometryKind> geometry,
                 std::vector<DelaneySymbol>& out) {
    GraphSearch search(pkg.n, [&](const DelaneyGraph& g) {
        assign_branching(g, [&](const DelaneySymbol& s) {
            if (geometry_filtered && geometry_of(s) != *geometry) return;
            out.push_back(s);
        });
    });
    search.run_from(pkg.prefix);
}

}  // namespace

void enumerate_symbols(const EnumerateOptions& opt,
                       const std::function<void(const DelaneySymbol&)>& emit) {
    if (opt.max_complexity < 1) return;
    const bool filtered = opt.geometry.has_value();
    std::vector<Package> packages = make_packages(opt.max_complexity);

    const auto started = std::chrono::steady_clock::now();
    long long emitted = 0;
    std::size_t done_packages = 0;
    auto report = [&] {
        if (!opt.progress) return;
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        std::ostringstream msg;
        msg << "packages " << done_packages << "/" << packages.size()
            << ", symbols " << emitted;
        if (secs > 0.2) msg << " (" << (long long)(emitted / secs) << "/s)";
        opt.progress(msg.str());
    };

    if (opt.jobs <= 1) {
        for (const Package& pkg : packages) {
            std::vector<DelaneySymbol> out;
            run_package(pkg, filtered, opt.geometry, out);
            for (const auto& s : out) {
                emit(s);
                ++emitted;
            }
            ++done_packages;
            if (done_packages % 64 == 0) report();
        }
        report();
        return;
    }

    // parallel workers over packages, results merged back in package order
    std::vector<std::vector<DelaneySymbol>> results(packages.size());
    std::vector<char> ready(packages.size(), 0);
    std::atomic<std::size_t> next{0};
    std::mutex mtx;
    std::condition_variable cv;

    auto worker = [&] {
        for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= packages.size()) return;
            std::vector<DelaneySymbol> out;
            run_package(packages[k], filtered, opt.geometry, out);
            {
                std::lock_guard lock(mtx);
                results[k] = std::move(out);
                ready[k] = 1;
            }
            cv.notify_all();
        }
    };
    std::vector<std::thread> pool;
    const int workers = std::max(1, opt.jobs);
    pool.reserve(workers);
    for (int k = 0; k < workers; ++k) pool.emplace_back(worker);

    for (std::size_t k = 0; k < packages.size(); ++k) {
        std::unique_lock lock(mtx);
        cv.wait(lock, [&] { return ready[k] != 0; });
        std::vector<DelaneySymbol> out = std::move(results[k]);
        lock.unlock();
        for (const auto& s : out) {
            emit(s);
            ++emitted;
        }
        ++done_packages;
        if (done_packages % 64 == 0) report();
    }
    for (auto& t : pool) t.join();
    report();
}

std::vector<CensusRow> census(int max_complexity, int jobs) {
    std::vector<CensusRow> rows(max_complexity + 1);
    EnumerateOptions opt;
    opt.max_complexity = max_complexity;
    opt.jobs = jobs;
    enumerate_symbols(opt, [&](const DelaneySymbol& s) {
        CensusRow& row = rows[s.size()];
        switch (geometry_of(s)) {
            case GeometryKind::Spherical: ++row.spherical; break;
            case GeometryKind::Euclidean: ++row.euclidean; break;
            case GeometryKind::Hyperbolic: ++row.hyperbolic; break;
        }
    });
    return rows;
}

}  // namespace dds
