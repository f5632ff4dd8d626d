#include "dds/symbol.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace dds {

DelaneySymbol::DelaneySymbol(int n, std::array<std::vector<int>, 3> sigma,
                             std::vector<int> m01, std::vector<int> m12)
    : n_(n), sigma_(std::move(sigma)), m01_(std::move(m01)), m12_(std::move(m12)) {
    if (n_ < 1) throw ValidationError("size must be positive");
    for (int i = 0; i < 3; ++i) {
        if ((int)sigma_[i].size() != n_ + 1)
            throw ValidationError("sigma_" + std::to_string(i) + " has wrong length");
        for (int d = 1; d <= n_; ++d) {
            int e = sigma_[i][d];
            if (e < 1 || e > n_)
                throw ValidationError("sigma_" + std::to_string(i) + "(" +
                                      std::to_string(d) + ") out of range");
        }
        for (int d = 1; d <= n_; ++d) {
            if (sigma_[i][sigma_[i][d]] != d)
                throw ValidationError("sigma_" + std::to_string(i) +
                                      " is not an involution at node " + std::to_string(d));
        }
    }
    if ((int)m01_.size() != n_ + 1 || (int)m12_.size() != n_ + 1)
        throw ValidationError("m list has wrong length");

    // connectivity
    std::vector<char> seen(n_ + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int count = 1;
    while (!stack.empty()) {
        int d = stack.back();
        stack.pop_back();
        for (int i = 0; i < 3; ++i) {
            int e = sigma_[i][d];
            if (!seen[e]) {
                seen[e] = 1;
                ++count;
                stack.push_back(e);
            }
        }
    }
    if (count != n_) throw ValidationError("graph is disconnected");

    for (int d = 1; d <= n_; ++d) {
        if (m01_[d] < 3)
            throw ValidationError("m01(" + std::to_string(d) + ") below 3");
        if (m12_[d] < 3)
            throw ValidationError("m12(" + std::to_string(d) + ") below 3");
    }

    // m constant on components, r divides m, and every sigma_0 sigma_2
    // orbit has length at most 2
    for (auto [ci, cj] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}}) {
        for (const Component& c : components(*this, ci, cj)) {
            int mval = m(ci, cj, c.nodes.front());
            for (int d : c.nodes) {
                if (m(ci, cj, d) != mval)
                    throw ValidationError("m" + std::to_string(ci) + std::to_string(cj) +
                                          " not constant on the component of node " +
                                          std::to_string(c.nodes.front()));
            }
            if (ci == 0 && cj == 2 && c.r > 2)
                throw ValidationError("sigma_0 sigma_2 orbit of node " +
                                      std::to_string(c.nodes.front()) +
                                      " has length " + std::to_string(c.r));
            if (mval % c.r != 0)
                throw ValidationError("r=" + std::to_string(c.r) + " does not divide m=" +
                                      std::to_string(mval) + " on the component of node " +
                                      std::to_string(c.nodes.front()));
        }
    }
}

int DelaneySymbol::m(int ci, int cj, int node) const {
    if (ci == 0 && cj == 1) return m01_[node];
    if (ci == 1 && cj == 2) return m12_[node];
    if (ci == 0 && cj == 2) return 2;
    throw std::logic_error("internal: bad color pair");
}

namespace {

class Cursor {
public:
    explicit Cursor(const std::string& text) : text_(text) {}

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    std::size_t pos() const { return pos_; }

    void expect(char c) {
        if (peek() != c)
            throw ParseError(pos_, std::string("expected '") + c + "'");
        ++pos_;
    }

    int integer() {
        if (!std::isdigit((unsigned char)peek()))
            throw ParseError(pos_, "expected integer");
        long v = 0;
        while (std::isdigit((unsigned char)peek())) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1'000'000'000) throw ParseError(pos_, "integer too large");
            ++pos_;
        }
        return (int)v;
    }

    std::vector<int> int_list(int n) {
        std::vector<int> out(n + 1, 0);
        for (int k = 1; k <= n; ++k) {
            if (k > 1) expect(' ');
            out[k] = integer();
        }
        return out;
    }

    void end() {
        if (pos_ != text_.size()) throw ParseError(pos_, "trailing characters");
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace

DelaneySymbol parse_symbol(const std::string& text) {
    Cursor c(text);
    c.expect('<');
    int n = c.integer();
    if (n < 1) throw ParseError(c.pos(), "size must be positive");
    c.expect(':');
    std::array<std::vector<int>, 3> sigma;
    for (int i = 0; i < 3; ++i) {
        if (i > 0) c.expect(',');
        sigma[i] = c.int_list(n);
    }
    c.expect(':');
    std::vector<int> m01 = c.int_list(n);
    c.expect(',');
    std::vector<int> m12 = c.int_list(n);
    c.expect('>');
    c.end();
    return DelaneySymbol(n, std::move(sigma), std::move(m01), std::move(m12));
}

std::string serialize(const DelaneySymbol& s) {
    std::ostringstream out;
    out << '<' << s.size() << ':';
    for (int i = 0; i < 3; ++i) {
        if (i > 0) out << ',';
        for (int d = 1; d <= s.size(); ++d) {
            if (d > 1) out << ' ';
            out << s.sigma(i, d);
        }
    }
    out << ':';
    for (int d = 1; d <= s.size(); ++d) {
        if (d > 1) out << ' ';
        out << s.m01(d);
    }
    out << ',';
    for (int d = 1; d <= s.size(); ++d) {
        if (d > 1) out << ' ';
        out << s.m12(d);
    }
    out << '>';
    return out.str();
}

std::vector<Component> components(const DelaneySymbol& s, int ci, int cj) {
    const int n = s.size();
    std::vector<char> done(n + 1, 0);
    std::vector<Component> out;
    for (int d0 = 1; d0 <= n; ++d0) {
        if (done[d0]) continue;
        Component c;
        c.ci = ci;
        c.cj = cj;
        std::vector<int> stack{d0};
        done[d0] = 1;
        while (!stack.empty()) {
            int d = stack.back();
            stack.pop_back();
            c.nodes.push_back(d);
            if (s.sigma(ci, d) == d || s.sigma(cj, d) == d) c.chain = true;
            for (int col : {ci, cj}) {
                int e = s.sigma(col, d);
                if (!done[e]) {
                    done[e] = 1;
                    stack.push_back(e);
                }
            }
        }
        std::sort(c.nodes.begin(), c.nodes.end());
        int r = 0, x = d0;
        do {
            x = s.sigma(ci, s.sigma(cj, x));
            ++r;
        } while (x != d0);
        c.r = r;
        c.v = s.m(ci, cj, d0) / r;
        out.push_back(std::move(c));
    }
    return out;
}

const Component& component_of(const std::vector<Component>& comps, int node) {
    for (const Component& c : comps)
        if (std::binary_search(c.nodes.begin(), c.nodes.end(), node)) return c;
    throw std::logic_error("internal: node not in any component");
}

std::vector<int> traversal_sequence(const DelaneySymbol& s, int start,
                                    std::vector<int>* new_of) {
    const int n = s.size();
    std::vector<int> num(n + 1, 0);   // old -> new
    std::vector<int> order(n + 1, 0); // new -> old
    num[start] = 1;
    order[1] = start;
    int maxnum = 1;
    std::vector<int> seq;
    seq.reserve(3 * n);
    for (int k = 1; k <= n; ++k) {
        int d = order[k];
        for (int i = 0; i < 3; ++i) {
            int e = s.sigma(i, d);
            if (num[e] == 0) {
                num[e] = ++maxnum;
                order[maxnum] = e;
            }
            seq.push_back(num[e]);
        }
    }
    if (new_of) *new_of = std::move(num);
    return seq;
}

std::string format_graph_trace(const std::vector<int>& seq) {
    std::ostringstream out;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (k > 0) out << (k % 3 == 0 ? "; " : ",");
        out << seq[k];
    }
    return out.str();
}

namespace {

struct Trace {
    std::vector<int> graph, m01, m12;

    auto tie() const { return std::tie(graph, m01, m12); }
    bool operator<(const Trace& o) const { return tie() < o.tie(); }
};

// Trace for one start node: traversal sequence plus renumbered m lists.
Trace trace_from(const DelaneySymbol& s, int start, std::vector<int>* new_of = nullptr) {
    Trace t;
    std::vector<int> num;
    t.graph = traversal_sequence(s, start, &num);
    const int n = s.size();
    std::vector<int> old_of(n + 1, 0);
    for (int d = 1; d <= n; ++d) old_of[num[d]] = d;
    t.m01.resize(n);
    t.m12.resize(n);
    for (int k = 1; k <= n; ++k) {
        t.m01[k - 1] = s.m01(old_of[k]);
        t.m12[k - 1] = s.m12(old_of[k]);
    }
    if (new_of) *new_of = std::move(num);
    return t;
}

Trace best_trace(const DelaneySymbol& s, std::vector<int>* best_num = nullptr) {
    Trace best;
    std::vector<int> num;
    for (int start = 1; start <= s.size(); ++start) {
        Trace t = trace_from(s, start, &num);
        if (start == 1 || t < best) {
            best = std::move(t);
            if (best_num) *best_num = num;
        }
    }
    return best;
}

std::string int_csv(const std::vector<int>& v) {
    std::ostringstream out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out << ',';
        out << v[k];
    }
    return out.str();
}

}  // namespace

std::string canonical_graph_trace(const DelaneySymbol& s) {
    return format_graph_trace(best_trace(s).graph);
}

std::string canonical_trace(const DelaneySymbol& s) {
    Trace t = best_trace(s);
    return format_graph_trace(t.graph) + " :: " + int_csv(t.m01) + " :: " + int_csv(t.m12);
}

DelaneySymbol canonical_form(const DelaneySymbol& s) {
    std::vector<int> num;
    best_trace(s, &num);
    return relabel(s, num);
}

bool is_isomorphic(const DelaneySymbol& a, const DelaneySymbol& b) {
    if (a.size() != b.size()) return false;
    return canonical_trace(a) == canonical_trace(b);
}

DelaneySymbol dual(const DelaneySymbol& s) {
    const int n = s.size();
    std::array<std::vector<int>, 3> sigma;
    std::vector<int> m01(n + 1, 0), m12(n + 1, 0);
    for (int i = 0; i < 3; ++i) {
        sigma[i].assign(n + 1, 0);
        for (int d = 1; d <= n; ++d) sigma[i][d] = s.sigma(2 - i, d);
    }
    for (int d = 1; d <= n; ++d) {
        m01[d] = s.m12(d);
        m12[d] = s.m01(d);
    }
    return DelaneySymbol(n, std::move(sigma), std::move(m01), std::move(m12));
}

DelaneySymbol minimal_image(const DelaneySymbol& s) {
    const int n = s.size();
    // initial classes by (m01, m12)
    std::vector<std::pair<int, int>> keys;
    std::vector<int> cls(n + 1, 0);
    for (int d = 1; d <= n; ++d) keys.emplace_back(s.m01(d), s.m12(d));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (int d = 1; d <= n; ++d) {
        auto it = std::lower_bound(keys.begin(), keys.end(), std::pair{s.m01(d), s.m12(d)});
        cls[d] = int(it - keys.begin());
    }
    // refine until the sigma images respect the partition
    for (;;) {
        std::vector<std::array<int, 4>> sig(n + 1);
        for (int d = 1; d <= n; ++d)
            sig[d] = {cls[d], cls[s.sigma(0, d)], cls[s.sigma(1, d)], cls[s.sigma(2, d)]};
        std::vector<std::array<int, 4>> uniq(sig.begin() + 1, sig.end());
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        std::vector<int> next(n + 1, 0);
        for (int d = 1; d <= n; ++d)
            next[d] = int(std::lower_bound(uniq.begin(), uniq.end(), sig[d]) - uniq.begin());
        if (next == cls) break;
        cls = std::move(next);
    }
    // quotient nodes numbered by smallest member
    std::vector<int> rep;  // class id (renumbered) -> representative node
    std::vector<int> qnum(n + 1, 0);
    std::vector<int> first_seen;
    for (int d = 1; d <= n; ++d) {
        bool known = false;
        for (std::size_t k = 0; k < first_seen.size(); ++k)
            if (cls[first_seen[k]] == cls[d]) {
                qnum[d] = int(k) + 1;
                known = true;
                break;
            }
        if (!known) {
            first_seen.push_back(d);
            qnum[d] = (int)first_seen.size();
        }
    }
    rep = first_seen;
    const int q = (int)rep.size();
    std::array<std::vector<int>, 3> sigma;
    std::vector<int> m01(q + 1, 0), m12(q + 1, 0);
    for (int i = 0; i < 3; ++i) {
        sigma[i].assign(q + 1, 0);
        for (int k = 1; k <= q; ++k) sigma[i][k] = qnum[s.sigma(i, rep[k - 1])];
    }
    for (int k = 1; k <= q; ++k) {
        m01[k] = s.m01(rep[k - 1]);
        m12[k] = s.m12(rep[k - 1]);
    }
    return DelaneySymbol(q, std::move(sigma), std::move(m01), std::move(m12));
}

DelaneySymbol relabel(const DelaneySymbol& s, const std::vector<int>& perm) {
    const int n = s.size();
    std::array<std::vector<int>, 3> sigma;
    std::vector<int> m01(n + 1, 0), m12(n + 1, 0);
    for (int i = 0; i < 3; ++i) {
        sigma[i].assign(n + 1, 0);
        for (int d = 1; d <= n; ++d) sigma[i][perm[d]] = perm[s.sigma(i, d)];
    }
    for (int d = 1; d <= n; ++d) {
        m01[perm[d]] = s.m01(d);
        m12[perm[d]] = s.m12(d);
    }
    return DelaneySymbol(n, std::move(sigma), std::move(m01), std::move(m12));
}

}  // namespace dds
