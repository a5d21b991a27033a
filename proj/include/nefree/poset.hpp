#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "errors.hpp"

// Core order types. All three are immutable value types over point sets
// {0,...,n-1}; every operation returns a fresh value. The empty domain is
// rejected everywhere.

namespace nefree {

struct Graph {
    int n = 0;
    std::vector<std::uint8_t> adj; // n*n, symmetric, zero diagonal

    Graph(int n_, std::vector<std::uint8_t> adj_) : n(n_), adj(std::move(adj_)) {
        if (n <= 0)
            throw parse_error("graph needs at least one vertex");
        if ((int)adj.size() != n * n)
            throw parse_error("graph adjacency table has wrong size");
        for (int i = 0; i < n; ++i) {
            if (adj[i * n + i])
                throw parse_error("graph adjacency must be irreflexive");
            for (int j = 0; j < n; ++j)
                if (adj[i * n + j] != adj[j * n + i])
                    throw parse_error("graph adjacency must be symmetric");
        }
    }

    static Graph edgeless(int n_) { return Graph(n_, std::vector<std::uint8_t>(n_ * n_, 0)); }

    static Graph from_edges(int n_, const std::vector<std::pair<int, int>>& edges) {
        if (n_ <= 0)
            throw parse_error("graph needs at least one vertex");
        std::vector<std::uint8_t> a(n_ * n_, 0);
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n_ || v < 0 || v >= n_)
                throw index_error("edge endpoint out of range");
            if (u == v)
                throw parse_error("loop edge");
            a[u * n_ + v] = a[v * n_ + u] = 1;
        }
        return Graph(n_, std::move(a));
    }

    bool edge(int i, int j) const { return adj[i * n + j] != 0; }
    int degree(int i) const {
        int d = 0;
        for (int j = 0; j < n; ++j)
            d += adj[i * n + j];
        return d;
    }

    friend bool operator==(const Graph&, const Graph&) = default;
};

struct Poset {
    int n = 0;
    std::vector<std::uint8_t> rel; // n*n, rel[i*n+j] == 1 iff i < j

    // Validating constructor: the table must already be a strict order.
    Poset(int n_, std::vector<std::uint8_t> rel_) : n(n_), rel(std::move(rel_)) {
        if (n <= 0)
            throw parse_error("poset needs at least one point");
        if ((int)rel.size() != n * n)
            throw parse_error("poset relation table has wrong size");
        for (int i = 0; i < n; ++i) {
            if (rel[i * n + i])
                throw cycle_error("relation is not irreflexive");
            for (int j = 0; j < n; ++j)
                if (rel[i * n + j] && rel[j * n + i])
                    throw cycle_error("relation is not antisymmetric");
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rel[i * n + j])
                    for (int k = 0; k < n; ++k)
                        if (rel[j * n + k] && !rel[i * n + k])
                            throw parse_error("relation is not transitive");
    }

    // Transitive closure of arbitrary strict pairs; rejects cycles.
    static Poset from_strict_pairs(int n_, const std::vector<std::pair<int, int>>& pairs) {
        if (n_ <= 0)
            throw parse_error("poset needs at least one point");
        std::vector<std::uint8_t> r(n_ * n_, 0);
        for (auto [i, j] : pairs) {
            if (i < 0 || i >= n_ || j < 0 || j >= n_)
                throw index_error("pair index out of range");
            r[i * n_ + j] = 1;
        }
        for (int k = 0; k < n_; ++k)
            for (int i = 0; i < n_; ++i)
                if (r[i * n_ + k])
                    for (int j = 0; j < n_; ++j)
                        if (r[k * n_ + j])
                            r[i * n_ + j] = 1;
        for (int i = 0; i < n_; ++i)
            if (r[i * n_ + i])
                throw cycle_error("pairs close into a cycle");
        return Poset(n_, std::move(r));
    }

    static Poset antichain(int n_) { return Poset(n_, std::vector<std::uint8_t>(n_ * n_, 0)); }

    static Poset chain(int n_) {
        if (n_ <= 0)
            throw parse_error("poset needs at least one point");
        std::vector<std::uint8_t> r(n_ * n_, 0);
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                r[i * n_ + j] = 1;
        return Poset(n_, std::move(r));
    }

    bool less(int i, int j) const { return rel[i * n + j] != 0; }
    bool comparable(int i, int j) const { return i != j && (less(i, j) || less(j, i)); }
    bool incomparable(int i, int j) const { return i != j && !less(i, j) && !less(j, i); }

    friend bool operator==(const Poset&, const Poset&) = default;
};

// Three-letter relation table: d(x,y) in {-1,0,+1}. Posets map to the skew
// encoding (+1 below, -1 above, 0 incomparable); graphs to the symmetric 0/1
// one. All module machinery works on this type.
struct BinaryStructure {
    int n = 0;
    std::vector<std::int8_t> d; // n*n, diagonal fixed at 0 and never read

    BinaryStructure(int n_, std::vector<std::int8_t> d_) : n(n_), d(std::move(d_)) {
        if (n <= 0)
            throw parse_error("structure needs at least one point");
        if ((int)d.size() != n * n)
            throw parse_error("structure table has wrong size");
        for (auto v : d)
            if (v < -1 || v > 1)
                throw parse_error("structure letter out of alphabet");
    }

    static BinaryStructure from_poset(const Poset& p) {
        std::vector<std::int8_t> t(p.n * p.n, 0);
        for (int i = 0; i < p.n; ++i)
            for (int j = 0; j < p.n; ++j)
                if (p.less(i, j)) {
                    t[i * p.n + j] = 1;
                    t[j * p.n + i] = -1;
                }
        return BinaryStructure(p.n, std::move(t));
    }

    static BinaryStructure from_graph(const Graph& g) {
        std::vector<std::int8_t> t(g.n * g.n, 0);
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                if (g.edge(i, j))
                    t[i * g.n + j] = 1;
        return BinaryStructure(g.n, std::move(t));
    }

    std::int8_t at(int i, int j) const { return d[i * n + j]; }

    friend bool operator==(const BinaryStructure&, const BinaryStructure&) = default;
};

inline Graph comparability_graph(const Poset& p) {
    std::vector<std::uint8_t> a(p.n * p.n, 0);
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j)
            if (i != j && p.comparable(i, j))
                a[i * p.n + j] = 1;
    return Graph(p.n, std::move(a));
}

inline Graph complement(const Graph& g) {
    std::vector<std::uint8_t> a(g.n * g.n, 0);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (i != j && !g.edge(i, j))
                a[i * g.n + j] = 1;
    return Graph(g.n, std::move(a));
}

// Connected components, each sorted, ordered by minimum vertex.
inline std::vector<std::vector<int>> graph_components(const Graph& g) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(g.n, 0);
    for (int s = 0; s < g.n; ++s) {
        if (seen[s])
            continue;
        std::vector<int> block{s}, stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < g.n; ++v)
                if (g.edge(u, v) && !seen[v]) {
                    seen[v] = 1;
                    block.push_back(v);
                    stack.push_back(v);
                }
        }
        std::sort(block.begin(), block.end());
        out.push_back(std::move(block));
    }
    return out;
}

inline bool is_connected(const Graph& g) { return graph_components(g).size() == 1; }

inline Graph induced_graph(const Graph& g, const std::vector<int>& points) {
    if (points.empty())
        throw parse_error("induced graph needs at least one vertex");
    int m = (int)points.size();
    std::vector<std::uint8_t> a(m * m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (points[i] < 0 || points[i] >= g.n)
                throw index_error("vertex out of range");
            if (i != j)
                a[i * m + j] = g.edge(points[i], points[j]);
        }
    return Graph(m, std::move(a));
}

namespace detail {

// Induced P4 on four vertices: exactly three edges with degree multiset
// {1,1,2,2}; no other 4-vertex graph matches that signature.
inline bool four_subset_is_p4(const Graph& g, int a, int b, int c, int d) {
    int v[4] = {a, b, c, d};
    int deg[4] = {0, 0, 0, 0}, edges = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (g.edge(v[i], v[j])) {
                ++edges;
                ++deg[i];
                ++deg[j];
            }
    if (edges != 3)
        return false;
    int ones = 0, twos = 0;
    for (int i = 0; i < 4; ++i) {
        ones += deg[i] == 1;
        twos += deg[i] == 2;
    }
    return ones == 2 && twos == 2;
}

inline bool cograph_scan(const Graph& g) {
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b)
            for (int c = b + 1; c < g.n; ++c)
                for (int d = c + 1; d < g.n; ++d)
                    if (four_subset_is_p4(g, a, b, c, d))
                        return false;
    return true;
}

inline bool cograph_recursive(const Graph& g) {
    if (g.n <= 1)
        return true;
    auto comps = graph_components(g);
    if (comps.size() > 1) {
        for (auto& c : comps)
            if (!cograph_recursive(induced_graph(g, c)))
                return false;
        return true;
    }
    auto co = complement(g);
    auto cocomps = graph_components(co);
    if (cocomps.size() > 1) {
        for (auto& c : cocomps)
            if (!cograph_recursive(induced_graph(g, c)))
                return false;
        return true;
    }
    // n >= 2, connected and co-connected: contains an induced P4
    return false;
}

} // namespace detail

// Quartic scan at small sizes, complement-connectivity recursion above it.
inline bool is_cograph(const Graph& g) {
    return g.n <= 12 ? detail::cograph_scan(g) : detail::cograph_recursive(g);
}

// The four-point pattern a < b, c < b, c < d with no other comparabilities.
inline const Poset& n_pattern() {
    static const Poset n = Poset::from_strict_pairs(4, {{0, 1}, {2, 1}, {2, 3}});
    return n;
}

// Direct scan: does some 4-subset of P induce the N pattern? Kept independent
// of the cograph route so the two can cross-check each other.
inline bool embeds_n(const Poset& p) {
    if (p.n < 4)
        return false;
    static const int perms[24][4] = {
        {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {0, 3, 2, 1},
        {1, 0, 2, 3}, {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 2, 3, 0}, {1, 3, 0, 2}, {1, 3, 2, 0},
        {2, 0, 1, 3}, {2, 0, 3, 1}, {2, 1, 0, 3}, {2, 1, 3, 0}, {2, 3, 0, 1}, {2, 3, 1, 0},
        {3, 0, 1, 2}, {3, 0, 2, 1}, {3, 1, 0, 2}, {3, 1, 2, 0}, {3, 2, 0, 1}, {3, 2, 1, 0}};
    const Poset& pat = n_pattern();
    for (int a = 0; a < p.n; ++a)
        for (int b = a + 1; b < p.n; ++b)
            for (int c = b + 1; c < p.n; ++c)
                for (int d = c + 1; d < p.n; ++d) {
                    int v[4] = {a, b, c, d};
                    for (auto& perm : perms) {
                        bool ok = true;
                        for (int i = 0; i < 4 && ok; ++i)
                            for (int j = 0; j < 4 && ok; ++j)
                                if (i != j && pat.less(i, j) != p.less(v[perm[i]], v[perm[j]]))
                                    ok = false;
                        if (ok)
                            return true;
                    }
                }
    return false;
}

inline bool is_nfree(const Poset& p) { return is_cograph(comparability_graph(p)); }

inline std::vector<std::vector<int>> components(const Poset& p) {
    return graph_components(comparability_graph(p));
}

inline bool is_connected(const Poset& p) { return components(p).size() == 1; }

// Complement of the comparability graph is connected; trivially true for a
// single point, false for a two-point chain.
inline bool has_ccgc(const Poset& p) { return is_connected(complement(comparability_graph(p))); }

inline Poset dual(const Poset& p) {
    std::vector<std::uint8_t> r(p.n * p.n, 0);
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j)
            r[j * p.n + i] = p.rel[i * p.n + j];
    return Poset(p.n, std::move(r));
}

struct InducedPoset {
    Poset poset;
    std::vector<int> points; // points[new index] = original point
};

inline InducedPoset induced(const Poset& p, std::vector<int> points) {
    if (points.empty())
        throw parse_error("induced poset needs at least one point");
    std::sort(points.begin(), points.end());
    int m = (int)points.size();
    std::vector<std::uint8_t> r(m * m, 0);
    for (int i = 0; i < m; ++i) {
        if (points[i] < 0 || points[i] >= p.n)
            throw index_error("point out of range");
        if (i + 1 < m && points[i] == points[i + 1])
            throw index_error("duplicate point");
        for (int j = 0; j < m; ++j)
            r[i * m + j] = p.rel[points[i] * p.n + points[j]];
    }
    return {Poset(m, std::move(r)), std::move(points)};
}

inline bool is_chain_poset(const Poset& p) {
    for (int i = 0; i < p.n; ++i)
        for (int j = i + 1; j < p.n; ++j)
            if (!p.comparable(i, j))
                return false;
    return true;
}

inline bool is_antichain_poset(const Poset& p) {
    for (int i = 0; i < p.n; ++i)
        for (int j = i + 1; j < p.n; ++j)
            if (p.comparable(i, j))
                return false;
    return true;
}

} // namespace nefree
