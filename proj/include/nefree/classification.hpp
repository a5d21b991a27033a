#pragma once

#include "decomposition.hpp"
#include "embedding.hpp"
#include "expr.hpp"

// Structure of finite posets with no induced fence pattern: every such poset
// is a single point, a direct sum of connected parts, or a linear sum of
// parts whose comparability-graph complements are connected. On top of that
// sit the smallest substitution context of a cograph and the recursive
// chain/antichain canonical form read off it.

namespace nefree {

enum class ClassificationTag { singleton, direct_sum, linear_sum };

struct Classification {
    ClassificationTag tag = ClassificationTag::singleton;
    std::vector<std::vector<int>> parts; // original point sets, in order
    std::vector<Poset> part_posets;      // induced posets, same order
};

inline Classification classify(const Poset& p) {
    if (!is_nfree(p))
        throw not_nfree_error("classification needs a fence-free poset");
    Classification out;
    if (p.n == 1) {
        out.tag = ClassificationTag::singleton;
        return out;
    }
    auto comps = components(p);
    if (comps.size() > 1) {
        out.tag = ClassificationTag::direct_sum;
        for (auto& c : comps) {
            auto ind = induced(p, c);
            if (!is_connected(ind.poset))
                throw structure_error("component is not connected");
            out.parts.push_back(ind.points);
            out.part_posets.push_back(std::move(ind.poset));
        }
        return out;
    }
    // connected, non-singleton: the top quotient must be linear
    std::vector<int> all(p.n);
    for (int i = 0; i < p.n; ++i)
        all[i] = i;
    auto q = gallai_quotient(p, all);
    if (q.type.tag != QuotientType::Tag::linear)
        throw structure_error("connected fence-free poset with a non-linear top quotient");
    int k = (int)q.classes.size();
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return q.structure.at(a, b) == 1; });
    out.tag = ClassificationTag::linear_sum;
    for (int idx : order) {
        auto ind = induced(p, q.classes[idx]);
        if (!has_ccgc(ind.poset))
            throw structure_error("linear summand without connected complement");
        out.parts.push_back(ind.points);
        out.part_posets.push_back(std::move(ind.poset));
    }
    return out;
}

struct ContextBlock {
    std::vector<int> points; // sorted original vertices
    bool clique = false;     // induced subgraph complete (singletons: both)
    bool independent = false;
};

struct SmallestContext {
    Graph context;                    // one vertex per block
    std::vector<ContextBlock> blocks; // in context vertex order
};

namespace detail {

inline bool block_clique(const Graph& g, const std::vector<int>& pts) {
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (!g.edge(pts[i], pts[j]))
                return false;
    return true;
}

inline bool block_independent(const Graph& g, const std::vector<int>& pts) {
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (g.edge(pts[i], pts[j]))
                return false;
    return true;
}

inline Graph quotient_by_blocks(const Graph& g, const std::vector<std::vector<int>>& blocks) {
    int k = (int)blocks.size();
    std::vector<std::uint8_t> adj(k * k, 0);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (a != b && g.edge(blocks[a].front(), blocks[b].front()))
                adj[a * k + b] = 1;
    return Graph(k, std::move(adj));
}

} // namespace detail

// Smallest context a cograph substitutes from: merge two blocks whenever they
// form a two-vertex module of the current context that is an edge between
// cliques or a non-edge between independent sets, until no such pair is left.
inline SmallestContext smallest_context(const Graph& g) {
    if (!is_cograph(g))
        throw not_cograph_error("smallest context needs a cograph");
    std::vector<std::vector<int>> blocks(g.n);
    for (int i = 0; i < g.n; ++i)
        blocks[i] = {i};
    bool merged = true;
    while (merged) {
        merged = false;
        Graph k = detail::quotient_by_blocks(g, blocks);
        for (int u = 0; u < k.n && !merged; ++u)
            for (int v = u + 1; v < k.n && !merged; ++v) {
                bool pair_module = true;
                for (int w = 0; w < k.n && pair_module; ++w)
                    if (w != u && w != v && k.edge(w, u) != k.edge(w, v))
                        pair_module = false;
                if (!pair_module)
                    continue;
                bool both_cliques = detail::block_clique(g, blocks[u]) &&
                                    detail::block_clique(g, blocks[v]);
                bool both_independent = detail::block_independent(g, blocks[u]) &&
                                        detail::block_independent(g, blocks[v]);
                if ((k.edge(u, v) && both_cliques) || (!k.edge(u, v) && both_independent)) {
                    blocks[u].insert(blocks[u].end(), blocks[v].begin(), blocks[v].end());
                    std::sort(blocks[u].begin(), blocks[u].end());
                    blocks.erase(blocks.begin() + v);
                    merged = true;
                }
            }
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    SmallestContext out{detail::quotient_by_blocks(g, blocks), {}};
    for (auto& b : blocks) {
        ContextBlock cb;
        cb.clique = detail::block_clique(g, b);
        cb.independent = detail::block_independent(g, b);
        if (!cb.clique && !cb.independent)
            throw structure_error("context block is neither clique nor independent");
        cb.points = b;
        out.blocks.push_back(std::move(cb));
    }
    return out;
}

// Re-scan of the merge conditions over every decomposition-tree node of the
// context: true when no node still contains a mergeable two-vertex module.
inline bool is_leaf_minimal(const SmallestContext& sc) {
    const Graph& k = sc.context;
    auto tree = decomposition_tree(BinaryStructure::from_graph(k));
    for (auto& node : tree.nodes) {
        for (size_t a = 0; a < node.size(); ++a)
            for (size_t b = a + 1; b < node.size(); ++b) {
                int u = node[a], v = node[b];
                bool pair_module = true;
                for (int w = 0; w < k.n && pair_module; ++w)
                    if (w != u && w != v && k.edge(w, u) != k.edge(w, v))
                        pair_module = false;
                if (!pair_module)
                    continue;
                bool cliques = sc.blocks[u].clique && sc.blocks[v].clique;
                bool independents = sc.blocks[u].independent && sc.blocks[v].independent;
                if ((k.edge(u, v) && cliques) || (!k.edge(u, v) && independents))
                    return false;
            }
    }
    return true;
}

namespace detail {

struct CanonicalBuilder {
    const Poset& p;
    const SmallestContext& sc;
    const DecompTree& tree;

    std::vector<int> node_points(int node) const {
        std::vector<int> pts;
        for (int v : tree.nodes[node])
            pts.insert(pts.end(), sc.blocks[v].points.begin(), sc.blocks[v].points.end());
        std::sort(pts.begin(), pts.end());
        return pts;
    }

    // all of xs strictly below all of ys
    bool set_below(const std::vector<int>& xs, const std::vector<int>& ys) const {
        for (int x : xs)
            for (int y : ys)
                if (!p.less(x, y))
                    return false;
        return true;
    }

    Expr leaf_atom(int vertex) const {
        const ContextBlock& b = sc.blocks[vertex];
        auto ind = induced(p, b.points);
        Expr e;
        if (is_chain_poset(ind.poset)) {
            e = Expr::chain_atom((int)b.points.size());
            e.points = b.points;
            // list chain points bottom-up so the atom reconstructs exactly
            std::sort(e.points.begin(), e.points.end(),
                      [&](int x, int y) { return p.less(x, y); });
        } else {
            if (!is_antichain_poset(ind.poset))
                throw structure_error("leaf block is neither chain nor antichain");
            e = Expr::antichain_atom((int)b.points.size());
            e.points = b.points;
        }
        return e;
    }

    Expr build(int node) const {
        if (tree.leaf(node))
            return leaf_atom(tree.nodes[node].front());
        NodeValue v = *tree.value[node];
        if (v == NodeValue::prime)
            throw structure_error("prime node in a cograph context tree");
        std::vector<int> kids = tree.children[node];
        if (v == NodeValue::parallel) {
            // direct sum of the child forms, ordered by least original point
            std::sort(kids.begin(), kids.end(), [&](int x, int y) {
                return node_points(x).front() < node_points(y).front();
            });
            Expr e;
            e.kind = Expr::Kind::dir;
            for (int k : kids)
                e.children.push_back(build(k));
            return e;
        }
        // series node: at most one child is a chain-shaped leaf; its points
        // fan out into the gaps between the remaining children, which are
        // totally ordered by the poset
        int chain_leaf = -1;
        std::vector<int> rest;
        for (int k : kids) {
            if (tree.leaf(k)) {
                int vert = tree.nodes[k].front();
                auto ind = induced(p, sc.blocks[vert].points);
                if (is_chain_poset(ind.poset)) {
                    if (chain_leaf != -1)
                        throw structure_error("two chain leaves under one series node");
                    chain_leaf = k;
                    continue;
                }
            }
            rest.push_back(k);
        }
        if (rest.empty())
            throw structure_error("series node with no stacked children");
        std::vector<std::vector<int>> rest_points;
        for (int k : rest)
            rest_points.push_back(node_points(k));
        std::vector<size_t> order(rest.size());
        for (size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
            return set_below(rest_points[x], rest_points[y]);
        });
        for (size_t i = 0; i + 1 < order.size(); ++i)
            if (!set_below(rest_points[order[i]], rest_points[order[i + 1]]))
                throw structure_error("stacked children are not totally ordered");
        Expr e;
        e.kind = Expr::Kind::lin;
        int gaps = (int)rest.size() + 1;
        std::vector<std::vector<int>> gap_points(gaps);
        if (chain_leaf != -1) {
            for (int x : node_points(chain_leaf)) {
                int below = 0;
                for (size_t i = 0; i < order.size(); ++i) {
                    const auto& mp = rest_points[order[i]];
                    if (set_below(mp, {x}))
                        below = (int)i + 1;
                    else if (!set_below({x}, mp))
                        throw structure_error("chain point incomparable to a stacked child");
                }
                // x sits above exactly the first `below` children
                for (size_t i = 0; i < order.size(); ++i) {
                    bool want = (int)i >= below;
                    if (set_below({x}, rest_points[order[i]]) != want)
                        throw structure_error("chain point splits a gap");
                }
                gap_points[below].push_back(x);
            }
        }
        for (int gidx = 0; gidx < gaps; ++gidx) {
            Expr gap = Expr::chain_atom((int)gap_points[gidx].size());
            gap.points = gap_points[gidx];
            std::sort(gap.points.begin(), gap.points.end(),
                      [&](int x, int y) { return p.less(x, y); });
            e.children.push_back(std::move(gap)); // zero-size gaps stay as placeholders
            if (gidx < (int)rest.size())
                e.children.push_back(build(rest[order[gidx]]));
        }
        return e;
    }
};

} // namespace detail

// Recursive chain/antichain canonical form. Atoms carry the original points
// they cover, so eval_with_points reconstructs the input exactly.
inline Expr canonical_chain_antichain_form(const Poset& p) {
    if (!is_nfree(p))
        throw not_nfree_error("canonical form needs a fence-free poset");
    auto sc = smallest_context(comparability_graph(p));
    auto tree = decomposition_tree(BinaryStructure::from_graph(sc.context));
    detail::CanonicalBuilder builder{p, sc, tree};
    return builder.build(tree.root());
}

enum class SiblingVerdict { one, infinite_witnessed, symbolic_max };

inline const char* sibling_verdict_name(SiblingVerdict v) {
    switch (v) {
    case SiblingVerdict::one:
        return "one";
    case SiblingVerdict::infinite_witnessed:
        return "infinite-witnessed";
    default:
        return "symbolic-max";
    }
}

struct SiblingReport {
    SiblingVerdict verdict = SiblingVerdict::one;
    std::vector<int> chain_parts; // sizes of the chain atoms in the canonical form
    Expr canonical_form;
    int witnesses = 0;
};

namespace detail {

inline void collect_chain_parts(const Expr& e, std::vector<int>& out) {
    if (e.kind == Expr::Kind::chain && e.size > 0)
        out.push_back(e.size);
    for (auto& c : e.children)
        collect_chain_parts(c, out);
}

} // namespace detail

// Finite posets have exactly one equimorphy sibling: themselves. The report
// still lists the chain parts of the canonical form, the pieces whose sibling
// numbers would drive the count if those chains were inflated to infinite
// ones.
inline SiblingReport sibling_report(const Poset& p) {
    SiblingReport out;
    out.verdict = SiblingVerdict::one;
    out.canonical_form = canonical_chain_antichain_form(p);
    detail::collect_chain_parts(out.canonical_form, out.chain_parts);
    out.witnesses = 0;
    return out;
}

struct SiblingWitnesses {
    std::vector<Poset> witnesses; // base plus 0..k-1 extra isolated points
    bool pairwise_noniso = false;
    std::vector<std::optional<bool>> equimorphic_to_input; // nullopt when over cap
};

// Witness family for the disconnected case: pad a connected companion with
// growing antichains. Candidates are verified pairwise non-isomorphic.
inline SiblingWitnesses sibling_witnesses_disconnected(const Poset& p, const Poset& q, int count,
                                                       int cap = default_embed_cap) {
    if (count < 1)
        throw parse_error("witness count must be positive");
    if (is_connected(p))
        throw precondition_error("first poset must be disconnected");
    if (!is_connected(q))
        throw precondition_error("companion poset must be connected");
    SiblingWitnesses out;
    for (int i = 0; i < count; ++i) {
        if (i == 0)
            out.witnesses.push_back(q);
        else
            out.witnesses.push_back(direct_sum({q, Poset::antichain(i)}));
    }
    out.pairwise_noniso = true;
    for (size_t i = 0; i < out.witnesses.size(); ++i)
        for (size_t j = i + 1; j < out.witnesses.size(); ++j)
            if (is_isomorphic(out.witnesses[i], out.witnesses[j], cap)) {
                out.pairwise_noniso = false;
                throw structure_error("witness candidates collapsed");
            }
    for (auto& w : out.witnesses) {
        if (w.n <= cap && p.n <= cap)
            out.equimorphic_to_input.push_back(equimorphic(w, p, cap));
        else
            out.equimorphic_to_input.push_back(std::nullopt);
    }
    return out;
}

} // namespace nefree
