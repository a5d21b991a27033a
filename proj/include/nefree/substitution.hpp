#pragma once

#include <numeric>
#include <vector>

#include "poset.hpp"

// Substitution of structures into a context, plus the labelled-chain sums
// built on top of it. Blocks are concatenated in context order, so point i of
// block k lands at offset(k) + i in the result.

namespace nefree {

inline Graph graph_substitute(const Graph& context, const std::vector<Graph>& blocks) {
    if ((int)blocks.size() != context.n)
        throw arity_error("substitution needs one block per context vertex");
    std::vector<int> offset(context.n + 1, 0);
    for (int k = 0; k < context.n; ++k)
        offset[k + 1] = offset[k] + blocks[k].n;
    int n = offset.back();
    std::vector<std::uint8_t> adj(n * n, 0);
    for (int k = 0; k < context.n; ++k)
        for (int i = 0; i < blocks[k].n; ++i)
            for (int j = 0; j < blocks[k].n; ++j)
                adj[(offset[k] + i) * n + (offset[k] + j)] = blocks[k].adj[i * blocks[k].n + j];
    for (int k = 0; k < context.n; ++k)
        for (int l = 0; l < context.n; ++l) {
            if (k == l || !context.edge(k, l))
                continue;
            for (int i = 0; i < blocks[k].n; ++i)
                for (int j = 0; j < blocks[l].n; ++j)
                    adj[(offset[k] + i) * n + (offset[l] + j)] = 1;
        }
    return Graph(n, std::move(adj));
}

inline Poset poset_substitute(const Poset& context, const std::vector<Poset>& blocks) {
    if ((int)blocks.size() != context.n)
        throw arity_error("substitution needs one block per context point");
    std::vector<int> offset(context.n + 1, 0);
    for (int k = 0; k < context.n; ++k)
        offset[k + 1] = offset[k] + blocks[k].n;
    int n = offset.back();
    std::vector<std::uint8_t> rel(n * n, 0);
    for (int k = 0; k < context.n; ++k)
        for (int i = 0; i < blocks[k].n; ++i)
            for (int j = 0; j < blocks[k].n; ++j)
                rel[(offset[k] + i) * n + (offset[k] + j)] = blocks[k].rel[i * blocks[k].n + j];
    for (int k = 0; k < context.n; ++k)
        for (int l = 0; l < context.n; ++l) {
            if (k == l || !context.less(k, l))
                continue;
            for (int i = 0; i < blocks[k].n; ++i)
                for (int j = 0; j < blocks[l].n; ++j)
                    rel[(offset[k] + i) * n + (offset[l] + j)] = 1;
        }
    return Poset(n, std::move(rel));
}

inline Poset direct_sum(const std::vector<Poset>& blocks) {
    return poset_substitute(Poset::antichain((int)blocks.size()), blocks);
}

inline Poset linear_sum(const std::vector<Poset>& blocks) {
    return poset_substitute(Poset::chain((int)blocks.size()), blocks);
}

// Index poset over 0..length-1 steered by a letter sequence: for i < j the
// pair reads r[i] (0 incomparable, -1 means i below j, +1 means j below i).
// The last letter steers nothing but is still part of the value.
inline Poset q_i_r(int length, const std::vector<std::int8_t>& r) {
    if (length < 1)
        throw parse_error("index poset needs at least one point");
    if ((int)r.size() != length)
        throw arity_error("one letter per index expected");
    for (auto v : r)
        if (v < -1 || v > 1)
            throw parse_error("letter out of alphabet");
    std::vector<std::uint8_t> rel(length * length, 0);
    for (int i = 0; i < length; ++i)
        for (int j = i + 1; j < length; ++j) {
            if (r[i] == -1)
                rel[i * length + j] = 1;
            else if (r[i] == 1)
                rel[j * length + i] = 1;
        }
    // the Poset constructor re-checks transitivity; the letter rule
    // guarantees it
    return Poset(length, std::move(rel));
}

struct LabelledChain {
    struct Label {
        Poset block;
        std::int8_t r;
    };
    std::vector<Label> labels;

    explicit LabelledChain(std::vector<Label> labels_) : labels(std::move(labels_)) {
        if (labels.empty())
            throw parse_error("labelled chain needs at least one index");
        for (auto& l : labels)
            if (l.r < -1 || l.r > 1)
                throw parse_error("letter out of alphabet");
    }

    int length() const { return (int)labels.size(); }
    int points() const {
        int s = 0;
        for (auto& l : labels)
            s += l.block.n;
        return s;
    }
};

inline Poset sum_labelled_chain(const LabelledChain& c) {
    std::vector<std::int8_t> r;
    std::vector<Poset> blocks;
    for (auto& l : c.labels) {
        r.push_back(l.r);
        blocks.push_back(l.block);
    }
    return poset_substitute(q_i_r(c.length(), r), blocks);
}

// Each index replaced by k adjacent copies of its label.
inline LabelledChain ordinal_product(int k, const LabelledChain& c) {
    if (k < 1)
        throw parse_error("ordinal product needs a positive factor");
    std::vector<LabelledChain::Label> out;
    for (auto& l : c.labels)
        for (int i = 0; i < k; ++i)
            out.push_back(l);
    return LabelledChain(std::move(out));
}

// Index order reversed, labels carried along with their indices.
inline LabelledChain reverse(const LabelledChain& c) {
    std::vector<LabelledChain::Label> out(c.labels.rbegin(), c.labels.rend());
    return LabelledChain(std::move(out));
}

inline LabelledChain concat(const LabelledChain& lo, const LabelledChain& hi) {
    auto out = lo.labels;
    out.insert(out.end(), hi.labels.begin(), hi.labels.end());
    return LabelledChain(std::move(out));
}

// Derived reversed-sum helpers; compositions of reverse and concat only.
inline LabelledChain star_concat(const LabelledChain& c0, const LabelledChain& c1) {
    return concat(reverse(c1), reverse(c0));
}

inline LabelledChain star_sum(const std::vector<LabelledChain>& cs) {
    if (cs.empty())
        throw parse_error("reversed sum needs at least one chain");
    LabelledChain out = reverse(cs.back());
    for (int i = (int)cs.size() - 2; i >= 0; --i)
        out = concat(out, reverse(cs[i]));
    return out;
}

} // namespace nefree
