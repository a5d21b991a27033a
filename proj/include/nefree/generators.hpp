#pragma once

#include <cctype>
#include <string>

#include "embedding.hpp"
#include "substitution.hpp"

// Named small posets, the two ladder families, and the window gadgets that
// turn bit patterns into pairwise non-isomorphic labelled-chain sums.

namespace nefree {

// Linear sum of n two-antichains.
inline Poset gen_A(int n) {
    if (n < 1)
        throw parse_error("ladder index must be positive");
    return linear_sum(std::vector<Poset>(n, Poset::antichain(2)));
}

// A point, n two-antichains, a point, stacked linearly.
inline Poset gen_B(int n) {
    if (n < 1)
        throw parse_error("ladder index must be positive");
    std::vector<Poset> blocks;
    blocks.push_back(Poset::chain(1));
    for (int i = 0; i < n; ++i)
        blocks.push_back(Poset::antichain(2));
    blocks.push_back(Poset::chain(1));
    return linear_sum(blocks);
}

// Accepted names: n, c(K)/chain(K), a(K)/antichain(K), A(K), B(K).
inline Poset gen_named(const std::string& name) {
    std::string s;
    for (char c : name)
        if (!std::isspace((unsigned char)c))
            s += c;
    if (s == "n" || s == "N")
        return n_pattern();
    auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')')
        throw parse_error("unknown generator name '" + name + "'");
    std::string head = s.substr(0, open);
    std::string num = s.substr(open + 1, s.size() - open - 2);
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
        throw parse_error("generator size must be a non-negative integer");
    int k = std::stoi(num);
    if (head == "c" || head == "chain")
        return Poset::chain(k);
    if (head == "a" || head == "antichain")
        return Poset::antichain(k);
    if (head == "A")
        return gen_A(k);
    if (head == "B")
        return gen_B(k);
    throw parse_error("unknown generator name '" + name + "'");
}

// Positions a gadget can hang off: indices whose letter points up or down.
inline std::vector<int> insertion_anchors(const LabelledChain& c) {
    std::vector<int> out;
    for (int i = 0; i < c.length(); ++i)
        if (c.labels[i].r != 0)
            out.push_back(i);
    return out;
}

// In the all-(-1) regime the anchors are the non-trivial-block positions.
inline std::vector<int> linear_anchors(const LabelledChain& c) {
    std::vector<int> out;
    for (int i = 0; i < c.length(); ++i)
        if (c.labels[i].block.n >= 2)
            out.push_back(i);
    return out;
}

// A finite tail of a downward-infinite labelled chain, listed bottom-up, with
// the number of usable insertion anchors recorded as depth.
struct TruncationWindow {
    LabelledChain base;
    int depth = 0;

    TruncationWindow(LabelledChain base_, int depth_) : base(std::move(base_)), depth(depth_) {
        if (depth < 0)
            throw anchor_error("window depth must be non-negative");
        if ((int)insertion_anchors(base).size() < depth)
            throw anchor_error("window carries fewer anchors than its depth");
    }
};

using BitPattern = std::vector<std::uint8_t>;

namespace detail {

// Chains and antichains of even size gain one element so that no block of a
// modified window matches the original block sizes.
inline Poset oddify(const Poset& block) {
    if (block.n % 2 == 0) {
        if (is_chain_poset(block))
            return Poset::chain(block.n + 1);
        if (is_antichain_poset(block))
            return Poset::antichain(block.n + 1);
    }
    return block;
}

// Bits are assigned to the chosen anchors counted downward: bit 0 sits on the
// highest of the lowest-|f| anchors, matching a descending coinitial walk.
inline std::vector<int> bit_positions(const std::vector<int>& anchors, const BitPattern& f,
                                      int length) {
    int d = (int)f.size();
    if ((int)anchors.size() < d)
        throw anchor_error("window carries fewer anchors than the pattern");
    std::vector<int> bit_at(length, -1);
    for (int n = 0; n < d; ++n)
        bit_at[anchors[d - 1 - n]] = f[n] ? 1 : 0;
    return bit_at;
}

} // namespace detail

// Gadget insertion for mixed-letter windows: above anchor a with bit b, add a
// (2b+2)-antichain at letter 0 and then a (2b+2)-chain at the anchor's
// letter. Even chain/antichain window blocks get one extra point first.
inline LabelledChain cf_window(const TruncationWindow& w, const BitPattern& f) {
    if ((int)f.size() > w.depth)
        throw anchor_error("bit pattern deeper than the window");
    auto bit_at = detail::bit_positions(insertion_anchors(w.base), f, w.base.length());
    std::vector<LabelledChain::Label> out;
    for (int i = 0; i < w.base.length(); ++i) {
        out.push_back({detail::oddify(w.base.labels[i].block), w.base.labels[i].r});
        if (bit_at[i] >= 0) {
            int m = 2 * bit_at[i] + 2;
            out.push_back({Poset::antichain(m), 0});
            out.push_back({Poset::chain(m), w.base.labels[i].r});
        }
    }
    return LabelledChain(std::move(out));
}

// Gadget insertion for the all-(-1) regime. Runs of non-trivial blocks of
// length 2 or 4 first get one extra two-antichain on top, so no stretch of
// the output mimics an un-modified run. Above anchor a with bit b sits the
// context chain of the (2b+2)-ladder: point, (2b+2) two-antichains, point.
inline LabelledChain cf_linear_window(const TruncationWindow& w, const BitPattern& f) {
    for (auto& l : w.base.labels)
        if (l.r != -1)
            throw regime_error("linear-regime window must carry letter -1 throughout");
    if ((int)f.size() > w.depth)
        throw anchor_error("bit pattern deeper than the window");
    int len = w.base.length();
    auto bit_at = detail::bit_positions(linear_anchors(w.base), f, len);
    std::vector<char> d_after(len, 0);
    for (int i = 0; i < len;) {
        if (w.base.labels[i].block.n < 2) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < len && w.base.labels[j + 1].block.n >= 2)
            ++j;
        int run = j - i + 1;
        if (run == 2 || run == 4)
            d_after[j] = 1;
        i = j + 1;
    }
    std::vector<LabelledChain::Label> out;
    for (int i = 0; i < len; ++i) {
        out.push_back(w.base.labels[i]);
        if (bit_at[i] >= 0) {
            // the gadget covers its anchor, so it goes before any run patch
            int reps = 2 * bit_at[i] + 2;
            out.push_back({Poset::chain(1), -1});
            for (int k = 0; k < reps; ++k)
                out.push_back({Poset::antichain(2), -1});
            out.push_back({Poset::chain(1), -1});
        }
        if (d_after[i])
            out.push_back({Poset::antichain(2), -1});
    }
    return LabelledChain(std::move(out));
}

struct FamilyReport {
    std::vector<Poset> sums;
    std::vector<std::vector<std::uint8_t>> isomorphic; // symmetric, 1 on the diagonal
    bool all_pairs_noniso = false;
    std::vector<std::optional<bool>> embeds_in_base; // set when a deeper window is given
};

// Sums every window, certifies the sums pairwise non-isomorphic, and when a
// strictly larger un-modified base window is supplied, checks each sum embeds
// into that window's sum.
inline FamilyReport family_pairwise_noniso(const std::vector<LabelledChain>& windows,
                                           const std::optional<LabelledChain>& deeper_base =
                                               std::nullopt,
                                           int cap = default_embed_cap) {
    if (windows.empty())
        throw parse_error("family needs at least one window");
    FamilyReport out;
    for (auto& w : windows) {
        if (w.points() > cap)
            throw size_error("window sum exceeds the size cap");
        out.sums.push_back(sum_labelled_chain(w));
    }
    size_t m = out.sums.size();
    out.isomorphic.assign(m, std::vector<std::uint8_t>(m, 0));
    out.all_pairs_noniso = true;
    for (size_t i = 0; i < m; ++i) {
        out.isomorphic[i][i] = 1;
        for (size_t j = i + 1; j < m; ++j) {
            bool iso = is_isomorphic(out.sums[i], out.sums[j], cap);
            out.isomorphic[i][j] = out.isomorphic[j][i] = iso;
            if (iso)
                out.all_pairs_noniso = false;
        }
    }
    if (deeper_base) {
        if (deeper_base->points() > cap)
            throw size_error("base window sum exceeds the size cap");
        Poset base_sum = sum_labelled_chain(*deeper_base);
        for (auto& s : out.sums)
            out.embeds_in_base.push_back(find_embedding(s, base_sum, cap).has_value());
    }
    return out;
}

} // namespace nefree
