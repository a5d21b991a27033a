#pragma once

#include <optional>
#include <vector>

#include "poset.hpp"

// Modular decomposition over binary structures, by brute-force subset
// enumeration. The 2^n scan *is* the intended semantics here (hence the hard
// n <= 20 cap); anything faster would have to be differentially tested
// against this.

namespace nefree {

namespace detail {

using mask_t = std::uint32_t;

inline constexpr int module_scan_cap = 20;

inline mask_t to_mask(const std::vector<int>& points, int n) {
    mask_t m = 0;
    for (int p : points) {
        if (p < 0 || p >= n)
            throw index_error("point out of range");
        m |= mask_t(1) << p;
    }
    return m;
}

inline std::vector<int> from_mask(mask_t m, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (m >> i & 1)
            out.push_back(i);
    return out;
}

inline int popcount(mask_t m) { return __builtin_popcount(m); }

// Module test on a point mask: every outside point sees all of M alike.
inline bool is_module_mask(const BinaryStructure& b, mask_t m) {
    int first = -1;
    for (int i = 0; i < b.n; ++i)
        if (m >> i & 1) {
            first = i;
            break;
        }
    if (first < 0)
        return true; // empty set
    for (int x = 0; x < b.n; ++x) {
        if (m >> x & 1)
            continue;
        for (int y = first + 1; y < b.n; ++y) {
            if (!(m >> y & 1))
                continue;
            if (b.at(x, y) != b.at(x, first) || b.at(y, x) != b.at(first, x))
                return false;
        }
    }
    return true;
}

inline std::vector<mask_t> all_module_masks(const BinaryStructure& b) {
    if (b.n > module_scan_cap)
        throw size_error("module enumeration capped at 20 points");
    std::vector<mask_t> out;
    mask_t full = b.n == 32 ? ~mask_t(0) : (mask_t(1) << b.n) - 1;
    for (mask_t m = 0; m <= full; ++m)
        if (is_module_mask(b, m))
            out.push_back(m);
    return out;
}

// Strong: overlaps no module without nesting. Non-empty by convention.
inline std::vector<mask_t> strong_module_masks(const BinaryStructure& b) {
    auto mods = all_module_masks(b);
    std::vector<mask_t> out;
    for (mask_t m : mods) {
        if (m == 0)
            continue;
        bool strong = true;
        for (mask_t other : mods) {
            if ((m & other) == 0)
                continue;
            if ((m & other) != m && (m & other) != other) {
                strong = false;
                break;
            }
        }
        if (strong)
            out.push_back(m);
    }
    return out;
}

// Maximal strong modules strictly inside a; they partition a.
inline std::vector<mask_t> class_masks(const std::vector<mask_t>& strong, mask_t a) {
    std::vector<mask_t> inside;
    for (mask_t s : strong)
        if (s != a && (s & a) == s)
            inside.push_back(s);
    std::vector<mask_t> maximal;
    for (mask_t s : inside) {
        bool top = true;
        for (mask_t t : inside)
            if (t != s && (s & t) == s) {
                top = false;
                break;
            }
        if (top)
            maximal.push_back(s);
    }
    mask_t covered = 0;
    for (mask_t s : maximal) {
        if (covered & s)
            throw structure_error("component classes overlap");
        covered |= s;
    }
    if (covered != a)
        throw structure_error("component classes do not cover");
    return maximal;
}

inline void sort_point_sets(std::vector<std::vector<int>>& sets) {
    std::sort(sets.begin(), sets.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size())
            return x.size() < y.size();
        return x < y;
    });
}

} // namespace detail

inline bool is_module(const BinaryStructure& b, const std::vector<int>& points) {
    if (b.n <= 32)
        return detail::is_module_mask(b, detail::to_mask(points, b.n));
    throw size_error("module test capped at 32 points");
}

inline bool is_module(const Poset& p, const std::vector<int>& points) {
    return is_module(BinaryStructure::from_poset(p), points);
}

// Every module, the empty set included, sorted by (size, lex).
inline std::vector<std::vector<int>> all_modules(const BinaryStructure& b) {
    std::vector<std::vector<int>> out;
    for (auto m : detail::all_module_masks(b))
        out.push_back(detail::from_mask(m, b.n));
    detail::sort_point_sets(out);
    return out;
}

inline std::vector<std::vector<int>> strong_modules(const BinaryStructure& b) {
    std::vector<std::vector<int>> out;
    for (auto m : detail::strong_module_masks(b))
        out.push_back(detail::from_mask(m, b.n));
    detail::sort_point_sets(out);
    return out;
}

// Smallest strong module containing the seed set. Strong supersets of a
// non-empty set are totally ordered by inclusion, so the minimum exists.
inline std::vector<int> robust_hull(const BinaryStructure& b, const std::vector<int>& seed) {
    if (seed.empty())
        throw parse_error("robust hull needs a non-empty seed");
    auto seed_mask = detail::to_mask(seed, b.n);
    auto strong = detail::strong_module_masks(b);
    detail::mask_t best = 0;
    int best_size = b.n + 1;
    for (auto s : strong)
        if ((s & seed_mask) == seed_mask && detail::popcount(s) < best_size) {
            best = s;
            best_size = detail::popcount(s);
        }
    if (best == 0)
        throw structure_error("no strong superset found");
    return detail::from_mask(best, b.n);
}

// Singletons plus hulls of pairs. On finite structures this coincides with
// strong_modules; the redundancy is kept as a cross-check surface.
inline std::vector<std::vector<int>> robust_modules(const BinaryStructure& b) {
    auto strong = detail::strong_module_masks(b);
    std::vector<detail::mask_t> out;
    auto add = [&](detail::mask_t m) {
        for (auto o : out)
            if (o == m)
                return;
        out.push_back(m);
    };
    for (int i = 0; i < b.n; ++i)
        add(detail::mask_t(1) << i);
    for (int i = 0; i < b.n; ++i)
        for (int j = i + 1; j < b.n; ++j) {
            detail::mask_t seed = (detail::mask_t(1) << i) | (detail::mask_t(1) << j);
            detail::mask_t best = 0;
            int best_size = b.n + 1;
            for (auto s : strong)
                if ((s & seed) == seed && detail::popcount(s) < best_size) {
                    best = s;
                    best_size = detail::popcount(s);
                }
            if (best == 0)
                throw structure_error("no strong superset found");
            add(best);
        }
    std::vector<std::vector<int>> sets;
    for (auto m : out)
        sets.push_back(detail::from_mask(m, b.n));
    detail::sort_point_sets(sets);
    return sets;
}

// Classes of the coarsest proper congruence inside a strong module: the
// maximal strong modules strictly below it. Sorted by minimum point.
inline std::vector<std::vector<int>> component_partition(const BinaryStructure& b,
                                                         const std::vector<int>& a) {
    auto a_mask = detail::to_mask(a, b.n);
    if (detail::popcount(a_mask) < 2)
        throw not_strong_error("partition needs at least two points");
    auto strong = detail::strong_module_masks(b);
    bool found = false;
    for (auto s : strong)
        if (s == a_mask) {
            found = true;
            break;
        }
    if (!found)
        throw not_strong_error("partition needs a strong module");
    auto classes = detail::class_masks(strong, a_mask);
    std::vector<std::vector<int>> out;
    for (auto c : classes)
        out.push_back(detail::from_mask(c, b.n));
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return out;
}

struct QuotientType {
    enum class Tag { constant, linear, prime };
    Tag tag = Tag::prime;
    std::int8_t value = 0; // the letter, meaningful only for constant

    friend bool operator==(const QuotientType&, const QuotientType&) = default;
};

struct GallaiQuotient {
    std::vector<std::vector<int>> classes; // sorted by minimum original point
    BinaryStructure structure;             // one point per class, same order
    QuotientType type;
};

namespace detail {

inline QuotientType quotient_type(const BinaryStructure& q) {
    int k = q.n;
    bool constant = true;
    std::int8_t first = q.at(0, 1);
    std::vector<std::int8_t> letters;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j)
                continue;
            if (q.at(i, j) != first)
                constant = false;
            bool seen = false;
            for (auto l : letters)
                seen |= l == q.at(i, j);
            if (!seen)
                letters.push_back(q.at(i, j));
        }
    if (constant)
        return {QuotientType::Tag::constant, first};
    if (letters.size() == 2) {
        // linear: one letter spells out a strict total order, the other its
        // reverse
        std::int8_t alpha = letters[0];
        for (int round = 0; round < 2; ++round) {
            bool linear = true;
            for (int i = 0; i < k && linear; ++i)
                for (int j = 0; j < k && linear; ++j) {
                    if (i == j)
                        continue;
                    bool ij = q.at(i, j) == alpha;
                    bool ji = q.at(j, i) == alpha;
                    if (ij == ji)
                        linear = false;
                }
            for (int i = 0; i < k && linear; ++i)
                for (int j = 0; j < k && linear; ++j)
                    for (int l = 0; l < k && linear; ++l) {
                        if (i == j || j == l || i == l)
                            continue;
                        if (q.at(i, j) == alpha && q.at(j, l) == alpha && q.at(i, l) != alpha)
                            linear = false;
                    }
            if (linear)
                return {QuotientType::Tag::linear, 0};
            alpha = letters[1];
        }
    }
    return {QuotientType::Tag::prime, 0};
}

} // namespace detail

inline GallaiQuotient gallai_quotient(const BinaryStructure& b, const std::vector<int>& a) {
    auto classes = component_partition(b, a);
    int k = (int)classes.size();
    if (k < 2)
        throw structure_error("quotient needs at least two classes");
    std::vector<std::int8_t> table(k * k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j)
                continue;
            std::int8_t letter = b.at(classes[i][0], classes[j][0]);
            for (int x : classes[i])
                for (int y : classes[j])
                    if (b.at(x, y) != letter)
                        throw structure_error("quotient letter not uniform across classes");
            table[i * k + j] = letter;
        }
    BinaryStructure q(k, std::move(table));
    auto type = detail::quotient_type(q);
    return {std::move(classes), std::move(q), type};
}

inline GallaiQuotient gallai_quotient(const Poset& p, const std::vector<int>& a) {
    return gallai_quotient(BinaryStructure::from_poset(p), a);
}

// Internal node values of the decomposition tree. `series` covers both the
// poset linear case (quotient letters {-1,+1}, printed "pm1") and the graph
// complete case (constant letter 1); `parallel` is the constant-0 case for
// both encodings, printed "0".
enum class NodeValue { parallel, series, prime };

inline const char* node_value_name(NodeValue v) {
    switch (v) {
    case NodeValue::parallel:
        return "0";
    case NodeValue::series:
        return "pm1";
    default:
        return "prime";
    }
}

struct DecompTree {
    int n = 0;
    // nodes sorted by (size desc, points lex asc); nodes[0] is the root
    std::vector<std::vector<int>> nodes;
    std::vector<int> parent; // -1 for the root
    std::vector<std::vector<int>> children;
    std::vector<std::optional<NodeValue>> value; // nullopt on leaves

    int root() const { return 0; }
    bool leaf(int i) const { return nodes[i].size() == 1; }
};

// Robust modules ordered by reverse inclusion. Every internal node carries
// the type of its Gallai quotient.
inline DecompTree decomposition_tree(const BinaryStructure& b) {
    auto strong = detail::strong_module_masks(b);
    DecompTree t;
    t.n = b.n;
    for (auto m : strong)
        t.nodes.push_back(detail::from_mask(m, b.n));
    std::sort(t.nodes.begin(), t.nodes.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size())
            return x.size() > y.size();
        return x < y;
    });
    int m = (int)t.nodes.size();
    t.parent.assign(m, -1);
    t.children.assign(m, {});
    t.value.assign(m, std::nullopt);
    std::vector<detail::mask_t> masks;
    for (auto& pts : t.nodes)
        masks.push_back(detail::to_mask(pts, b.n));
    for (int i = 1; i < m; ++i) {
        // strict supersets are totally ordered; the first found scanning
        // upward by size is the smallest
        for (int j = i - 1; j >= 0; --j)
            if (masks[j] != masks[i] && (masks[i] & masks[j]) == masks[i]) {
                t.parent[i] = j;
                break;
            }
        if (t.parent[i] < 0)
            throw structure_error("non-root node without a parent");
        t.children[t.parent[i]].push_back(i);
    }
    for (auto& ch : t.children)
        std::sort(ch.begin(), ch.end(),
                  [&](int x, int y) { return t.nodes[x].front() < t.nodes[y].front(); });
    for (int i = 0; i < m; ++i) {
        if (t.nodes[i].size() < 2)
            continue;
        auto q = gallai_quotient(b, t.nodes[i]);
        switch (q.type.tag) {
        case QuotientType::Tag::constant:
            t.value[i] = q.type.value == 0 ? NodeValue::parallel : NodeValue::series;
            break;
        case QuotientType::Tag::linear:
            t.value[i] = NodeValue::series;
            break;
        case QuotientType::Tag::prime:
            t.value[i] = NodeValue::prime;
            break;
        }
    }
    return t;
}

inline DecompTree decomposition_tree(const Poset& p) {
    return decomposition_tree(BinaryStructure::from_poset(p));
}

// Finite reading of density: along every branch the internal values strictly
// alternate, i.e. no internal node repeats its internal parent's value.
inline bool check_dense_valuation(const DecompTree& t) {
    for (int i = 0; i < (int)t.nodes.size(); ++i) {
        if (!t.value[i].has_value())
            continue;
        int p = t.parent[i];
        if (p >= 0 && t.value[p].has_value() && *t.value[p] == *t.value[i])
            return false;
    }
    return true;
}

} // namespace nefree
