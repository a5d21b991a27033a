#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "poset.hpp"
#include "substitution.hpp"

// Induced-embedding oracle and exhaustive poset enumeration. Everything here
// is exponential by design and guarded by hard caps; the caps can be raised
// explicitly by callers that know what they are asking for.

namespace nefree {

inline constexpr int default_embed_cap = 12;

using Embedding = std::vector<int>; // map[source point] = target point

namespace detail {

struct PointDegrees {
    int down = 0, up = 0, perp = 0;
};

inline std::vector<PointDegrees> point_degrees(const Poset& p) {
    std::vector<PointDegrees> d(p.n);
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j) {
            if (i == j)
                continue;
            if (p.less(j, i))
                ++d[i].down;
            else if (p.less(i, j))
                ++d[i].up;
            else
                ++d[i].perp;
        }
    return d;
}

// Shared backtracking core. Source points are processed in decreasing
// comparability degree (ties by index), candidates in increasing index, so
// the first hit is deterministic: lexicographically least along that order.
template <typename Sink>
inline void embed_search(const Poset& p, const Poset& q, Sink&& sink) {
    auto pd = point_degrees(p);
    auto qd = point_degrees(q);
    std::vector<int> order(p.n);
    for (int i = 0; i < p.n; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int da = pd[a].down + pd[a].up, db = pd[b].down + pd[b].up;
        if (da != db)
            return da > db;
        return a < b;
    });
    std::vector<int> img(p.n, -1);
    std::uint64_t used = 0;
    bool stop = false;
    std::function<void(int)> rec = [&](int idx) {
        if (stop)
            return;
        if (idx == p.n) {
            stop = !sink(img);
            return;
        }
        int x = order[idx];
        for (int y = 0; y < q.n && !stop; ++y) {
            if (used >> y & 1)
                continue;
            // an induced embedding can only raise each degree
            if (pd[x].down > qd[y].down || pd[x].up > qd[y].up || pd[x].perp > qd[y].perp)
                continue;
            bool ok = true;
            for (int k = 0; k < idx && ok; ++k) {
                int x2 = order[k], y2 = img[x2];
                if (p.less(x, x2) != q.less(y, y2) || p.less(x2, x) != q.less(y2, y))
                    ok = false;
            }
            if (!ok)
                continue;
            img[x] = y;
            used |= std::uint64_t(1) << y;
            rec(idx + 1);
            used &= ~(std::uint64_t(1) << y);
            img[x] = -1;
        }
    };
    rec(0);
}

inline void check_embed_cap(const Poset& q, int cap) {
    if (q.n > 64)
        throw size_error("embedding oracle is limited to 64 target points");
    if (q.n > cap)
        throw size_error("embedding target exceeds the size cap");
}

} // namespace detail

// First embedding found by the deterministic backtracking order, if any.
inline std::optional<Embedding> find_embedding(const Poset& p, const Poset& q,
                                               int cap = default_embed_cap) {
    detail::check_embed_cap(q, cap);
    if (p.n > q.n)
        return std::nullopt;
    std::optional<Embedding> out;
    detail::embed_search(p, q, [&](const Embedding& f) {
        out = f;
        return false; // stop at the first hit
    });
    return out;
}

inline std::vector<Embedding> all_embeddings(const Poset& p, const Poset& q,
                                             int cap = default_embed_cap) {
    detail::check_embed_cap(q, cap);
    std::vector<Embedding> out;
    if (p.n > q.n)
        return out;
    detail::embed_search(p, q, [&](const Embedding& f) {
        out.push_back(f);
        return true;
    });
    return out;
}

inline bool is_embedding(const Poset& p, const Poset& q, const Embedding& f) {
    if ((int)f.size() != p.n)
        return false;
    std::uint64_t used = 0;
    for (int y : f) {
        if (y < 0 || y >= q.n || (used >> y & 1))
            return false;
        used |= std::uint64_t(1) << y;
    }
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j)
            if (i != j && p.less(i, j) != q.less(f[i], f[j]))
                return false;
    return true;
}

inline bool is_isomorphic(const Poset& p, const Poset& q, int cap = default_embed_cap) {
    if (p.n != q.n)
        return false;
    // cheap invariant: degree triples must match as multisets
    auto pd = detail::point_degrees(p);
    auto qd = detail::point_degrees(q);
    std::vector<std::pair<int, int>> ps, qs;
    for (int i = 0; i < p.n; ++i) {
        ps.emplace_back(pd[i].down, pd[i].up);
        qs.emplace_back(qd[i].down, qd[i].up);
    }
    std::sort(ps.begin(), ps.end());
    std::sort(qs.begin(), qs.end());
    if (ps != qs)
        return false;
    return find_embedding(p, q, cap).has_value();
}

// Finite equimorphy: embeddings both ways. Coincides with isomorphism on
// finite posets; kept as its own entry point because callers ask for it.
inline bool equimorphic(const Poset& p, const Poset& q, int cap = default_embed_cap) {
    return find_embedding(p, q, cap).has_value() && find_embedding(q, p, cap).has_value();
}

// Minimum relation-table string over all relabelings.
inline std::string canonical_key(const Poset& p) {
    if (p.n > 8)
        throw size_error("canonical key capped at 8 points");
    std::vector<int> perm(p.n);
    for (int i = 0; i < p.n; ++i)
        perm[i] = i;
    std::string best((size_t)p.n * p.n, '2');
    do {
        // walk cells in target order with early exit against the best so far
        bool smaller = false, bigger = false;
        size_t idx = 0;
        for (int i = 0; i < p.n && !bigger; ++i)
            for (int j = 0; j < p.n; ++j, ++idx) {
                char c = p.less(perm[i], perm[j]) ? '1' : '0';
                if (smaller)
                    best[idx] = c;
                else if (c < best[idx]) {
                    smaller = true;
                    best[idx] = c;
                } else if (c > best[idx]) {
                    bigger = true;
                    break;
                }
            }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Streams every poset on {0..n-1} by extending one point at a time: the new
// point picks a down-set and an up-set whose product is already forced. Each
// labeled poset arises exactly once. With up_to_iso set, only the first
// representative of each isomorphism class is emitted, in canonical form.
inline void for_each_poset(int n, bool up_to_iso, const std::function<void(const Poset&)>& fn) {
    if (n < 1)
        throw parse_error("enumeration needs at least one point");
    if (!up_to_iso && n > 6)
        throw size_error("labeled enumeration capped at 6 points");
    if (up_to_iso && n > 7)
        throw size_error("isomorphism-class enumeration capped at 7 points");
    std::vector<std::uint8_t> rel(n * n, 0);
    std::unordered_set<std::string> seen;
    std::function<void(int)> rec = [&](int k) {
        if (k == n) {
            Poset p(n, rel);
            if (up_to_iso) {
                auto key = canonical_key(p);
                if (!seen.insert(key).second)
                    return;
                std::vector<std::uint8_t> canon(key.begin(), key.end());
                for (auto& c : canon)
                    c -= '0';
                fn(Poset(n, std::move(canon)));
            } else {
                fn(p);
            }
            return;
        }
        for (std::uint32_t down = 0; down < (1u << k); ++down) {
            bool closed = true;
            for (int x = 0; x < k && closed; ++x)
                if (down >> x & 1)
                    for (int y = 0; y < k && closed; ++y)
                        if (rel[y * n + x] && !(down >> y & 1))
                            closed = false;
            if (!closed)
                continue;
            std::uint32_t rest = ~down & ((1u << k) - 1);
            for (std::uint32_t up = rest;; up = (up - 1) & rest) {
                bool ok = true;
                for (int x = 0; x < k && ok; ++x)
                    if (up >> x & 1)
                        for (int y = 0; y < k && ok; ++y)
                            if (rel[x * n + y] && !(up >> y & 1))
                                ok = false;
                for (int d = 0; d < k && ok; ++d)
                    if (down >> d & 1)
                        for (int u = 0; u < k && ok; ++u)
                            if ((up >> u & 1) && !rel[d * n + u])
                                ok = false;
                if (ok) {
                    for (int d = 0; d < k; ++d)
                        if (down >> d & 1)
                            rel[d * n + k] = 1;
                    for (int u = 0; u < k; ++u)
                        if (up >> u & 1)
                            rel[k * n + u] = 1;
                    rec(k + 1);
                    for (int d = 0; d < k; ++d)
                        rel[d * n + k] = 0;
                    for (int u = 0; u < k; ++u)
                        rel[k * n + u] = 0;
                }
                if (up == 0)
                    break;
            }
        }
    };
    rec(0);
}

inline std::vector<Poset> enumerate_posets(int n, bool up_to_iso = false) {
    std::vector<Poset> out;
    for_each_poset(n, up_to_iso, [&](const Poset& p) { out.push_back(p); });
    return out;
}

// A poset presented as a linear sum: the summands partition the points and
// every earlier summand lies entirely below every later one.
struct LinearSumDecomposition {
    Poset whole;
    std::vector<std::vector<int>> summands;
};

inline LinearSumDecomposition make_linear_sum(const std::vector<Poset>& blocks) {
    Poset whole = linear_sum(blocks);
    std::vector<std::vector<int>> summands;
    int off = 0;
    for (auto& b : blocks) {
        std::vector<int> s(b.n);
        for (int i = 0; i < b.n; ++i)
            s[i] = off + i;
        off += b.n;
        summands.push_back(std::move(s));
    }
    return {std::move(whole), std::move(summands)};
}

inline void validate_linear_sum(const LinearSumDecomposition& ls) {
    std::vector<int> owner(ls.whole.n, -1);
    for (int k = 0; k < (int)ls.summands.size(); ++k)
        for (int x : ls.summands[k]) {
            if (x < 0 || x >= ls.whole.n || owner[x] != -1)
                throw parse_error("summands must partition the points");
            owner[x] = k;
        }
    for (int x : owner)
        if (x == -1)
            throw parse_error("summands must partition the points");
    for (int k = 0; k < (int)ls.summands.size(); ++k)
        for (int l = k + 1; l < (int)ls.summands.size(); ++l)
            for (int x : ls.summands[k])
                for (int y : ls.summands[l])
                    if (!ls.whole.less(x, y))
                        throw parse_error("summands are not linearly stacked");
}

struct IndexMap {
    std::vector<int> map; // source summand -> target summand
    bool injective = false;
    bool order_preserving = false;
};

// The chain map induced by an embedding between linear sums whose summands
// all have connected complements of their comparability graphs. Under that
// hypothesis every source summand lands inside a single target summand.
inline IndexMap induced_index_map(const Embedding& f, const LinearSumDecomposition& p,
                                  const LinearSumDecomposition& q) {
    validate_linear_sum(p);
    validate_linear_sum(q);
    for (auto& s : p.summands)
        if (!has_ccgc(induced(p.whole, s).poset))
            throw ccgc_error("source summand without connected complement");
    for (auto& s : q.summands)
        if (!has_ccgc(induced(q.whole, s).poset))
            throw ccgc_error("target summand without connected complement");
    if (!is_embedding(p.whole, q.whole, f))
        throw parse_error("map is not an induced embedding");
    std::vector<int> owner(q.whole.n, -1);
    for (int k = 0; k < (int)q.summands.size(); ++k)
        for (int x : q.summands[k])
            owner[x] = k;
    IndexMap out;
    for (auto& s : p.summands) {
        int target = owner[f[s.front()]];
        for (int x : s)
            if (owner[f[x]] != target)
                throw structure_error("summand image split across target summands");
        out.map.push_back(target);
    }
    out.injective = true;
    out.order_preserving = true;
    for (size_t i = 0; i + 1 < out.map.size(); ++i) {
        if (out.map[i] >= out.map[i + 1])
            out.injective = false;
        if (out.map[i] > out.map[i + 1])
            out.order_preserving = false;
    }
    for (size_t i = 0; i < out.map.size(); ++i)
        for (size_t j = i + 1; j < out.map.size(); ++j)
            if (out.map[i] == out.map[j])
                out.injective = false;
    return out;
}

} // namespace nefree
