#pragma once

#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "substitution.hpp"

// Structured substitution expressions and their text grammar:
//
//   expr := c(K) | a(K) | n | p:PATH
//         | lin(expr,...) | dir(expr,...)
//         | sub(PATH; expr,...) | q[R0,...,Rk-1](expr,...)
//
// c/a are chains/antichains, n the four-point fence pattern, p: a poset file.
// lin/dir are linear/direct sums, sub substitutes blocks into a context poset
// read from a file, q[...] is the labelled-chain sum with letter list R.
// Zero-size c(0)/a(0) atoms are legal placeholders inside lin/dir: evaluation
// skips them and serialization drops them.

namespace nefree {

struct Expr {
    enum class Kind { chain, antichain, npat, literal, lin, dir, sub, lsum };
    Kind kind = Kind::chain;
    int size = 0;                 // chain/antichain
    std::vector<Expr> children;   // lin/dir/sub/lsum
    std::optional<Poset> context; // literal (the poset), sub (the context)
    std::string path;             // literal/sub source path, for serialization
    std::vector<std::int8_t> r;   // lsum letters
    std::vector<int> points;      // original points, filled by canonical forms

    static Expr chain_atom(int k) {
        Expr e;
        e.kind = Kind::chain;
        e.size = k;
        return e;
    }
    static Expr antichain_atom(int k) {
        Expr e;
        e.kind = Kind::antichain;
        e.size = k;
        return e;
    }
};

using PosetLoader = std::function<Poset(const std::string&)>;

inline Poset eval(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::chain:
        if (e.size < 1)
            throw parse_error("empty chain atom outside a sum");
        return Poset::chain(e.size);
    case Expr::Kind::antichain:
        if (e.size < 1)
            throw parse_error("empty antichain atom outside a sum");
        return Poset::antichain(e.size);
    case Expr::Kind::npat:
        return n_pattern();
    case Expr::Kind::literal:
        if (!e.context)
            throw parse_error("literal atom without a poset");
        return *e.context;
    case Expr::Kind::lin:
    case Expr::Kind::dir: {
        std::vector<Poset> blocks;
        for (auto& c : e.children) {
            if ((c.kind == Expr::Kind::chain || c.kind == Expr::Kind::antichain) && c.size == 0)
                continue; // placeholder
            blocks.push_back(eval(c));
        }
        if (blocks.empty())
            throw parse_error("sum with no non-empty blocks");
        return e.kind == Expr::Kind::lin ? linear_sum(blocks) : direct_sum(blocks);
    }
    case Expr::Kind::sub: {
        if (!e.context)
            throw parse_error("substitution without a context");
        std::vector<Poset> blocks;
        for (auto& c : e.children)
            blocks.push_back(eval(c));
        return poset_substitute(*e.context, blocks);
    }
    case Expr::Kind::lsum: {
        std::vector<LabelledChain::Label> labels;
        for (size_t i = 0; i < e.children.size(); ++i)
            labels.push_back({eval(e.children[i]), e.r[i]});
        return sum_labelled_chain(LabelledChain(std::move(labels)));
    }
    }
    throw parse_error("unknown expression kind");
}

// Evaluation that also yields, per result point, the original point recorded
// on the atom it came from (-1 where atoms carry no points). Lets canonical
// forms be checked for exact reconstruction, not just isomorphism.
inline std::pair<Poset, std::vector<int>> eval_with_points(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::chain:
    case Expr::Kind::antichain:
    case Expr::Kind::npat:
    case Expr::Kind::literal: {
        Poset p = eval(e);
        std::vector<int> pts(p.n, -1);
        if ((int)e.points.size() == p.n)
            pts = e.points;
        return {std::move(p), std::move(pts)};
    }
    case Expr::Kind::lin:
    case Expr::Kind::dir: {
        std::vector<Poset> blocks;
        std::vector<int> pts;
        for (auto& c : e.children) {
            if ((c.kind == Expr::Kind::chain || c.kind == Expr::Kind::antichain) && c.size == 0)
                continue;
            auto [bp, bpts] = eval_with_points(c);
            blocks.push_back(std::move(bp));
            pts.insert(pts.end(), bpts.begin(), bpts.end());
        }
        if (blocks.empty())
            throw parse_error("sum with no non-empty blocks");
        Poset whole = e.kind == Expr::Kind::lin ? linear_sum(blocks) : direct_sum(blocks);
        return {std::move(whole), std::move(pts)};
    }
    default: {
        Poset p = eval(e);
        return {std::move(p), std::vector<int>(p.n, -1)};
    }
    }
}

namespace detail {

struct ExprParser {
    const std::string& s;
    size_t pos = 0;
    const PosetLoader* loader;

    void skip() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos]))
            ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw parse_error(std::string("expected '") + c + "' in expression");
    }
    int integer() {
        skip();
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
            neg = s[pos] == '-';
            ++pos;
        }
        if (pos >= s.size() || !std::isdigit((unsigned char)s[pos]))
            throw parse_error("expected an integer in expression");
        long v = 0;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            v = v * 10 + (s[pos] - '0');
            if (v > 1000000)
                throw parse_error("integer out of range in expression");
            ++pos;
        }
        return neg ? (int)-v : (int)v;
    }
    std::string word() {
        skip();
        size_t start = pos;
        while (pos < s.size() && std::isalpha((unsigned char)s[pos]))
            ++pos;
        return s.substr(start, pos - start);
    }
    std::string path_token(char stop) {
        skip();
        size_t start = pos;
        while (pos < s.size() && s[pos] != stop && s[pos] != ',' && s[pos] != ')' &&
               !std::isspace((unsigned char)s[pos]))
            ++pos;
        if (pos == start)
            throw parse_error("expected a file path in expression");
        return s.substr(start, pos - start);
    }
    Poset load(const std::string& p) {
        if (!loader || !*loader)
            throw parse_error("file atoms are not available here");
        return (*loader)(p);
    }
    std::vector<Expr> args() {
        std::vector<Expr> out;
        out.push_back(expr());
        while (eat(','))
            out.push_back(expr());
        return out;
    }

    Expr expr() {
        skip();
        if (pos >= s.size())
            throw parse_error("unexpected end of expression");
        if (s.compare(pos, 2, "p:") == 0) {
            pos += 2;
            Expr e;
            e.kind = Expr::Kind::literal;
            e.path = path_token(';');
            e.context = load(e.path);
            return e;
        }
        std::string w = word();
        if (w == "c" || w == "a") {
            expect('(');
            int k = integer();
            if (k < 0)
                throw parse_error("atom size must be non-negative");
            expect(')');
            return w == "c" ? Expr::chain_atom(k) : Expr::antichain_atom(k);
        }
        if (w == "n") {
            Expr e;
            e.kind = Expr::Kind::npat;
            return e;
        }
        if (w == "lin" || w == "dir") {
            expect('(');
            Expr e;
            e.kind = w == "lin" ? Expr::Kind::lin : Expr::Kind::dir;
            e.children = args();
            expect(')');
            return e;
        }
        if (w == "sub") {
            expect('(');
            Expr e;
            e.kind = Expr::Kind::sub;
            e.path = path_token(';');
            e.context = load(e.path);
            expect(';');
            e.children = args();
            expect(')');
            if ((int)e.children.size() != e.context->n)
                throw arity_error("substitution needs one block per context point");
            return e;
        }
        if (w == "q") {
            expect('[');
            Expr e;
            e.kind = Expr::Kind::lsum;
            e.r.push_back((std::int8_t)integer());
            while (eat(','))
                e.r.push_back((std::int8_t)integer());
            expect(']');
            expect('(');
            e.children = args();
            expect(')');
            for (auto v : e.r)
                if (v < -1 || v > 1)
                    throw parse_error("letter out of alphabet");
            if (e.r.size() != e.children.size())
                throw arity_error("one letter per block expected");
            return e;
        }
        throw parse_error("unknown expression head '" + w + "'");
    }
};

} // namespace detail

inline Expr parse_expr(const std::string& text, const PosetLoader& loader = nullptr) {
    detail::ExprParser p{text, 0, &loader};
    Expr e = p.expr();
    p.skip();
    if (p.pos != text.size())
        throw parse_error("trailing characters after expression");
    return e;
}

inline std::string serialize_expr(const Expr& e) {
    auto join = [](const std::vector<Expr>& children) {
        std::string out;
        bool first = true;
        for (auto& c : children) {
            if ((c.kind == Expr::Kind::chain || c.kind == Expr::Kind::antichain) && c.size == 0)
                continue; // placeholders stay internal
            if (!first)
                out += ',';
            out += serialize_expr(c);
            first = false;
        }
        return out;
    };
    switch (e.kind) {
    case Expr::Kind::chain:
        return "c(" + std::to_string(e.size) + ")";
    case Expr::Kind::antichain:
        return "a(" + std::to_string(e.size) + ")";
    case Expr::Kind::npat:
        return "n";
    case Expr::Kind::literal:
        return "p:" + e.path;
    case Expr::Kind::lin:
        return "lin(" + join(e.children) + ")";
    case Expr::Kind::dir:
        return "dir(" + join(e.children) + ")";
    case Expr::Kind::sub:
        return "sub(" + e.path + ";" + join(e.children) + ")";
    case Expr::Kind::lsum: {
        std::string out = "q[";
        for (size_t i = 0; i < e.r.size(); ++i) {
            if (i)
                out += ',';
            out += std::to_string((int)e.r[i]);
        }
        out += "](";
        out += join(e.children);
        out += ')';
        return out;
    }
    }
    throw parse_error("unknown expression kind");
}

inline std::vector<int> expr_points(const Expr& e) {
    std::vector<int> out = e.points;
    for (auto& c : e.children) {
        auto sub = expr_points(c);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace nefree
