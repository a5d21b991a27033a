#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "decomposition.hpp"
#include "poset.hpp"

// Text formats. Poset files look like
//
//   poset 4
//   # which pairs are strict is up to the writer; parsing closes transitively
//   0 1
//   2 1
//   2 3
//
// Serialization emits only the covering pairs. JSON payloads all carry
// "schema": 1.

namespace nefree {

inline Poset parse_poset_file(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1;
    std::vector<std::pair<int, int>> pairs;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        std::istringstream ls(line);
        if (n < 0) {
            std::string word;
            if (!(ls >> word))
                continue; // leading blank or comment line
            int count;
            if (word != "poset" || !(ls >> count))
                throw parse_error("line " + std::to_string(lineno) +
                                  ": expected header 'poset <n>'");
            if (count < 1)
                throw parse_error("poset needs at least one point");
            std::string extra;
            if (ls >> extra)
                throw parse_error("line " + std::to_string(lineno) + ": trailing tokens");
            n = count;
            continue;
        }
        int i, j;
        if (!(ls >> i))
            continue; // blank or comment line
        if (!(ls >> j))
            throw parse_error("line " + std::to_string(lineno) + ": expected '<i> <j>'");
        std::string extra;
        if (ls >> extra)
            throw parse_error("line " + std::to_string(lineno) + ": trailing tokens");
        pairs.emplace_back(i, j);
    }
    if (n < 0)
        throw parse_error("missing 'poset <n>' header");
    return Poset::from_strict_pairs(n, pairs);
}

inline std::string serialize_poset_file(const Poset& p) {
    std::ostringstream out;
    out << "poset " << p.n << "\n";
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j) {
            if (!p.less(i, j))
                continue;
            bool cover = true;
            for (int k = 0; k < p.n && cover; ++k)
                if (p.less(i, k) && p.less(k, j))
                    cover = false;
            if (cover)
                out << i << " " << j << "\n";
        }
    return out.str();
}

inline nlohmann::ordered_json decomp_tree_json(const DecompTree& t) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["n"] = t.n;
    j["nodes"] = t.nodes;
    j["parent"] = t.parent;
    auto vals = nlohmann::ordered_json::array();
    for (auto& v : t.value) {
        if (v.has_value())
            vals.push_back(node_value_name(*v));
        else
            vals.push_back(nullptr);
    }
    j["valuation"] = vals;
    return j;
}

inline std::string decomp_tree_dot(const DecompTree& t) {
    std::ostringstream out;
    out << "digraph decomposition {\n";
    for (size_t i = 0; i < t.nodes.size(); ++i) {
        out << "  n" << i << " [label=\"{";
        for (size_t k = 0; k < t.nodes[i].size(); ++k) {
            if (k)
                out << ",";
            out << t.nodes[i][k];
        }
        out << "}";
        if (t.value[i].has_value())
            out << ":" << node_value_name(*t.value[i]);
        out << "\"];\n";
    }
    for (size_t i = 0; i < t.nodes.size(); ++i)
        if (t.parent[i] >= 0)
            out << "  n" << t.parent[i] << " -> n" << i << ";\n";
    out << "}\n";
    return out.str();
}

inline std::string decomp_tree_text(const DecompTree& t) {
    std::ostringstream out;
    for (size_t i = 0; i < t.nodes.size(); ++i) {
        out << i << ": {";
        for (size_t k = 0; k < t.nodes[i].size(); ++k) {
            if (k)
                out << ",";
            out << t.nodes[i][k];
        }
        out << "}";
        if (t.value[i].has_value())
            out << " " << node_value_name(*t.value[i]);
        if (t.parent[i] >= 0)
            out << " parent=" << t.parent[i];
        out << "\n";
    }
    return out.str();
}

} // namespace nefree
