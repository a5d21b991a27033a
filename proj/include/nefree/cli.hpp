#pragma once

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "classification.hpp"
#include "generators.hpp"
#include "io.hpp"

// Command-line surface. Poset arguments are interchangeable: "gen:<name>",
// "expr:<text>", a file path, or bare expression text. Exit codes: 0/1 carry
// boolean verdicts, 2 means unparseable input, 3 a size cap, 4 a violated
// precondition.

namespace nefree {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline PosetLoader file_loader() {
    return [](const std::string& path) { return parse_poset_file(read_file(path)); };
}

inline Poset resolve_poset(const std::string& spec) {
    if (spec.rfind("gen:", 0) == 0)
        return gen_named(spec.substr(4));
    if (spec.rfind("expr:", 0) == 0)
        return eval(parse_expr(spec.substr(5), file_loader()));
    if (std::ifstream probe(spec); probe)
        return parse_poset_file(read_file(spec));
    return eval(parse_expr(spec, file_loader()));
}

inline int env_cap() {
    if (const char* v = std::getenv("NEFREE_SIZE_CAP")) {
        char* end = nullptr;
        long n = std::strtol(v, &end, 10);
        if (end && *end == '\0' && n >= 1 && n <= 64)
            return (int)n;
    }
    return default_embed_cap;
}

inline LabelledChain chain_from_expr(const std::string& text) {
    Expr e = parse_expr(text, file_loader());
    if (e.kind != Expr::Kind::lsum)
        throw parse_error("window must be a q[...](...)  labelled chain");
    std::vector<LabelledChain::Label> labels;
    for (size_t i = 0; i < e.children.size(); ++i)
        labels.push_back({eval(e.children[i]), e.r[i]});
    return LabelledChain(std::move(labels));
}

inline const char* classification_tag_name(ClassificationTag t) {
    switch (t) {
    case ClassificationTag::singleton:
        return "singleton";
    case ClassificationTag::direct_sum:
        return "direct-sum";
    default:
        return "linear-sum";
    }
}

inline int run_check(const std::string& input, bool nfree, bool cograph, bool ccgc,
                     bool connected, std::ostream& out) {
    Poset p = resolve_poset(input);
    std::vector<std::pair<std::string, bool>> results;
    if (nfree)
        results.emplace_back("nfree", is_nfree(p));
    if (cograph)
        results.emplace_back("cograph", is_cograph(comparability_graph(p)));
    if (ccgc)
        results.emplace_back("ccgc", has_ccgc(p));
    if (connected)
        results.emplace_back("connected", is_connected(p));
    if (results.empty())
        results.emplace_back("nfree", is_nfree(p));
    bool all = true;
    for (auto& [name, value] : results) {
        if (results.size() == 1)
            out << (value ? "true" : "false") << "\n";
        else
            out << name << ": " << (value ? "true" : "false") << "\n";
        all = all && value;
    }
    return all ? 0 : 1;
}

inline int run_family(const std::string& base_text, int anchors, const std::string& bits,
                      bool linear, const std::string& deeper_text, int cap, std::ostream& out) {
    std::string text = base_text;
    auto ann = text.find("anchors:");
    if (ann != std::string::npos) {
        anchors = std::stoi(text.substr(ann + 8));
        text = text.substr(0, ann);
    }
    if (anchors < 0)
        throw parse_error("missing anchor count (anchors:<d> or --anchors)");
    TruncationWindow window(chain_from_expr(text), anchors);
    std::vector<LabelledChain> modified;
    std::vector<std::string> patterns;
    {
        std::istringstream ss(bits);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty())
                patterns.push_back(tok);
    }
    if (patterns.empty())
        throw parse_error("no bit patterns given");
    for (auto& pat : patterns) {
        BitPattern f;
        for (char c : pat) {
            if (c != '0' && c != '1')
                throw parse_error("bit patterns are strings over 0/1");
            f.push_back(c == '1');
        }
        modified.push_back(linear ? cf_linear_window(window, f) : cf_window(window, f));
    }
    std::optional<LabelledChain> deeper;
    if (!deeper_text.empty())
        deeper = chain_from_expr(deeper_text);
    auto report = family_pairwise_noniso(modified, deeper, cap);
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["patterns"] = patterns;
    auto sizes = nlohmann::ordered_json::array();
    for (auto& s : report.sums)
        sizes.push_back(s.n);
    j["sizes"] = sizes;
    j["isomorphic"] = report.isomorphic;
    j["pairwise_noniso"] = report.all_pairs_noniso;
    if (deeper) {
        auto emb = nlohmann::ordered_json::array();
        for (auto& e : report.embeds_in_base)
            emb.push_back(e.value());
        j["embeds_in_base"] = emb;
    } else {
        j["embeds_in_base"] = nullptr;
    }
    out << j.dump(2) << "\n";
    return 0;
}

} // namespace detail

inline int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                        std::ostream& err) {
    CLI::App app{"fence-free poset toolkit"};
    app.require_subcommand(1);
    int cap = detail::env_cap();

    auto* c_check = app.add_subcommand("check", "evaluate predicates on a poset");
    std::string check_input;
    bool f_nfree = false, f_cograph = false, f_ccgc = false, f_connected = false;
    c_check->add_option("input", check_input, "poset (file, expr, gen:, expr:)")->required();
    c_check->add_flag("--nfree", f_nfree, "no induced four-point fence");
    c_check->add_flag("--cograph", f_cograph, "comparability graph has no induced P4");
    c_check->add_flag("--ccgc", f_ccgc, "complement of the comparability graph is connected");
    c_check->add_flag("--connected", f_connected, "comparability graph is connected");

    auto* c_decompose = app.add_subcommand("decompose", "print the decomposition tree");
    std::string dec_input;
    bool dec_json = false, dec_dot = false;
    c_decompose->add_option("input", dec_input)->required();
    c_decompose->add_flag("--json", dec_json);
    c_decompose->add_flag("--dot", dec_dot);

    auto* c_classify = app.add_subcommand("classify", "singleton / direct-sum / linear-sum");
    std::string cls_input;
    bool cls_json = false;
    c_classify->add_option("input", cls_input)->required();
    c_classify->add_flag("--json", cls_json);

    auto* c_embed = app.add_subcommand("embed", "find an induced embedding");
    std::string emb_a, emb_b;
    c_embed->add_option("source", emb_a)->required();
    c_embed->add_option("target", emb_b)->required();
    c_embed->add_option("--cap", cap, "size cap override");

    auto* c_iso = app.add_subcommand("iso", "isomorphism test");
    std::string iso_a, iso_b;
    c_iso->add_option("first", iso_a)->required();
    c_iso->add_option("second", iso_b)->required();
    c_iso->add_option("--cap", cap);

    auto* c_gen = app.add_subcommand("gen", "emit a named poset as a poset file");
    std::string gen_name;
    c_gen->add_option("name", gen_name, "n, c(K), a(K), A(K), B(K)")->required();

    auto* c_canon = app.add_subcommand("canon", "canonical chain/antichain form");
    std::string canon_input;
    c_canon->add_option("input", canon_input)->required();

    auto* c_siblings = app.add_subcommand("siblings", "equimorphy sibling report");
    std::string sib_input;
    c_siblings->add_option("input", sib_input)->required();

    auto* c_family = app.add_subcommand("family", "window-gadget family report");
    std::string fam_base, fam_bits, fam_deeper;
    int fam_anchors = -1;
    bool fam_linear = false;
    c_family->add_option("--base", fam_base, "window as q[...](...), 'anchors:<d>' allowed")
        ->required();
    c_family->add_option("--bits", fam_bits, "comma-separated 0/1 patterns")->required();
    c_family->add_option("--anchors", fam_anchors, "anchor count when not annotated");
    c_family->add_flag("--linear", fam_linear, "use the all-(-1) regime gadget");
    c_family->add_option("--deeper", fam_deeper, "un-modified larger window to embed into");
    c_family->add_option("--cap", cap);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*c_check)
            return detail::run_check(check_input, f_nfree, f_cograph, f_ccgc, f_connected, out);
        if (*c_decompose) {
            auto tree = decomposition_tree(detail::resolve_poset(dec_input));
            if (dec_json)
                out << decomp_tree_json(tree).dump(2) << "\n";
            else if (dec_dot)
                out << decomp_tree_dot(tree);
            else
                out << decomp_tree_text(tree);
            return 0;
        }
        if (*c_classify) {
            auto cls = classify(detail::resolve_poset(cls_input));
            if (cls_json) {
                nlohmann::ordered_json j;
                j["schema"] = 1;
                j["tag"] = detail::classification_tag_name(cls.tag);
                j["parts"] = cls.parts;
                out << j.dump(2) << "\n";
            } else {
                out << detail::classification_tag_name(cls.tag) << "\n";
                for (size_t i = 0; i < cls.parts.size(); ++i) {
                    out << "part " << i << ": {";
                    for (size_t k = 0; k < cls.parts[i].size(); ++k) {
                        if (k)
                            out << ",";
                        out << cls.parts[i][k];
                    }
                    out << "}\n";
                }
            }
            return 0;
        }
        if (*c_embed) {
            Poset a = detail::resolve_poset(emb_a), b = detail::resolve_poset(emb_b);
            auto f = find_embedding(a, b, cap);
            if (!f) {
                out << "false\n";
                return 1;
            }
            out << "true\n";
            for (int i = 0; i < a.n; ++i)
                out << i << " -> " << (*f)[i] << "\n";
            return 0;
        }
        if (*c_iso) {
            Poset a = detail::resolve_poset(iso_a), b = detail::resolve_poset(iso_b);
            // size-equal induced embeddings are bijective, so one direction
            // is a full isomorphism witness
            std::optional<Embedding> f;
            if (a.n == b.n)
                f = find_embedding(a, b, cap);
            if (!f) {
                out << "false\n";
                return 1;
            }
            out << "true\n";
            for (int i = 0; i < a.n; ++i)
                out << i << " -> " << (*f)[i] << "\n";
            return 0;
        }
        if (*c_gen) {
            out << serialize_poset_file(gen_named(gen_name));
            return 0;
        }
        if (*c_canon) {
            out << serialize_expr(canonical_chain_antichain_form(detail::resolve_poset(canon_input)))
                << "\n";
            return 0;
        }
        if (*c_siblings) {
            auto rep = sibling_report(detail::resolve_poset(sib_input));
            nlohmann::ordered_json j;
            j["schema"] = 1;
            j["verdict"] = sibling_verdict_name(rep.verdict);
            j["chain_parts"] = rep.chain_parts;
            j["canonical_form"] = serialize_expr(rep.canonical_form);
            j["witnesses"] = rep.witnesses;
            out << j.dump(2) << "\n";
            return 0;
        }
        if (*c_family)
            return detail::run_family(fam_base, fam_anchors, fam_bits, fam_linear, fam_deeper,
                                      cap, out);
    } catch (const size_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const precondition_error& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const structure_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

} // namespace nefree
