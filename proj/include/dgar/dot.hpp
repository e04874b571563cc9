#ifndef DGAR_DOT_HPP
#define DGAR_DOT_HPP

#include "arengine.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace dgar {

struct DotGraph {
    struct Node {
        std::string id, label;
    };
    struct Edge {
        std::string from, to, label;
    };
    std::string name = "G";
    std::vector<Node> nodes;
    std::vector<Edge> edges;

    std::size_t leaf_count() const {
        std::size_t n = 0;
        for (auto &v : nodes) {
            bool leaf = true;
            for (auto &e : edges)
                leaf = leaf && e.from != v.id;
            n += leaf;
        }
        return n;
    }
};

namespace detail {

inline std::string dot_escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

inline std::string tuple_name(const std::vector<int> &alpha) {
    std::string s = "(";
    for (std::size_t i = 0; i < alpha.size(); ++i)
        s += (i ? "," : "") + std::to_string(alpha[i]);
    return s + ")";
}

template <class K>
std::string node_label(const std::string &name, const SemiFreeModule<K> &c) {
    return name + "\nf=" + f_invariant(c).value.to_string() + "\nH*=" + cohomology_module(c).table().to_string();
}

} // namespace detail

// Nodes and edges are emitted in insertion order, so output is byte-stable.
inline std::string to_dot(const DotGraph &g) {
    std::ostringstream os;
    os << "digraph " << g.name << " {\n  rankdir=BT;\n  node [shape=box];\n";
    for (auto &n : g.nodes)
        os << "  \"" << n.id << "\" [label=\"" << detail::dot_escape(n.label) << "\"];\n";
    for (auto &e : g.edges)
        os << "  \"" << e.from << "\" -> \"" << e.to << "\" [label=\"" << e.label << "\"];\n";
    os << "}\n";
    return os.str();
}

// Tree of all C_alpha for admissible alpha of length <= n; leaves are the length-n tuples.
template <class K>
DotGraph family_tree(const FamilyContext<K> &ctx, std::size_t n) {
    DotGraph g;
    g.name = "family";
    struct Item {
        std::vector<int> alpha;
        SemiFreeModule<K> module;
    };
    auto id = [](const std::vector<int> &a) {
        std::string s = "C";
        for (int x : a)
            s += std::to_string(x);
        return s;
    };
    std::vector<Item> level{{{}, free_module(ctx.alg, {0})}};
    g.nodes.push_back({id({}), detail::node_label("C_()", level[0].module)});
    for (std::size_t depth = 0; depth < n; ++depth) {
        std::vector<Item> next;
        for (auto &it : level)
            for (int b : {0, 1}) {
                if (b == 1 && (!ctx.e || (!it.alpha.empty() && it.alpha.back() == 1)))
                    continue;
                auto alpha = it.alpha;
                alpha.push_back(b);
                std::optional<StepKind> prev;
                if (!it.alpha.empty())
                    prev = it.alpha.back() ? StepKind::Second : StepKind::First;
                auto st = construct_step(ctx, it.module, b ? StepKind::Second : StepKind::First, alpha.size(), prev);
                g.nodes.push_back({id(alpha), detail::node_label("C_" + detail::tuple_name(alpha), st.module)});
                g.edges.push_back({id(it.alpha), id(alpha), to_string(st.kind)});
                next.push_back({alpha, st.module});
            }
        level = std::move(next);
    }
    return g;
}

template <class K>
DotGraph pencil_graph(const FamilyContext<K> &ctx, std::optional<int> e, const std::vector<std::pair<K, K>> &lambdas) {
    DotGraph g;
    g.name = "pencil";
    g.nodes.push_back({"A", detail::node_label("A", free_module(ctx.alg, {0}))});
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        auto p = build_pencil(ctx, e, lambdas[i]);
        const std::string coord = "[" + lambdas[i].first.to_string() + ":" + lambdas[i].second.to_string() + "]";
        const std::string nid = "P" + std::to_string(i);
        g.nodes.push_back({nid, detail::node_label("C_" + coord, p.module)});
        g.edges.push_back({"A", nid, "cone " + coord});
    }
    return g;
}

} // namespace dgar

#endif
