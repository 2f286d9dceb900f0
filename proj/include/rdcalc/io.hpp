#pragma once

// JSON serialization of elements, tensor elements and diagrams, plus DOT
// export of graphs and diagrams (constituents stacked, worldlines dotted).

#include <json.hpp>

#include "display.hpp"

namespace rdc {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace detail {

// Canonical keys are raw byte strings; hex-encode them for transport.
inline std::string key_to_hex(const DiagramClassKey& key) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(key.size() * 2);
    for (unsigned char c : key) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

inline Json pairs_to_json(const std::set<IdPair>& pairs) {
    Json arr = Json::array();
    for (const auto& [a, b] : pairs) arr.push_back(Json::array({a, b}));
    return arr;
}

inline Json graph_to_json(const Multigraph& g) {
    Json j;
    j["vertices"] = Json::array();
    for (Id v : g.vertices) j["vertices"].push_back(v);
    j["edges"] = Json::array();
    for (Id e : g.edges)
        j["edges"].push_back(Json{{"id", e}, {"src", g.src.at(e)}, {"tgt", g.tgt.at(e)}});
    return j;
}

}  // namespace detail

inline Json diagram_to_json(const RuleDiagram& d) {
    Json j;
    j["parts"] = Json::array();
    for (const LinearRule& r : d.parts)
        j["parts"].push_back(Json{{"input", detail::graph_to_json(r.input)},
                                  {"output", detail::graph_to_json(r.output)},
                                  {"rv", detail::pairs_to_json(r.rv.pairs)},
                                  {"re", detail::pairs_to_json(r.re.pairs)}});
    j["matches"] = Json::array();
    for (const auto& [ij, m] : d.matches)
        j["matches"].push_back(Json{{"i", ij.first},
                                    {"j", ij.second},
                                    {"vertex_pairs", detail::pairs_to_json(m.fv.pairs)},
                                    {"edge_pairs", detail::pairs_to_json(m.fe.pairs)}});
    return j;
}

inline Json element_to_json(const Element& x, bool with_representative = true) {
    Json arr = Json::array();
    for (const auto& [k, c] : x.terms) {
        Json term;
        term["key"] = detail::key_to_hex(k);
        term["coefficient"] = rational_to_string(c);
        term["name"] = describe_key(k);
        if (with_representative)
            term["representative"] = diagram_to_json(Registry::instance().representative(k));
        arr.push_back(std::move(term));
    }
    return arr;
}

inline Json tensor_to_json(const TensorElement& t) {
    Json j;
    j["arity"] = t.arity;
    j["terms"] = Json::array();
    for (const auto& [w, c] : t.terms) {
        Json keys = Json::array(), names = Json::array();
        for (const auto& k : w) {
            keys.push_back(detail::key_to_hex(k));
            names.push_back(describe_key(k));
        }
        j["terms"].push_back(
            Json{{"keys", std::move(keys)}, {"names", std::move(names)},
                 {"coefficient", rational_to_string(c)}});
    }
    return j;
}

// ---------------------------------------------------------------------------
// DOT export
// ---------------------------------------------------------------------------

inline std::string graph_to_dot(const Multigraph& g, const std::string& name = "G") {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (Id v : g.vertices) os << "  v" << v << ";\n";
    for (Id e : g.edges)
        os << "  v" << g.src.at(e) << " -> v" << g.tgt.at(e) << " [label=\"e" << e << "\"];\n";
    os << "}\n";
    return os.str();
}

// Each constituent becomes a cluster holding its input and output graphs;
// preservation maps and matches are drawn as dotted worldlines.
inline std::string diagram_to_dot(const RuleDiagram& d, const std::string& name = "D") {
    std::ostringstream os;
    os << "digraph " << name << " {\n  rankdir=BT;\n";
    auto node = [](int part, char side, Id local) {
        std::ostringstream n;
        n << "p" << part << side << "v" << local;
        return n.str();
    };
    for (int p = 0; p < d.size(); ++p) {
        const LinearRule& r = d.parts[size_t(p)];
        os << "  subgraph cluster_part" << p << " {\n    label=\"part " << p << "\";\n";
        auto emit_graph = [&](const Multigraph& g, char side, const char* caption) {
            os << "    subgraph cluster_part" << p << side << " {\n      label=\"" << caption
               << "\";\n      style=dashed;\n";
            for (Id v : g.vertices)
                os << "      " << node(p, side, v) << " [label=\"v" << v << "\"];\n";
            os << "    }\n";
            for (Id e : g.edges)
                os << "    " << node(p, side, g.src.at(e)) << " -> " << node(p, side, g.tgt.at(e))
                   << " [label=\"e" << e << "\"];\n";
        };
        emit_graph(r.input, 'i', "input");
        emit_graph(r.output, 'o', "output");
        for (const auto& [a, b] : r.rv.pairs)
            os << "    " << node(p, 'i', a) << " -> " << node(p, 'o', b)
               << " [style=dotted, arrowhead=none];\n";
        os << "  }\n";
    }
    for (const auto& [ij, m] : d.matches)
        for (const auto& [a, b] : m.fv.pairs)
            os << "  " << node(part_of(a), 'o', local_of(a)) << " -> "
               << node(part_of(b), 'i', local_of(b))
               << " [style=dotted, color=blue, arrowhead=none];\n";
    os << "}\n";
    return os.str();
}

}  // namespace rdc
