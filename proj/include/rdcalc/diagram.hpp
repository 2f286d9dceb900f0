#pragma once

// Linear rewriting rules and rule diagrams: validation, classification,
// interfaces, canonical isomorphism-class keys, match enumeration,
// composition along a match, superposition and dualization.
//
// A rule diagram is an ordered stack of connected linear rules ("parts",
// a.k.a. constituents) glued by matches. Part index 0 is the latest in time;
// a match keyed (i, j) with i < j sends items of part j's output graph to
// items of part i's input graph.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "multigraph.hpp"

namespace rdc {

// ---------------------------------------------------------------------------
// Linear rules
// ---------------------------------------------------------------------------

// An injective partial graph morphism input -> output: items in the domain
// are preserved by the rewrite, input items outside it are deleted, output
// items outside the image are created.
struct LinearRule {
    Multigraph input;
    Multigraph output;
    Relation rv;  // V_input -> V_output
    Relation re;  // E_input -> E_output

    bool operator==(const LinearRule&) const = default;
};

inline LinearRule make_linear_rule(Multigraph input, Multigraph output,
                                   std::set<IdPair> vertex_pairs, std::set<IdPair> edge_pairs) {
    LinearRule r;
    r.rv = Relation(input.vertices, output.vertices, std::move(vertex_pairs));
    r.re = Relation(input.edges, output.edges, std::move(edge_pairs));
    r.input = std::move(input);
    r.output = std::move(output);
    return r;
}

inline bool is_valid_linear_rule(const LinearRule& r, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    try {
        r.input.check_invariants();
        r.output.check_invariants();
        if (r.rv.dom_universe != r.input.vertices || r.rv.cod_universe != r.output.vertices ||
            r.re.dom_universe != r.input.edges || r.re.cod_universe != r.output.edges)
            return fail("rule map universes do not coincide with the rule's graphs");
        r.rv.check_invariants();
        r.re.check_invariants();
    } catch (const std::exception& e) {
        return fail(e.what());
    }
    if (!morphism_condition_holds(r.input, r.output, r.rv, r.re))
        return fail("rule map is not an injective partial graph morphism");
    return true;
}

// A rule is connected when the bipartite picture of its input graph, output
// graph and preservation map cannot be split into two disjoint rules.
inline bool is_connected_rule(const LinearRule& r) {
    // Union-find over tokens (side, kind, id); side 0 = input, 1 = output.
    using Token = std::tuple<int, int, Id>;
    std::map<Token, Token> parent;
    auto find = [&](Token x) {
        while (parent.at(x) != x) x = parent.at(x) = parent.at(parent.at(x));
        return x;
    };
    auto unite = [&](Token a, Token b) { parent[find(a)] = find(b); };
    auto seed = [&](const Multigraph& g, int side) {
        for (Id v : g.vertices) parent[{side, 0, v}] = {side, 0, v};
        for (Id e : g.edges) parent[{side, 1, e}] = {side, 1, e};
    };
    seed(r.input, 0);
    seed(r.output, 1);
    for (Id e : r.input.edges) {
        unite({0, 1, e}, {0, 0, r.input.src.at(e)});
        unite({0, 1, e}, {0, 0, r.input.tgt.at(e)});
    }
    for (Id e : r.output.edges) {
        unite({1, 1, e}, {1, 0, r.output.src.at(e)});
        unite({1, 1, e}, {1, 0, r.output.tgt.at(e)});
    }
    for (const auto& [a, b] : r.rv.pairs) unite({0, 0, a}, {1, 0, b});
    for (const auto& [a, b] : r.re.pairs) unite({0, 1, a}, {1, 1, b});
    std::set<Token> roots;
    for (auto& [t, p] : parent) roots.insert(find(t));
    return roots.size() <= 1;
}

// ---------------------------------------------------------------------------
// Rule diagrams
// ---------------------------------------------------------------------------

// Global item identifiers pack (part index, local id); all aggregate graphs
// and relations of a diagram live in this id space.
inline constexpr Id kPartStride = 1'000'000;

inline Id global_id(int part, Id local) { return Id(part) * kPartStride + local; }
inline int part_of(Id gid) { return int(gid / kPartStride); }
inline Id local_of(Id gid) { return gid % kPartStride; }

struct RuleDiagram {
    std::vector<LinearRule> parts;
    // (i, j) with i < j; morphism O_j -> I_i in global ids.
    std::map<std::pair<int, int>, GraphMorphism> matches;

    int size() const { return int(parts.size()); }
    bool operator==(const RuleDiagram&) const = default;
};

inline RuleDiagram empty_diagram() { return {}; }

// Wraps a single rule as a one-part diagram (ids are globalized).
inline RuleDiagram atomic_diagram(const LinearRule& r) {
    RuleDiagram d;
    d.parts.push_back(r);
    return d;
}

// Aggregate graphs and relations of a diagram, all in global ids.
struct DiagramAggregate {
    Multigraph in_graph;   // I = superposition of part inputs
    Multigraph out_graph;  // O = superposition of part outputs
    Relation rv, re;       // I -> O
    Relation mv, me;       // O -> I
};

inline Multigraph globalize(const Multigraph& g, int part) {
    Multigraph out;
    for (Id v : g.vertices) {
        if (v < 0 || v >= kPartStride)
            throw std::invalid_argument("diagram: local id outside the packable range");
        out.add_vertex(global_id(part, v));
    }
    for (Id e : g.edges)
        out.add_edge(global_id(part, e), global_id(part, g.src.at(e)),
                     global_id(part, g.tgt.at(e)));
    return out;
}

inline DiagramAggregate aggregate(const RuleDiagram& d) {
    DiagramAggregate a;
    for (int i = 0; i < d.size(); ++i) {
        const LinearRule& r = d.parts[i];
        Multigraph gi = globalize(r.input, i), go = globalize(r.output, i);
        a.in_graph.vertices.insert(gi.vertices.begin(), gi.vertices.end());
        a.in_graph.edges.insert(gi.edges.begin(), gi.edges.end());
        a.in_graph.src.insert(gi.src.begin(), gi.src.end());
        a.in_graph.tgt.insert(gi.tgt.begin(), gi.tgt.end());
        a.out_graph.vertices.insert(go.vertices.begin(), go.vertices.end());
        a.out_graph.edges.insert(go.edges.begin(), go.edges.end());
        a.out_graph.src.insert(go.src.begin(), go.src.end());
        a.out_graph.tgt.insert(go.tgt.begin(), go.tgt.end());
    }
    a.rv = Relation(a.in_graph.vertices, a.out_graph.vertices);
    a.re = Relation(a.in_graph.edges, a.out_graph.edges);
    a.mv = Relation(a.out_graph.vertices, a.in_graph.vertices);
    a.me = Relation(a.out_graph.edges, a.in_graph.edges);
    for (int i = 0; i < d.size(); ++i) {
        for (const auto& [x, y] : d.parts[i].rv.pairs)
            a.rv.pairs.emplace(global_id(i, x), global_id(i, y));
        for (const auto& [x, y] : d.parts[i].re.pairs)
            a.re.pairs.emplace(global_id(i, x), global_id(i, y));
    }
    for (const auto& [key, m] : d.matches) {
        a.mv.pairs.insert(m.fv.pairs.begin(), m.fv.pairs.end());
        a.me.pairs.insert(m.fe.pairs.begin(), m.fe.pairs.end());
    }
    a.mv.check_invariants();
    a.me.check_invariants();
    return a;
}

// Worldline relations omega_r = r o (m o r)* and omega_m = m o (r o m)*.
// These are multi-valued in general (a preserved item relates to every later
// appearance on its worldline); only their restrictions to the interfaces
// are one-to-one endpoint lookups.
struct Worldlines {
    Relation rv, re;  // I -> O
    Relation mv, me;  // O -> I
};

inline Worldlines worldlines(const DiagramAggregate& a) {
    Worldlines w;
    w.rv = compose_rel(a.rv, kleene_star(compose_rel(a.mv, a.rv)));
    w.re = compose_rel(a.re, kleene_star(compose_rel(a.me, a.re)));
    w.mv = compose_rel(a.mv, kleene_star(compose_rel(a.rv, a.mv)));
    w.me = compose_rel(a.me, kleene_star(compose_rel(a.re, a.me)));
    return w;
}

// Input interface = I minus matched items, output interface = O minus
// matching items; dangling boundary edges are retained, so these are item
// sets, not graphs.
struct Interface {
    IdSet in_v, in_e;
    IdSet out_v, out_e;
};

inline Interface interfaces(const RuleDiagram& d) {
    DiagramAggregate a = aggregate(d);
    Interface f;
    IdSet mv_img = a.mv.image(), me_img = a.me.image();
    IdSet mv_dom = a.mv.domain(), me_dom = a.me.domain();
    for (Id v : a.in_graph.vertices)
        if (!mv_img.count(v)) f.in_v.insert(v);
    for (Id e : a.in_graph.edges)
        if (!me_img.count(e)) f.in_e.insert(e);
    for (Id v : a.out_graph.vertices)
        if (!mv_dom.count(v)) f.out_v.insert(v);
    for (Id e : a.out_graph.edges)
        if (!me_dom.count(e)) f.out_e.insert(e);
    return f;
}

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> notes;  // informational (e.g. delayed edge matches)
    bool ok() const { return violations.empty(); }
};

inline ValidationReport validate_diagram(const RuleDiagram& d) {
    ValidationReport rep;
    auto bad = [&](const std::string& msg) { rep.violations.push_back(msg); };

    for (int i = 0; i < d.size(); ++i) {
        const LinearRule& r = d.parts[i];
        std::string why;
        if (!is_valid_linear_rule(r, &why)) {
            bad("part " + std::to_string(i) + ": " + why);
            continue;
        }
        if (r.input.empty() && r.output.empty())
            bad("part " + std::to_string(i) + ": both sides empty");
        else if (!is_connected_rule(r))
            bad("part " + std::to_string(i) + ": rule is not connected");
    }
    for (const auto& [key, m] : d.matches) {
        auto [i, j] = key;
        if (!(0 <= i && i < j && j < d.size())) {
            bad("match key (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
            continue;
        }
        Multigraph oj = globalize(d.parts[j].output, j), ii = globalize(d.parts[i].input, i);
        if (m.fv.dom_universe != oj.vertices || m.fv.cod_universe != ii.vertices ||
            m.fe.dom_universe != oj.edges || m.fe.cod_universe != ii.edges) {
            bad("match (" + std::to_string(i) + "," + std::to_string(j) +
                "): universes do not coincide with O_j / I_i");
            continue;
        }
        if (!is_one_to_one(m.fv) || !is_one_to_one(m.fe))
            bad("match (" + std::to_string(i) + "," + std::to_string(j) + "): not one-to-one");
    }
    if (!rep.ok()) return rep;

    DiagramAggregate a = aggregate(d);
    if (!is_one_to_one(a.mv) || !is_one_to_one(a.me))
        bad("aggregate match relation is not one-to-one");
    if (!is_acyclic(compose_rel(a.mv, a.rv)) || !is_acyclic(compose_rel(a.rv, a.mv)) ||
        !is_acyclic(compose_rel(a.me, a.re)) || !is_acyclic(compose_rel(a.re, a.me)))
        bad("worldline step relation has a cycle");
    if (!rep.ok()) return rep;

    Worldlines w = worldlines(a);
    Interface f = interfaces(d);
    if (!is_one_to_one(restrict_rel(w.rv, f.in_v, f.out_v)) ||
        !is_one_to_one(restrict_rel(w.re, f.in_e, f.out_e)))
        bad("interface restriction of omega_r is not one-to-one");
    if (!is_one_to_one(restrict_rel(w.mv, f.out_v, f.in_v)) ||
        !is_one_to_one(restrict_rel(w.me, f.out_e, f.in_e)))
        bad("interface restriction of omega_m is not one-to-one");

    // Delayed edge morphism condition: every edge worldline pair forces its
    // endpoint vertex worldline pairs.
    for (const auto& [e, e2] : w.me.pairs) {
        Id s = a.out_graph.src.at(e), t = a.out_graph.tgt.at(e);
        Id s2 = a.in_graph.src.at(e2), t2 = a.in_graph.tgt.at(e2);
        if (!w.mv.contains(s, s2) || !w.mv.contains(t, t2)) {
            bad("delayed edge condition violated for edge pair (" + std::to_string(e) + "," +
                std::to_string(e2) + ")");
        }
    }
    // Note (informational) matches of edges whose endpoints are threaded
    // through other parts rather than matched directly.
    for (const auto& [e, e2] : a.me.pairs) {
        Id s = a.out_graph.src.at(e);
        if (!a.mv.contains(s, a.in_graph.src.at(e2)) ||
            !a.mv.contains(a.out_graph.tgt.at(e), a.in_graph.tgt.at(e2)))
            rep.notes.push_back("delayed match of edge " + std::to_string(e));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Classification and components
// ---------------------------------------------------------------------------

struct DiagramClass {
    bool empty = false;
    bool atomic = false;
    bool irreducible = false;
    bool primitive = false;
};

inline bool match_is_trivial(const GraphMorphism& m) {
    return m.fv.pairs.empty() && m.fe.pairs.empty();
}

// Partition of part indices into components connected by nonempty matches.
inline std::vector<std::vector<int>> diagram_components(const RuleDiagram& d) {
    std::vector<int> parent(d.size());
    for (int i = 0; i < d.size(); ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [key, m] : d.matches)
        if (!match_is_trivial(m)) parent[find(key.first)] = find(key.second);
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < d.size(); ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [root, idxs] : groups) out.push_back(std::move(idxs));
    return out;
}

inline DiagramClass classify(const RuleDiagram& d) {
    DiagramClass c;
    c.empty = d.parts.empty();
    c.irreducible = true;
    for (const auto& [key, m] : d.matches)
        if (!match_is_trivial(m)) c.irreducible = false;
    c.atomic = c.irreducible && d.size() == 1;
    c.primitive = !c.empty && diagram_components(d).size() == 1;
    return c;
}

// Sub-diagram spanned by the given part indices (ascending), reindexed.
inline RuleDiagram sub_diagram(const RuleDiagram& d, const std::vector<int>& idxs) {
    RuleDiagram out;
    std::map<int, int> newpos;
    for (int k = 0; k < int(idxs.size()); ++k) {
        newpos[idxs[k]] = k;
        out.parts.push_back(d.parts[idxs[k]]);
    }
    auto remap_ids = [&](const Relation& rel, int new_dom_part, int new_cod_part) {
        IdSet dom, cod;
        for (Id x : rel.dom_universe) dom.insert(global_id(new_dom_part, local_of(x)));
        for (Id x : rel.cod_universe) cod.insert(global_id(new_cod_part, local_of(x)));
        Relation r2(dom, cod);
        for (const auto& [x, y] : rel.pairs)
            r2.pairs.emplace(global_id(new_dom_part, local_of(x)),
                             global_id(new_cod_part, local_of(y)));
        return r2;
    };
    for (const auto& [key, m] : d.matches) {
        auto [i, j] = key;
        auto pi = newpos.find(i), pj = newpos.find(j);
        if (pi == newpos.end() || pj == newpos.end()) {
            if (!match_is_trivial(m) && (pi == newpos.end()) != (pj == newpos.end()))
                throw std::invalid_argument("sub_diagram: index set cuts a nonempty match");
            continue;
        }
        GraphMorphism m2{remap_ids(m.fv, pj->second, pi->second),
                         remap_ids(m.fe, pj->second, pi->second)};
        out.matches[{pi->second, pj->second}] = std::move(m2);
    }
    return out;
}

// Splits a (possibly disconnected) rule into its connected constituents and
// wraps them as an irreducible diagram, renumbering items per part.
inline RuleDiagram split_rule_into_diagram(const LinearRule& whole) {
    using Token = std::tuple<int, int, Id>;  // (side, kind, id)
    std::map<Token, Token> parent;
    auto find = [&](Token x) {
        while (parent.at(x) != x) x = parent.at(x) = parent.at(parent.at(x));
        return x;
    };
    auto unite = [&](Token x, Token y) { parent[find(x)] = find(y); };
    for (Id v : whole.input.vertices) parent[{0, 0, v}] = {0, 0, v};
    for (Id e : whole.input.edges) parent[{0, 1, e}] = {0, 1, e};
    for (Id v : whole.output.vertices) parent[{1, 0, v}] = {1, 0, v};
    for (Id e : whole.output.edges) parent[{1, 1, e}] = {1, 1, e};
    for (Id e : whole.input.edges) {
        unite({0, 1, e}, {0, 0, whole.input.src.at(e)});
        unite({0, 1, e}, {0, 0, whole.input.tgt.at(e)});
    }
    for (Id e : whole.output.edges) {
        unite({1, 1, e}, {1, 0, whole.output.src.at(e)});
        unite({1, 1, e}, {1, 0, whole.output.tgt.at(e)});
    }
    for (const auto& [x, y] : whole.rv.pairs) unite({0, 0, x}, {1, 0, y});
    for (const auto& [x, y] : whole.re.pairs) unite({0, 1, x}, {1, 1, y});

    std::map<Token, std::vector<Token>> classes;
    for (auto& [t, pr] : parent) classes[find(t)].push_back(t);

    RuleDiagram out;
    for (auto& [root, tokens] : classes) {
        std::map<Id, Id> vin, ein, vout, eout;
        Id next = 0;
        for (const Token& t : tokens) {
            auto [side, kind, id] = t;
            auto& m = side == 0 ? (kind == 0 ? vin : ein) : (kind == 0 ? vout : eout);
            m[id] = next++;
        }
        Multigraph I, O;
        for (auto& [oid, nid] : vin) I.add_vertex(nid);
        for (auto& [oid, nid] : ein)
            I.add_edge(nid, vin.at(whole.input.src.at(oid)), vin.at(whole.input.tgt.at(oid)));
        for (auto& [oid, nid] : vout) O.add_vertex(nid);
        for (auto& [oid, nid] : eout)
            O.add_edge(nid, vout.at(whole.output.src.at(oid)), vout.at(whole.output.tgt.at(oid)));
        std::set<IdPair> rvp, rep;
        for (const auto& [x, y] : whole.rv.pairs)
            if (vin.count(x)) rvp.emplace(vin.at(x), vout.at(y));
        for (const auto& [x, y] : whole.re.pairs)
            if (ein.count(x)) rep.emplace(ein.at(x), eout.at(y));
        out.parts.push_back(
            make_linear_rule(std::move(I), std::move(O), std::move(rvp), std::move(rep)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Superposition, composition, dualization
// ---------------------------------------------------------------------------

inline RuleDiagram superpose_diagram(const RuleDiagram& dA, const RuleDiagram& dB) {
    RuleDiagram out = dA;
    int base = dA.size();
    out.parts.insert(out.parts.end(), dB.parts.begin(), dB.parts.end());
    for (const auto& [key, m] : dB.matches) {
        auto [i, j] = key;
        IdSet dom, cod;
        for (Id x : m.fv.dom_universe) dom.insert(global_id(j + base, local_of(x)));
        for (Id x : m.fv.cod_universe) cod.insert(global_id(i + base, local_of(x)));
        Relation fv(dom, cod);
        for (const auto& [x, y] : m.fv.pairs)
            fv.pairs.emplace(global_id(j + base, local_of(x)), global_id(i + base, local_of(y)));
        IdSet dome, code;
        for (Id x : m.fe.dom_universe) dome.insert(global_id(j + base, local_of(x)));
        for (Id x : m.fe.cod_universe) code.insert(global_id(i + base, local_of(x)));
        Relation fe(dome, code);
        for (const auto& [x, y] : m.fe.pairs)
            fe.pairs.emplace(global_id(j + base, local_of(x)), global_id(i + base, local_of(y)));
        out.matches[{i + base, j + base}] = GraphMorphism{std::move(fv), std::move(fe)};
    }
    return out;
}

// Composes dA over dB along a match (item pairs O(dB) -> I(dA), each side in
// its own diagram's global ids). dB's parts are re-indexed below dA's. Does
// not validate; see compose_along for the checked entry point.
inline RuleDiagram compose_along_unchecked(const RuleDiagram& dA, const GraphMorphism& m,
                                           const RuleDiagram& dB) {
    RuleDiagram out = superpose_diagram(dA, dB);
    int base = dA.size();
    // Split the match pairs per (receiving dA part, providing dB part).
    auto ensure = [&](int i, int j) -> GraphMorphism& {
        auto it = out.matches.find({i, j});
        if (it == out.matches.end()) {
            Multigraph oj = globalize(out.parts[j].output, j);
            Multigraph ii = globalize(out.parts[i].input, i);
            it = out.matches
                     .emplace(std::make_pair(i, j),
                              GraphMorphism{Relation(oj.vertices, ii.vertices),
                                            Relation(oj.edges, ii.edges)})
                     .first;
        }
        return it->second;
    };
    for (const auto& [o, i2] : m.fv.pairs) {
        int j = part_of(o) + base, i = part_of(i2);
        ensure(i, j).fv.pairs.emplace(global_id(j, local_of(o)), i2);
    }
    for (const auto& [o, i2] : m.fe.pairs) {
        int j = part_of(o) + base, i = part_of(i2);
        ensure(i, j).fe.pairs.emplace(global_id(j, local_of(o)), i2);
    }
    return out;
}

inline RuleDiagram compose_along(const RuleDiagram& dA, const GraphMorphism& m,
                                 const RuleDiagram& dB) {
    RuleDiagram out = compose_along_unchecked(dA, m, dB);
    ValidationReport rep = validate_diagram(out);
    if (!rep.ok())
        throw std::invalid_argument("compose_along: invalid match (" + rep.violations.front() +
                                    ")");
    return out;
}

// Dualization: swaps every rule's sides, reverses time (part order) and
// turns each match around.
inline RuleDiagram dagger_diagram(const RuleDiagram& d) {
    RuleDiagram out;
    int n = d.size();
    out.parts.reserve(n);
    for (int i = n - 1; i >= 0; --i) {
        const LinearRule& r = d.parts[i];
        out.parts.push_back(LinearRule{r.output, r.input, converse(r.rv), converse(r.re)});
    }
    auto flip = [&](const Relation& rel, int new_dom_part, int new_cod_part) {
        Relation c = converse(rel);
        IdSet dom, cod;
        for (Id x : c.dom_universe) dom.insert(global_id(new_dom_part, local_of(x)));
        for (Id x : c.cod_universe) cod.insert(global_id(new_cod_part, local_of(x)));
        Relation r2(dom, cod);
        for (const auto& [x, y] : c.pairs)
            r2.pairs.emplace(global_id(new_dom_part, local_of(x)),
                             global_id(new_cod_part, local_of(y)));
        return r2;
    };
    for (const auto& [key, m] : d.matches) {
        auto [i, j] = key;  // m: O_j -> I_i
        // In the dual, old part i sits at n-1-i with sides swapped, so the
        // converse match runs O'_{n-1-i} -> I'_{n-1-j}.
        int i2 = n - 1 - j, j2 = n - 1 - i;
        out.matches[{i2, j2}] = GraphMorphism{flip(m.fv, j2, i2), flip(m.fe, j2, i2)};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Canonical isomorphism-class key
// ---------------------------------------------------------------------------
//
// The key of a diagram is the sorted multiset of its components' keys. A
// component's key is the lexicographic minimum, over all part orders
// compatible with the match precedence and over all canonical labelings of
// each part's graphs, of a per-position encoding of (input graph, output
// graph, rule map, matches to earlier positions). Every encoded segment
// starts with byte 0x01, which is smaller than all content bytes, so a
// greedy segment-by-segment minimization (keeping ties) finds the global
// minimum.

using DiagramClassKey = std::string;

namespace detail {

struct PartLabelings {
    std::vector<GraphLabeling> in_labs, out_labs;
    std::string in_enc, out_enc;  // canonical graph encodings (labeling-independent)
};

inline std::string encode_pairs(const Relation& rel, const std::map<Id, int>& dom_order,
                                const std::map<Id, int>& cod_order) {
    std::vector<std::pair<int, int>> ps;
    for (const auto& [a, b] : rel.pairs) ps.emplace_back(dom_order.at(a), cod_order.at(b));
    std::sort(ps.begin(), ps.end());
    std::string out;
    for (auto& [a, b] : ps) out += std::to_string(a) + ">" + std::to_string(b) + ",";
    return out;
}

struct CanonState {
    std::vector<int> order;  // original part indices in chosen sequence
    std::vector<const GraphLabeling*> in_lab, out_lab;
};

inline DiagramClassKey component_key(const RuleDiagram& d) {
    int n = d.size();
    std::vector<PartLabelings> pl(n);
    for (int i = 0; i < n; ++i) {
        pl[i].in_labs = canonical_labelings(d.parts[i].input);
        pl[i].out_labs = canonical_labelings(d.parts[i].output);
        pl[i].in_enc = encode_graph(d.parts[i].input, pl[i].in_labs.front().vertex_order);
        pl[i].out_enc = encode_graph(d.parts[i].output, pl[i].out_labs.front().vertex_order);
    }
    // Precedence: part i must be placed before part j when a nonempty match
    // (i, j) exists (its output feeds i's input from below).
    std::vector<std::vector<bool>> before(n, std::vector<bool>(n, false));
    for (const auto& [key, m] : d.matches)
        if (!match_is_trivial(m)) before[key.first][key.second] = true;

    std::string key;
    std::vector<CanonState> states(1);
    for (int pos = 0; pos < n; ++pos) {
        std::string best;
        std::vector<CanonState> next;
        for (const CanonState& st : states) {
            std::set<int> placed(st.order.begin(), st.order.end());
            for (int c = 0; c < n; ++c) {
                if (placed.count(c)) continue;
                bool ready = true;  // all parts that must precede c are placed
                for (int p = 0; p < n; ++p)
                    if (before[p][c] && !placed.count(p)) ready = false;
                if (!ready) continue;
                for (const GraphLabeling& li : pl[c].in_labs) {
                    for (const GraphLabeling& lo : pl[c].out_labs) {
                        std::string seg;
                        seg += '\x01';
                        seg += pl[c].in_enc + "/" + pl[c].out_enc + "/r:";
                        seg += encode_pairs(d.parts[c].rv, li.vertex_order, lo.vertex_order);
                        seg += ";";
                        seg += encode_pairs(d.parts[c].re, li.edge_order, lo.edge_order);
                        seg += "/m:";
                        for (int q = 0; q < pos; ++q) {
                            int p = st.order[q];
                            // m_{p,c}: O_c -> I_p (p was placed earlier).
                            auto it = d.matches.find({std::min(p, c), std::max(p, c)});
                            if (it == d.matches.end() || match_is_trivial(it->second)) continue;
                            if (it->first != std::make_pair(p, c)) continue;
                            // Translate global pairs into the two labelings.
                            std::map<Id, int> dom_order, cod_order;
                            for (auto& [v, k] : lo.vertex_order) dom_order[global_id(c, v)] = k;
                            for (auto& [v, k] : st.in_lab[q]->vertex_order)
                                cod_order[global_id(p, v)] = k;
                            std::map<Id, int> dom_e, cod_e;
                            for (auto& [e, k] : lo.edge_order) dom_e[global_id(c, e)] = k;
                            for (auto& [e, k] : st.in_lab[q]->edge_order)
                                cod_e[global_id(p, e)] = k;
                            seg += "(" + std::to_string(q) + ":";
                            seg += encode_pairs(it->second.fv, dom_order, cod_order);
                            seg += ";";
                            seg += encode_pairs(it->second.fe, dom_e, cod_e);
                            seg += ")";
                        }
                        if (!best.empty() && seg > best) continue;
                        if (best.empty() || seg < best) {
                            best = seg;
                            next.clear();
                        }
                        CanonState st2 = st;
                        st2.order.push_back(c);
                        st2.in_lab.push_back(&li);
                        st2.out_lab.push_back(&lo);
                        next.push_back(std::move(st2));
                    }
                }
            }
        }
        key += best;
        states = std::move(next);
    }
    return key;
}

}  // namespace detail

inline DiagramClassKey canonical_diagram(const RuleDiagram& d) {
    std::vector<DiagramClassKey> keys;
    for (const auto& comp : diagram_components(d))
        keys.push_back(detail::component_key(sub_diagram(d, comp)));
    std::sort(keys.begin(), keys.end());
    DiagramClassKey out;
    for (const auto& k : keys) out += '\x02' + k;
    return out;
}

// ---------------------------------------------------------------------------
// Match enumeration
// ---------------------------------------------------------------------------
//
// A match of dB into dA is any one-to-one pairing of dB's output-interface
// items with dA's input-interface items whose composite is a valid diagram.
// Vertex and edge conditions decouple: once the vertex pairs are fixed, the
// composite's vertex worldlines are fixed, and an edge assignment is
// admissible iff the full composite validates.

inline std::vector<GraphMorphism> enumerate_matches(const RuleDiagram& dA,
                                                    const RuleDiagram& dB) {
    Interface fa = interfaces(dA), fb = interfaces(dB);
    DiagramAggregate aggA = aggregate(dA), aggB = aggregate(dB);

    std::vector<Id> bv(fb.out_v.begin(), fb.out_v.end());
    std::vector<Id> be(fb.out_e.begin(), fb.out_e.end());

    GraphMorphism cand{Relation(aggB.out_graph.vertices, aggA.in_graph.vertices),
                       Relation(aggB.out_graph.edges, aggA.in_graph.edges)};
    IdSet used_v, used_e;
    std::vector<GraphMorphism> out;

    auto try_edges = [&]() {
        // Vertex pairs fixed: filter candidate edge pairs by the composite's
        // vertex worldlines, then backtrack over injective edge pairings,
        // validating each complete assignment.
        RuleDiagram comp0 = compose_along_unchecked(dA, GraphMorphism{cand.fv, cand.fe}, dB);
        {
            ValidationReport rep = validate_diagram(comp0);
            if (!rep.ok()) return;
            out.push_back(cand);  // the edge-free match itself
        }
        if (be.empty() || fa.in_e.empty()) return;
        Worldlines w = worldlines(aggregate(comp0));
        int base = dA.size();
        auto shifted = [&](Id b_gid) { return global_id(part_of(b_gid) + base, local_of(b_gid)); };
        std::map<Id, std::vector<Id>> allowed;
        for (Id e : be) {
            Id es = aggB.out_graph.src.at(e), et = aggB.out_graph.tgt.at(e);
            for (Id e2 : fa.in_e) {
                if (w.mv.contains(shifted(es), aggA.in_graph.src.at(e2)) &&
                    w.mv.contains(shifted(et), aggA.in_graph.tgt.at(e2)))
                    allowed[e].push_back(e2);
            }
        }
        auto rec = [&](auto&& self, size_t i) -> void {
            if (i == be.size()) {
                if (cand.fe.pairs.empty()) return;  // already recorded
                RuleDiagram comp = compose_along_unchecked(dA, cand, dB);
                if (validate_diagram(comp).ok()) out.push_back(cand);
                return;
            }
            self(self, i + 1);
            Id e = be[i];
            auto it = allowed.find(e);
            if (it == allowed.end()) return;
            for (Id e2 : it->second) {
                if (used_e.count(e2)) continue;
                cand.fe.pairs.emplace(e, e2);
                used_e.insert(e2);
                self(self, i + 1);
                used_e.erase(e2);
                cand.fe.pairs.erase({e, e2});
            }
        };
        rec(rec, 0);
    };

    auto vrec = [&](auto&& self, size_t i) -> void {
        if (i == bv.size()) {
            try_edges();
            return;
        }
        self(self, i + 1);
        Id v = bv[i];
        for (Id v2 : fa.in_v) {
            if (used_v.count(v2)) continue;
            cand.fv.pairs.emplace(v, v2);
            used_v.insert(v2);
            self(self, i + 1);
            used_v.erase(v2);
            cand.fv.pairs.erase({v, v2});
        }
    };
    vrec(vrec, 0);
    return out;
}

}  // namespace rdc
