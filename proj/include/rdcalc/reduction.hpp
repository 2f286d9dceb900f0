#pragma once

// Boundary map, dangling-edge analysis, the type-dependent fixing morphisms
// and the projection onto the rule algebras: the machinery that collapses a
// composite diagram's worldlines to an effective rewrite rule under one of
// the four rewriting semantics.

#include "element.hpp"

namespace rdc {

enum class RewritingType { DPO, SPO_A, SPO_B, SPO_AB };

inline const char* to_string(RewritingType t) {
    switch (t) {
        case RewritingType::DPO: return "DPO";
        case RewritingType::SPO_A: return "SPO_A";
        case RewritingType::SPO_B: return "SPO_B";
        case RewritingType::SPO_AB: return "SPO_AB";
    }
    return "?";
}

inline const RewritingType kAllTypes[] = {RewritingType::DPO, RewritingType::SPO_A,
                                          RewritingType::SPO_B, RewritingType::SPO_AB};

// A graph whose src/tgt maps may be partial: edges with a missing entry are
// dangling (their endpoint's worldline starts or ends strictly inside the
// diagram the pre-diagram was collapsed from).
struct PartialGraph {
    IdSet vertices;
    IdSet edges;
    std::map<Id, Id> src, tgt;  // possibly missing entries on edges
};

// The boundary of a rule diagram: an irreducible-shaped rule whose graphs
// may carry dangling edges. The match component is implicitly empty.
struct PreDiagram {
    PartialGraph in_g, out_g;
    Relation rv, re;  // effective rule, interface items only
    IdSet dangling_in, dangling_out;
};

namespace detail {

// Traces an input-graph vertex backward in time to its representative in the
// input interface, or nullopt if its worldline begins at a creation.
inline std::optional<Id> input_rep(Id v, const DiagramAggregate& a) {
    for (;;) {
        auto o = a.mv.apply_inverse(v);
        if (!o) return v;
        auto prev = a.rv.apply_inverse(*o);
        if (!prev) return std::nullopt;
        v = *prev;
    }
}

// Traces an output-graph vertex forward in time to its representative in the
// output interface, or nullopt if its worldline ends at a deletion.
inline std::optional<Id> output_rep(Id v, const DiagramAggregate& a) {
    for (;;) {
        auto i = a.mv.apply(v);
        if (!i) return v;
        auto next = a.rv.apply(*i);
        if (!next) return std::nullopt;
        v = *next;
    }
}

}  // namespace detail

inline PreDiagram boundary(const RuleDiagram& d) {
    DiagramAggregate a = aggregate(d);
    Worldlines w = worldlines(a);
    Interface f = interfaces(d);

    PreDiagram p;
    p.in_g.vertices = f.in_v;
    p.in_g.edges = f.in_e;
    p.out_g.vertices = f.out_v;
    p.out_g.edges = f.out_e;
    p.rv = restrict_rel(w.rv, f.in_v, f.out_v);
    p.re = restrict_rel(w.re, f.in_e, f.out_e);

    for (Id e : f.in_e) {
        bool dangling = false;
        if (auto s = detail::input_rep(a.in_graph.src.at(e), a)) p.in_g.src[e] = *s;
        else dangling = true;
        if (auto t = detail::input_rep(a.in_graph.tgt.at(e), a)) p.in_g.tgt[e] = *t;
        else dangling = true;
        if (dangling) p.dangling_in.insert(e);
    }
    for (Id e : f.out_e) {
        bool dangling = false;
        if (auto s = detail::output_rep(a.out_graph.src.at(e), a)) p.out_g.src[e] = *s;
        else dangling = true;
        if (auto t = detail::output_rep(a.out_graph.tgt.at(e), a)) p.out_g.tgt[e] = *t;
        else dangling = true;
        if (dangling) p.dangling_out.insert(e);
    }
    return p;
}

enum class FixSide { A, B };

// Side A deletes dangling output edges, side B dangling input edges; the
// effective rule and the endpoint maps are restricted accordingly.
inline PreDiagram fix_partial(PreDiagram p, FixSide side) {
    const IdSet doomed = (side == FixSide::A) ? p.dangling_out : p.dangling_in;
    PartialGraph& g = (side == FixSide::A) ? p.out_g : p.in_g;
    for (Id e : doomed) {
        g.edges.erase(e);
        g.src.erase(e);
        g.tgt.erase(e);
    }
    IdSet dom = p.re.dom_universe, cod = p.re.cod_universe;
    if (side == FixSide::A)
        for (Id e : doomed) cod.erase(e);
    else
        for (Id e : doomed) dom.erase(e);
    p.re = restrict_rel(p.re, dom, cod);
    ((side == FixSide::A) ? p.dangling_out : p.dangling_in).clear();
    return p;
}

namespace detail {

// Reassembles a dangling-free pre-diagram into an irreducible rule diagram:
// one connected linear rule per connected component of the effective rule.
inline RuleDiagram assemble_irreducible(const PreDiagram& p) {
    Multigraph gi, go;
    gi.vertices = p.in_g.vertices;
    gi.edges = p.in_g.edges;
    gi.src = p.in_g.src;
    gi.tgt = p.in_g.tgt;
    go.vertices = p.out_g.vertices;
    go.edges = p.out_g.edges;
    go.src = p.out_g.src;
    go.tgt = p.out_g.tgt;
    LinearRule whole;
    whole.input = std::move(gi);
    whole.output = std::move(go);
    whole.rv = Relation(whole.input.vertices, whole.output.vertices, p.rv.pairs);
    whole.re = Relation(whole.input.edges, whole.output.edges, p.re.pairs);
    return split_rule_into_diagram(whole);
}

}  // namespace detail

// Projection: the basis element of the assembled rule if nothing dangles,
// otherwise zero.
inline Element project(const PreDiagram& p) {
    if (!p.dangling_in.empty() || !p.dangling_out.empty()) return zero_element();
    return basis_element(detail::assemble_irreducible(p));
}

// Reduction morphism for a rewriting type: boundary, then the type's fixing
// morphisms, then projection, extended linearly.
inline Element reduce(const Element& x, RewritingType t) {
    Element out;
    for (const auto& [key, c] : x.terms) {
        PreDiagram p = boundary(Registry::instance().representative(key));
        if (t == RewritingType::SPO_A || t == RewritingType::SPO_AB) p = fix_partial(p, FixSide::A);
        if (t == RewritingType::SPO_B || t == RewritingType::SPO_AB) p = fix_partial(p, FixSide::B);
        for (const auto& [k, c2] : project(p).terms) out.accumulate(k, c * c2);
    }
    return out;
}

inline bool is_irreducible_support(const Element& x) {
    for (const auto& [key, c] : x.terms)
        if (!classify(Registry::instance().representative(key)).irreducible) return false;
    return true;
}

// The rule algebra product of type T on the span of irreducible diagrams.
inline Element compose_R(const Element& x, const Element& y, RewritingType t) {
    if (!is_irreducible_support(x) || !is_irreducible_support(y))
        throw std::invalid_argument("compose_R: operands must be supported on irreducible keys");
    return reduce(compose_D(x, y), t);
}

inline Element commutator_R(const Element& x, const Element& y, RewritingType t) {
    return sub(compose_R(x, y, t), compose_R(y, x, t));
}

// Nontrivial rule-algebra composition x ⊛_T y.
inline Element nontrivial_compose_R(const Element& x, const Element& y, RewritingType t) {
    return reduce(nontrivial_compose(x, y), t);
}

}  // namespace rdc
