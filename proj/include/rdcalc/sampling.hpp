#pragma once

// Pseudo-random generation of small linear rules and rule diagrams, plus
// random relabeling of a diagram's local ids — the fodder for the property
// suites (associativity, homomorphy, dagger, representative independence).

#include <random>

#include "element.hpp"

namespace rdc {

struct SamplerConfig {
    int max_parts = 3;        // constituents per diagram
    int max_side_vertices = 2;  // vertices per side of an atomic rule
    int max_side_edges = 1;     // edges per side of an atomic rule
};

namespace detail {

template <class Rng>
int rand_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

template <class Rng>
bool rand_bool(Rng& rng) {
    return rand_int(rng, 0, 1) == 1;
}

}  // namespace detail

// A uniformly scrappy small rule: random side sizes, sparse random edges,
// a random injective partial vertex map, and edge preservations compatible
// with it. Rejection-sampled until valid and connected.
template <class Rng>
LinearRule random_linear_rule(Rng& rng, const SamplerConfig& cfg = {}) {
    for (;;) {
        int ni = detail::rand_int(rng, 0, cfg.max_side_vertices);
        int no = detail::rand_int(rng, 0, cfg.max_side_vertices);
        if (ni == 0 && no == 0) continue;
        Multigraph in, out;
        for (int v = 0; v < ni; ++v) in.add_vertex(v);
        for (int v = 0; v < no; ++v) out.add_vertex(v);
        Id next_e = 100;
        if (ni > 0)
            for (int e = 0; e < cfg.max_side_edges; ++e)
                if (detail::rand_bool(rng))
                    in.add_edge(next_e++, detail::rand_int(rng, 0, ni - 1),
                                detail::rand_int(rng, 0, ni - 1));
        if (no > 0)
            for (int e = 0; e < cfg.max_side_edges; ++e)
                if (detail::rand_bool(rng))
                    out.add_edge(next_e++, detail::rand_int(rng, 0, no - 1),
                                 detail::rand_int(rng, 0, no - 1));

        // Random injective partial vertex map.
        std::set<IdPair> vp;
        std::set<Id> used;
        for (Id v : in.vertices) {
            if (!detail::rand_bool(rng)) continue;
            std::vector<Id> free;
            for (Id w : out.vertices)
                if (!used.count(w)) free.push_back(w);
            if (free.empty()) continue;
            Id w = free[size_t(detail::rand_int(rng, 0, int(free.size()) - 1))];
            vp.emplace(v, w);
            used.insert(w);
        }
        auto mapped = [&](Id v) -> std::optional<Id> {
            for (auto& [a, b] : vp)
                if (a == v) return b;
            return std::nullopt;
        };
        // Edge preservations whose endpoints follow the vertex map.
        std::set<IdPair> ep;
        std::set<Id> used_e;
        for (Id e : in.edges) {
            if (!detail::rand_bool(rng)) continue;
            auto s = mapped(in.src.at(e)), t = mapped(in.tgt.at(e));
            if (!s || !t) continue;
            for (Id f : out.edges)
                if (!used_e.count(f) && out.src.at(f) == *s && out.tgt.at(f) == *t) {
                    ep.emplace(e, f);
                    used_e.insert(f);
                    break;
                }
        }
        LinearRule r = make_linear_rule(std::move(in), std::move(out), std::move(vp),
                                        std::move(ep));
        if (is_valid_linear_rule(r) && is_connected_rule(r)) return r;
    }
}

// Builds a valid diagram by stacking random atomic rules, each glued to the
// stack above it along a randomly chosen admissible match (possibly empty).
template <class Rng>
RuleDiagram random_diagram(Rng& rng, const SamplerConfig& cfg = {}) {
    int parts = detail::rand_int(rng, 1, cfg.max_parts);
    RuleDiagram d = atomic_diagram(random_linear_rule(rng, cfg));
    for (int p = 1; p < parts; ++p) {
        RuleDiagram next = atomic_diagram(random_linear_rule(rng, cfg));
        auto ms = enumerate_matches(d, next);
        d = compose_along(d, ms[size_t(detail::rand_int(rng, 0, int(ms.size()) - 1))], next);
    }
    return d;
}

// Applies a random permutation to the local vertex and edge ids of every
// part, rewriting the rule maps and matches accordingly: an isomorphic
// presentation of the same diagram class.
template <class Rng>
RuleDiagram relabel_diagram(const RuleDiagram& d, Rng& rng) {
    // Per part and side, a bijection old local id -> new local id.
    struct SideMap {
        std::map<Id, Id> v, e;
    };
    std::vector<SideMap> in_maps(d.parts.size()), out_maps(d.parts.size());
    auto shuffle_ids = [&](const IdSet& ids) {
        std::vector<Id> olds(ids.begin(), ids.end()), news = olds;
        std::shuffle(news.begin(), news.end(), rng);
        std::map<Id, Id> m;
        for (size_t i = 0; i < olds.size(); ++i) m[olds[i]] = news[i];
        return m;
    };
    RuleDiagram out = d;
    for (size_t p = 0; p < d.parts.size(); ++p) {
        const LinearRule& r = d.parts[p];
        in_maps[p] = {shuffle_ids(r.input.vertices), shuffle_ids(r.input.edges)};
        out_maps[p] = {shuffle_ids(r.output.vertices), shuffle_ids(r.output.edges)};
        auto remap_graph = [&](const Multigraph& g, const SideMap& m) {
            Multigraph h;
            for (Id v : g.vertices) h.add_vertex(m.v.at(v));
            for (Id e : g.edges) h.add_edge(m.e.at(e), m.v.at(g.src.at(e)), m.v.at(g.tgt.at(e)));
            return h;
        };
        auto remap_pairs = [](const std::set<IdPair>& pairs, const std::map<Id, Id>& dm,
                              const std::map<Id, Id>& cm) {
            std::set<IdPair> out_pairs;
            for (auto& [a, b] : pairs) out_pairs.emplace(dm.at(a), cm.at(b));
            return out_pairs;
        };
        out.parts[p] = make_linear_rule(remap_graph(r.input, in_maps[p]),
                                        remap_graph(r.output, out_maps[p]),
                                        remap_pairs(r.rv.pairs, in_maps[p].v, out_maps[p].v),
                                        remap_pairs(r.re.pairs, in_maps[p].e, out_maps[p].e));
    }
    for (auto& [ij, m] : out.matches) {
        auto [i, j] = ij;
        auto remap = [&](const Relation& rel, const std::map<Id, Id>& dm,
                         const std::map<Id, Id>& cm) {
            std::set<IdPair> pairs;
            for (auto& [a, b] : rel.pairs)
                pairs.emplace(global_id(j, dm.at(local_of(a))), global_id(i, cm.at(local_of(b))));
            IdSet du, cu;
            for (Id x : rel.dom_universe) du.insert(global_id(j, dm.at(local_of(x))));
            for (Id x : rel.cod_universe) cu.insert(global_id(i, cm.at(local_of(x))));
            return Relation(std::move(du), std::move(cu), std::move(pairs));
        };
        m.fv = remap(m.fv, out_maps[size_t(j)].v, in_maps[size_t(i)].v);
        m.fe = remap(m.fe, out_maps[size_t(j)].e, in_maps[size_t(i)].e);
    }
    return out;
}

}  // namespace rdc
