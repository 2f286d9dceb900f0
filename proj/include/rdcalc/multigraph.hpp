#pragma once

// Finite directed multigraphs with first-class edge identifiers, their
// canonical forms, automorphisms and injective partial morphisms.
//
// Canonicalization is correctness-first and aimed at desk-scale graphs
// (roughly a dozen vertices): vertices are partitioned by an iterated
// degree/loop refinement, and the lexicographically smallest encoding over
// all class-respecting orders is taken as the canonical form.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relation.hpp"

namespace rdc {

struct Multigraph {
    IdSet vertices;
    IdSet edges;
    std::map<Id, Id> src;
    std::map<Id, Id> tgt;

    void add_vertex(Id v) { vertices.insert(v); }

    void add_edge(Id e, Id s, Id t) {
        if (!vertices.count(s) || !vertices.count(t))
            throw std::invalid_argument("add_edge: endpoint vertex unknown");
        edges.insert(e);
        src[e] = s;
        tgt[e] = t;
    }

    bool empty() const { return vertices.empty() && edges.empty(); }

    void check_invariants() const {
        for (Id e : edges) {
            auto s = src.find(e), t = tgt.find(e);
            if (s == src.end() || t == tgt.end() || !vertices.count(s->second) ||
                !vertices.count(t->second))
                throw std::invalid_argument("multigraph: src/tgt not total into V");
        }
    }

    bool operator==(const Multigraph& rhs) const = default;
};

using GraphClassKey = std::string;

// A concrete labeling: vertex ids -> 0..n-1 and edge ids -> 0..m-1.
struct GraphLabeling {
    std::map<Id, int> vertex_order;
    std::map<Id, int> edge_order;
};

namespace detail {

// Iterated 1-dimensional refinement: the invariant of a vertex is rebuilt
// from its (out-degree, in-degree, loop-count) seed and the sorted multiset
// of neighbor invariants until the partition stabilizes.
inline std::map<Id, int> refine_vertex_classes(const Multigraph& g) {
    std::map<Id, std::vector<long>> inv;
    for (Id v : g.vertices) {
        long outd = 0, ind = 0, loops = 0;
        for (Id e : g.edges) {
            Id s = g.src.at(e), t = g.tgt.at(e);
            if (s == v && t == v) ++loops;
            else if (s == v) ++outd;
            else if (t == v) ++ind;
        }
        inv[v] = {outd, ind, loops};
    }
    std::map<Id, int> cls;
    for (;;) {
        // Map invariant vectors to dense class indices.
        std::map<std::vector<long>, int> index;
        for (auto& [v, i] : inv) index.emplace(i, 0);
        int next = 0;
        for (auto& [i, idx] : index) idx = next++;
        std::map<Id, int> new_cls;
        for (auto& [v, i] : inv) new_cls[v] = index.at(i);
        if (new_cls == cls) return cls;
        cls = new_cls;
        // Refine with neighbor class multisets.
        std::map<Id, std::vector<long>> refined;
        for (Id v : g.vertices) refined[v] = {cls.at(v)};
        for (Id e : g.edges) {
            Id s = g.src.at(e), t = g.tgt.at(e);
            refined[s].push_back(1000 + cls.at(t));
            refined[t].push_back(2000 + cls.at(s));
        }
        for (auto& [v, r] : refined) std::sort(r.begin() + 1, r.end());
        inv = std::move(refined);
    }
}

inline std::string encode_graph(const Multigraph& g, const std::map<Id, int>& vorder) {
    std::vector<std::pair<int, int>> es;
    es.reserve(g.edges.size());
    for (Id e : g.edges) es.emplace_back(vorder.at(g.src.at(e)), vorder.at(g.tgt.at(e)));
    std::sort(es.begin(), es.end());
    std::string out = "G" + std::to_string(g.vertices.size()) + ":";
    for (auto& [s, t] : es) out += std::to_string(s) + ">" + std::to_string(t) + ";";
    return out;
}

// Enumerates all vertex orders compatible with the refinement classes
// (classes occupy consecutive position blocks, permuted internally) and
// calls fn for each.
template <class Fn>
void for_each_class_order(const Multigraph& g, Fn&& fn) {
    auto cls = refine_vertex_classes(g);
    std::map<int, std::vector<Id>> by_class;
    for (auto& [v, c] : cls) by_class[c].push_back(v);
    std::vector<std::vector<Id>> blocks;
    for (auto& [c, vs] : by_class) {
        std::sort(vs.begin(), vs.end());
        blocks.push_back(vs);
    }
    std::map<Id, int> order;
    // Depth-first product of within-block permutations.
    auto rec = [&](auto&& self, size_t bi, int base) -> void {
        if (bi == blocks.size()) {
            fn(order);
            return;
        }
        std::vector<Id> perm = blocks[bi];
        do {
            for (size_t i = 0; i < perm.size(); ++i) order[perm[i]] = base + int(i);
            self(self, bi + 1, base + int(perm.size()));
        } while (std::next_permutation(perm.begin(), perm.end()));
    };
    rec(rec, 0, 0);
}

}  // namespace detail

struct CanonicalForm {
    GraphClassKey key;
    GraphLabeling labeling;  // one labeling realizing the key
};

// All labelings (vertex and edge orders) that realize the canonical key.
// Their count equals |Aut(G)|: composing one canonical labeling with the
// automorphism group yields exactly the others, and permutations of parallel
// edges are included (multigraph automorphisms act on edges too).
inline std::vector<GraphLabeling> canonical_labelings(const Multigraph& g) {
    g.check_invariants();
    std::string best;
    std::vector<std::map<Id, int>> best_vorders;
    detail::for_each_class_order(g, [&](const std::map<Id, int>& vorder) {
        std::string enc = detail::encode_graph(g, vorder);
        if (best.empty() || enc < best) {
            best = enc;
            best_vorders.assign(1, vorder);
        } else if (enc == best) {
            best_vorders.push_back(vorder);
        }
    });
    if (g.vertices.empty()) {
        best = detail::encode_graph(g, {});
        best_vorders.assign(1, {});
    }
    std::vector<GraphLabeling> out;
    for (auto& vorder : best_vorders) {
        // Group edges by labeled (src,tgt); parallel edges are symmetric, so
        // every arrangement inside a group is canonical.
        std::map<std::pair<int, int>, std::vector<Id>> groups;
        for (Id e : g.edges)
            groups[{vorder.at(g.src.at(e)), vorder.at(g.tgt.at(e))}].push_back(e);
        std::vector<std::vector<Id>> perms_per_group;
        std::vector<std::pair<int, int>> group_keys;
        for (auto& [k, es] : groups) {
            std::sort(es.begin(), es.end());
            group_keys.push_back(k);
        }
        std::map<Id, int> eorder;
        auto rec = [&](auto&& self, size_t gi, int base) -> void {
            if (gi == group_keys.size()) {
                out.push_back(GraphLabeling{vorder, eorder});
                return;
            }
            std::vector<Id> perm = groups.at(group_keys[gi]);
            do {
                for (size_t i = 0; i < perm.size(); ++i) eorder[perm[i]] = base + int(i);
                self(self, gi + 1, base + int(perm.size()));
            } while (std::next_permutation(perm.begin(), perm.end()));
        };
        rec(rec, 0, 0);
    }
    return out;
}

inline CanonicalForm canonical_form(const Multigraph& g) {
    auto labs = canonical_labelings(g);
    return CanonicalForm{detail::encode_graph(g, labs.front().vertex_order), labs.front()};
}

inline GraphClassKey graph_class_key(const Multigraph& g) { return canonical_form(g).key; }

inline long long automorphism_count(const Multigraph& g) {
    return static_cast<long long>(canonical_labelings(g).size());
}

// Disjoint union with the second graph's identifiers shifted into a fresh
// range. Returns the union plus the id translation applied to g2.
inline Multigraph disjoint_union(const Multigraph& g1, const Multigraph& g2,
                                 std::map<Id, Id>* g2_vertex_map = nullptr,
                                 std::map<Id, Id>* g2_edge_map = nullptr) {
    Multigraph out = g1;
    Id base = 0;
    for (Id v : g1.vertices) base = std::max(base, v + 1);
    for (Id e : g1.edges) base = std::max(base, e + 1);
    for (Id v : g2.vertices) base = std::max(base, v + 1);  // keep maps injective
    for (Id e : g2.edges) base = std::max(base, e + 1);
    std::map<Id, Id> vmap, emap;
    Id next = base;
    for (Id v : g2.vertices) {
        vmap[v] = next;
        out.add_vertex(next++);
    }
    for (Id e : g2.edges) {
        emap[e] = next;
        out.add_edge(next++, vmap.at(g2.src.at(e)), vmap.at(g2.tgt.at(e)));
    }
    if (g2_vertex_map) *g2_vertex_map = vmap;
    if (g2_edge_map) *g2_edge_map = emap;
    return out;
}

// Deletes the listed vertices and edges plus every edge that loses an
// endpoint. Unknown identifiers are a contract violation.
inline Multigraph delete_closed(const IdSet& del_vertices, const IdSet& del_edges,
                                const Multigraph& g) {
    for (Id v : del_vertices)
        if (!g.vertices.count(v)) throw std::invalid_argument("delete_closed: unknown vertex");
    for (Id e : del_edges)
        if (!g.edges.count(e)) throw std::invalid_argument("delete_closed: unknown edge");
    Multigraph out;
    for (Id v : g.vertices)
        if (!del_vertices.count(v)) out.add_vertex(v);
    for (Id e : g.edges) {
        if (del_edges.count(e)) continue;
        Id s = g.src.at(e), t = g.tgt.at(e);
        if (del_vertices.count(s) || del_vertices.count(t)) continue;
        out.add_edge(e, s, t);
    }
    return out;
}

// Weakly connected components, each returned with its original identifiers.
inline std::vector<Multigraph> connected_components(const Multigraph& g) {
    std::map<Id, Id> parent;
    auto find = [&](Id x) {
        while (parent.at(x) != x) x = parent.at(x) = parent.at(parent.at(x));
        return x;
    };
    for (Id v : g.vertices) parent[v] = v;
    for (Id e : g.edges) parent[find(g.src.at(e))] = find(g.tgt.at(e));
    std::map<Id, Multigraph> comps;
    for (Id v : g.vertices) comps[find(v)].add_vertex(v);
    for (Id e : g.edges) comps[find(g.src.at(e))].add_edge(e, g.src.at(e), g.tgt.at(e));
    std::vector<Multigraph> out;
    for (auto& [root, c] : comps) out.push_back(std::move(c));
    return out;
}

inline bool is_connected(const Multigraph& g) { return connected_components(g).size() <= 1; }

// A partial injective graph morphism: one-to-one vertex and edge relations
// where every mapped edge has both endpoints mapped consistently.
struct GraphMorphism {
    Relation fv;  // V_G -> V_H
    Relation fe;  // E_G -> E_H
};

inline bool morphism_condition_holds(const Multigraph& g, const Multigraph& h,
                                     const Relation& fv, const Relation& fe) {
    if (!is_one_to_one(fv) || !is_one_to_one(fe)) return false;
    for (const auto& [e, e2] : fe.pairs) {
        if (!fv.contains(g.src.at(e), h.src.at(e2))) return false;
        if (!fv.contains(g.tgt.at(e), h.tgt.at(e2))) return false;
    }
    return true;
}

// All injective partial graph morphisms G -> H, including the empty one.
inline std::vector<GraphMorphism> enumerate_injective_partial_morphisms(const Multigraph& g,
                                                                        const Multigraph& h) {
    std::vector<GraphMorphism> out;
    std::vector<Id> gv(g.vertices.begin(), g.vertices.end());
    std::vector<Id> ge(g.edges.begin(), g.edges.end());

    Relation fv(g.vertices, h.vertices), fe(g.edges, h.edges);
    IdSet used_v, used_e;

    // Backtrack over vertices first (each maps to some h-vertex or stays
    // unmapped), then over edges constrained by the endpoint condition.
    auto edge_rec = [&](auto&& self, size_t i) -> void {
        if (i == ge.size()) {
            out.push_back(GraphMorphism{fv, fe});
            return;
        }
        self(self, i + 1);  // leave edge unmapped
        Id e = ge[i];
        auto sv = fv.apply(g.src.at(e)), tv = fv.apply(g.tgt.at(e));
        if (!sv || !tv) return;
        for (Id e2 : h.edges) {
            if (used_e.count(e2)) continue;
            if (h.src.at(e2) != *sv || h.tgt.at(e2) != *tv) continue;
            fe.pairs.emplace(e, e2);
            used_e.insert(e2);
            self(self, i + 1);
            used_e.erase(e2);
            fe.pairs.erase({e, e2});
        }
    };
    auto vertex_rec = [&](auto&& self, size_t i) -> void {
        if (i == gv.size()) {
            edge_rec(edge_rec, 0);
            return;
        }
        self(self, i + 1);  // leave vertex unmapped
        Id v = gv[i];
        for (Id w : h.vertices) {
            if (used_v.count(w)) continue;
            fv.pairs.emplace(v, w);
            used_v.insert(w);
            self(self, i + 1);
            used_v.erase(w);
            fv.pairs.erase({v, w});
        }
    };
    vertex_rec(vertex_rec, 0);
    return out;
}

}  // namespace rdc
