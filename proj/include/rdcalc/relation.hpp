#pragma once

// Finite binary relations between explicit identifier universes.
// These are the bedrock of everything else: graph morphisms, rules and
// matches are all pairs of one-to-one relations.

#include <algorithm>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

namespace rdc {

using Id = long long;
using IdSet = std::set<Id>;
using IdPair = std::pair<Id, Id>;

struct Relation {
    IdSet dom_universe;
    IdSet cod_universe;
    std::set<IdPair> pairs;

    Relation() = default;
    Relation(IdSet dom, IdSet cod, std::set<IdPair> ps = {})
        : dom_universe(std::move(dom)), cod_universe(std::move(cod)), pairs(std::move(ps)) {
        check_invariants();
    }

    void check_invariants() const {
        for (const auto& [a, b] : pairs) {
            if (!dom_universe.count(a) || !cod_universe.count(b))
                throw std::invalid_argument("relation pair outside its universes");
        }
    }

    void insert(Id a, Id b) {
        if (!dom_universe.count(a) || !cod_universe.count(b))
            throw std::invalid_argument("relation pair outside its universes");
        pairs.emplace(a, b);
    }

    bool contains(Id a, Id b) const { return pairs.count({a, b}) != 0; }

    IdSet domain() const {
        IdSet d;
        for (const auto& p : pairs) d.insert(p.first);
        return d;
    }

    IdSet image() const {
        IdSet im;
        for (const auto& p : pairs) im.insert(p.second);
        return im;
    }

    bool in_domain(Id a) const {
        auto it = pairs.lower_bound({a, std::numeric_limits<Id>::min()});
        return it != pairs.end() && it->first == a;
    }

    bool in_image(Id b) const {
        for (const auto& p : pairs)
            if (p.second == b) return true;
        return false;
    }

    // Unique image of a under a univalent relation; nullopt if unmapped.
    std::optional<Id> apply(Id a) const {
        std::optional<Id> out;
        auto it = pairs.lower_bound({a, std::numeric_limits<Id>::min()});
        for (; it != pairs.end() && it->first == a; ++it) {
            if (out) throw std::logic_error("apply() on a non-univalent relation");
            out = it->second;
        }
        return out;
    }

    // Unique preimage of b under an injective relation; nullopt if not hit.
    std::optional<Id> apply_inverse(Id b) const {
        std::optional<Id> out;
        for (const auto& p : pairs) {
            if (p.second == b) {
                if (out) throw std::logic_error("apply_inverse() on a non-injective relation");
                out = p.first;
            }
        }
        return out;
    }

    bool operator==(const Relation& rhs) const = default;
};

inline Relation identity_rel(const IdSet& a) {
    Relation r(a, a);
    for (Id x : a) r.pairs.emplace(x, x);
    return r;
}

// Composition S o R = {(a,c) | exists b: (a,b) in R and (b,c) in S}.
inline Relation compose_rel(const Relation& s, const Relation& r) {
    if (r.cod_universe != s.dom_universe)
        throw std::invalid_argument("compose_rel: universe mismatch");
    Relation out(r.dom_universe, s.cod_universe);
    for (const auto& [a, b] : r.pairs) {
        auto it = s.pairs.lower_bound({b, std::numeric_limits<Id>::min()});
        for (; it != s.pairs.end() && it->first == b; ++it) out.pairs.emplace(a, it->second);
    }
    return out;
}

inline Relation converse(const Relation& r) {
    Relation out(r.cod_universe, r.dom_universe);
    for (const auto& [a, b] : r.pairs) out.pairs.emplace(b, a);
    return out;
}

inline Relation union_rel(const Relation& a, const Relation& b) {
    if (a.dom_universe != b.dom_universe || a.cod_universe != b.cod_universe)
        throw std::invalid_argument("union_rel: universe mismatch");
    Relation out = a;
    out.pairs.insert(b.pairs.begin(), b.pairs.end());
    return out;
}

// Reflexive transitive closure id ∪ R ∪ R∘R ∪ ..., computed by iterated
// squaring; universes are finite, so a fixed point is always reached.
inline Relation kleene_star(const Relation& r) {
    if (r.dom_universe != r.cod_universe)
        throw std::invalid_argument("kleene_star: relation is not an endo-relation");
    Relation t = union_rel(identity_rel(r.dom_universe), r);
    for (;;) {
        Relation next = union_rel(t, compose_rel(t, t));
        if (next.pairs == t.pairs) return t;
        t = std::move(next);
    }
}

// One-to-one = univalent (no shared first components) and injective (no
// shared second components).
inline bool is_one_to_one(const Relation& r) {
    IdSet firsts, seconds;
    for (const auto& [a, b] : r.pairs) {
        if (!firsts.insert(a).second) return false;
        if (!seconds.insert(b).second) return false;
    }
    return true;
}

// True iff no chain a_1 -> ... -> a_k with (a_k, a_1) in R exists. Self-pairs
// (a,a) count as cycles: a worldline that matches an item to itself would be
// degenerate.
inline bool is_acyclic(const Relation& r) {
    if (r.dom_universe != r.cod_universe)
        throw std::invalid_argument("is_acyclic: relation is not an endo-relation");
    // R is acyclic iff the transitive closure R+ = R ∘ R* has no self-pair.
    Relation closure = compose_rel(r, kleene_star(r));
    for (Id x : r.dom_universe)
        if (closure.contains(x, x)) return false;
    return true;
}

// Restricts a relation to sub-universes, dropping pairs that fall outside.
inline Relation restrict_rel(const Relation& r, const IdSet& dom, const IdSet& cod) {
    Relation out(dom, cod);
    for (const auto& [a, b] : r.pairs)
        if (dom.count(a) && cod.count(b)) out.pairs.emplace(a, b);
    return out;
}

}  // namespace rdc
