#pragma once

// Hopf-algebraic structure on the diagram algebra: coproduct over connected
// components, counit, k-fold (co)multiplication, the component-count
// filtration, the antipode, and the normal-form expansion of superpositions
// into ordered products of primitives (PBW-style).

#include "element.hpp"

namespace rdc {

// ---------------------------------------------------------------------------
// Tensor elements
// ---------------------------------------------------------------------------

struct TensorElement {
    int arity = 2;
    std::map<std::vector<DiagramClassKey>, Rational> terms;

    bool is_zero() const { return terms.empty(); }

    TensorElement& accumulate(const std::vector<DiagramClassKey>& word, const Rational& c) {
        if (c == 0) return *this;
        auto it = terms.emplace(word, Rational(0)).first;
        it->second += c;
        if (it->second == 0) terms.erase(it);
        return *this;
    }

    Rational coefficient(const std::vector<DiagramClassKey>& word) const {
        auto it = terms.find(word);
        return it == terms.end() ? Rational(0) : it->second;
    }

    bool operator==(const TensorElement&) const = default;
};

inline TensorElement tensor_add(const TensorElement& x, const TensorElement& y) {
    if (x.arity != y.arity) throw std::invalid_argument("tensor_add: arity mismatch");
    TensorElement out = x;
    for (const auto& [w, c] : y.terms) out.accumulate(w, c);
    return out;
}

inline TensorElement tensor_scale(const Rational& c, const TensorElement& x) {
    TensorElement out;
    out.arity = x.arity;
    if (c == 0) return out;
    for (const auto& [w, v] : x.terms) out.terms.emplace(w, c * v);
    return out;
}

// Componentwise algebra product on equal-arity tensors.
inline TensorElement tensor_multiply(const TensorElement& x, const TensorElement& y) {
    if (x.arity != y.arity) throw std::invalid_argument("tensor_multiply: arity mismatch");
    TensorElement out;
    out.arity = x.arity;
    for (const auto& [wx, cx] : x.terms)
        for (const auto& [wy, cy] : y.terms) {
            // Expand the per-slot products and distribute.
            std::vector<Element> slot(x.arity);
            for (int i = 0; i < x.arity; ++i) {
                Element a, b;
                a.terms.emplace(wx[i], Rational(1));
                b.terms.emplace(wy[i], Rational(1));
                slot[i] = compose_D(a, b);
            }
            std::vector<DiagramClassKey> word(x.arity);
            auto rec = [&](auto&& self, int i, Rational c) -> void {
                if (i == x.arity) {
                    out.accumulate(word, c);
                    return;
                }
                for (const auto& [k, v] : slot[i].terms) {
                    word[i] = k;
                    self(self, i + 1, c * v);
                }
            };
            rec(rec, 0, cx * cy);
        }
    return out;
}

inline TensorElement tensor_swap(const TensorElement& x) {
    if (x.arity != 2) throw std::invalid_argument("tensor_swap: arity must be 2");
    TensorElement out;
    out.arity = 2;
    for (const auto& [w, c] : x.terms) out.accumulate({w[1], w[0]}, c);
    return out;
}

inline TensorElement tensor_product(const Element& x, const Element& y) {
    TensorElement out;
    out.arity = 2;
    for (const auto& [kx, cx] : x.terms)
        for (const auto& [ky, cy] : y.terms) out.accumulate({kx, ky}, cx * cy);
    return out;
}

// ---------------------------------------------------------------------------
// Coproduct, counit, filtration
// ---------------------------------------------------------------------------

// Canonical keys are concatenations of '\x02'-prefixed primitive component
// keys, so the filtration degree (number of primitive components) can be
// read off directly.
inline int filtration_degree(const DiagramClassKey& key) {
    return int(std::count(key.begin(), key.end(), '\x02'));
}

inline int filtration_degree(const Element& x) {
    int deg = 0;
    for (const auto& [k, c] : x.terms) deg = std::max(deg, filtration_degree(k));
    return deg;
}

namespace detail {

// The '\x02'-prefixed component keys of a basis diagram, ascending.
inline std::vector<DiagramClassKey> component_keys(const DiagramClassKey& key) {
    std::vector<DiagramClassKey> out;
    size_t p = 0;
    while (p < key.size()) {
        size_t q = key.find('\x02', p + 1);
        if (q == std::string::npos) q = key.size();
        out.push_back(key.substr(p, q - p));
        p = q;
    }
    return out;
}

// Component keys with registry representatives guaranteed to exist (splits
// the representative diagram and interns each piece).
inline std::vector<DiagramClassKey> interned_component_keys(const DiagramClassKey& key) {
    RuleDiagram rep = Registry::instance().representative(key);
    std::vector<DiagramClassKey> out;
    for (const auto& c : diagram_components(rep))
        out.push_back(Registry::instance().intern(sub_diagram(rep, c)));
    std::sort(out.begin(), out.end());
    return out;
}

// Key of the sub-diagram spanned by a subset of components; makes sure the
// registry holds a representative.
inline DiagramClassKey subset_key(const RuleDiagram& rep,
                                  const std::vector<std::vector<int>>& comps,
                                  const std::vector<DiagramClassKey>& comp_keys,
                                  unsigned mask) {
    std::vector<DiagramClassKey> chosen;
    for (size_t i = 0; i < comps.size(); ++i)
        if (mask & (1u << i)) chosen.push_back(comp_keys[i]);
    std::sort(chosen.begin(), chosen.end());
    DiagramClassKey key;
    for (auto& k : chosen) key += k;
    if (!Registry::instance().known(key)) {
        std::vector<int> idxs;
        for (size_t i = 0; i < comps.size(); ++i)
            if (mask & (1u << i)) idxs.insert(idxs.end(), comps[i].begin(), comps[i].end());
        std::sort(idxs.begin(), idxs.end());
        Registry::instance().intern(sub_diagram(rep, idxs));
    }
    return key;
}

// Coproduct of a single basis diagram; with proper_only the empty and full
// component subsets are omitted (reduced coproduct).
inline TensorElement basis_coproduct(const DiagramClassKey& key, bool proper_only) {
    RuleDiagram rep = Registry::instance().representative(key);
    auto comps = diagram_components(rep);
    if (comps.size() > 30) throw std::invalid_argument("coproduct: too many components");
    std::vector<DiagramClassKey> comp_keys;
    for (auto& c : comps) comp_keys.push_back(canonical_diagram(sub_diagram(rep, c)));
    TensorElement out;
    out.arity = 2;
    unsigned full = (1u << comps.size()) - 1;
    for (unsigned mask = 0; mask <= full; ++mask) {
        if (proper_only && (mask == 0 || mask == full)) continue;
        out.accumulate({subset_key(rep, comps, comp_keys, mask),
                        subset_key(rep, comps, comp_keys, full & ~mask)},
                       1);
        if (full == 0) break;  // d_∅: single empty subset
    }
    return out;
}

}  // namespace detail

inline TensorElement coproduct(const Element& x) {
    TensorElement out;
    out.arity = 2;
    for (const auto& [k, c] : x.terms)
        out = tensor_add(out, tensor_scale(c, detail::basis_coproduct(k, false)));
    return out;
}

// Reduced coproduct: coproduct minus the two unit-factor terms; annihilates
// d_∅ and every primitive basis diagram.
inline TensorElement reduced_coproduct(const Element& x) {
    TensorElement out;
    out.arity = 2;
    for (const auto& [k, c] : x.terms)
        out = tensor_add(out, tensor_scale(c, detail::basis_coproduct(k, true)));
    return out;
}

inline Rational counit(const Element& x) { return x.coefficient(DiagramClassKey{}); }

namespace detail {

// Expands slot 0 of every word with the (full or reduced) coproduct, raising
// the arity by one.
inline TensorElement expand_first_slot(const TensorElement& t, bool proper_only) {
    TensorElement out;
    out.arity = t.arity + 1;
    for (const auto& [w, c] : t.terms) {
        TensorElement delta = basis_coproduct(w[0], proper_only);
        for (const auto& [pair, c2] : delta.terms) {
            std::vector<DiagramClassKey> word;
            word.reserve(w.size() + 1);
            word.push_back(pair[0]);
            word.push_back(pair[1]);
            word.insert(word.end(), w.begin() + 1, w.end());
            out.accumulate(word, c * c2);
        }
    }
    return out;
}

inline TensorElement k_fold(const Element& x, int k, bool proper_only) {
    if (k < 1) throw std::invalid_argument("k-fold coproduct: k must be >= 1");
    TensorElement t;
    t.arity = 1;
    for (const auto& [key, c] : x.terms) t.accumulate({key}, c);
    for (int i = 1; i < k; ++i) t = expand_first_slot(t, proper_only);
    return t;
}

}  // namespace detail

inline TensorElement k_fold_coproduct(const Element& x, int k) {
    return detail::k_fold(x, k, false);
}

inline TensorElement k_fold_reduced_coproduct(const Element& x, int k) {
    return detail::k_fold(x, k, true);
}

inline Element k_fold_product(const TensorElement& t) {
    Element out;
    for (const auto& [w, c] : t.terms) {
        Element prod = unit_element();
        for (const auto& k : w) {
            Element f;
            f.terms.emplace(k, Rational(1));
            prod = compose_D(prod, f);
        }
        for (const auto& [k, v] : prod.terms) out.accumulate(k, c * v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Antipode
// ---------------------------------------------------------------------------
//
// S(d) = e(d) + sum_{k=1..n} (e - Id)^{*k}(d) for a degree-n basis diagram,
// where * is the convolution product. Computed with the reduced coproduct:
// its tensor factors never contain the unit, on which e - Id acts as -Id, so
// (e - Id)^{*k}(d) = (-1)^k mu_k(reduced Delta_k(d)).

inline Element antipode(const Element& x) {
    Element out;
    for (const auto& [key, c] : x.terms) {
        int n = filtration_degree(key);
        if (n == 0) {
            out.accumulate(key, c);  // S(d_∅) = d_∅
            continue;
        }
        Element basis;
        basis.terms.emplace(key, Rational(1));
        Element s;
        for (int k = 1; k <= n; ++k) {
            Rational sign = (k % 2 == 0) ? 1 : -1;
            s = add(s, scale(sign, k_fold_product(k_fold_reduced_coproduct(basis, k))));
        }
        for (const auto& [k2, v] : s.terms) out.accumulate(k2, c * v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Normal form: superpositions as polynomials in ordered *-products
// ---------------------------------------------------------------------------

// A formal rational polynomial in *-words of primitive keys; the empty word
// is the unit.
using PbwWord = std::vector<DiagramClassKey>;
using PbwPoly = std::map<PbwWord, Rational>;

inline Element pbw_evaluate(const PbwPoly& poly) {
    Element out;
    for (const auto& [word, c] : poly) {
        Element prod = unit_element();
        for (const auto& k : word) {
            Element f;
            f.terms.emplace(k, Rational(1));
            prod = compose_D(prod, f);
        }
        for (const auto& [k, v] : prod.terms) out.accumulate(k, c * v);
    }
    return out;
}

// Rewrites an Element as a polynomial in non-decreasing *-products of
// primitive keys. Triangular elimination: the *-product of a basis diagram's
// primitive components reproduces it with coefficient exactly 1 (the empty
// matches) plus terms of strictly smaller component count.
inline PbwPoly pbw_normal_form(const Element& x) {
    PbwPoly poly;
    Element rest = x;
    while (!rest.is_zero()) {
        // Highest filtration degree first; ties by key order.
        auto best = rest.terms.begin();
        for (auto it = rest.terms.begin(); it != rest.terms.end(); ++it)
            if (filtration_degree(it->first) > filtration_degree(best->first)) best = it;
        DiagramClassKey key = best->first;
        Rational c = best->second;
        PbwWord word = detail::interned_component_keys(key);  // ascending order
        poly[word] += c;
        if (poly[word] == 0) poly.erase(word);
        PbwPoly one;
        one[word] = c;
        rest = sub(rest, pbw_evaluate(one));
    }
    return poly;
}

}  // namespace rdc
