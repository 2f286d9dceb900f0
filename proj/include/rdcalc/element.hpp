#pragma once

// The vector space of formal rational linear combinations of rule diagram
// isomorphism classes, with the bilinear composition, superposition, the
// nontrivial composition and the commutator.

#include <mutex>

#include "diagram.hpp"
#include "rational.hpp"

namespace rdc {

// Interns canonical keys and keeps one concrete representative diagram per
// key, so Element values can stay lightweight. Append-only and lock-guarded.
class Registry {
  public:
    static Registry& instance() {
        static Registry reg;
        return reg;
    }

    DiagramClassKey intern(const RuleDiagram& d) {
        DiagramClassKey key = canonical_diagram(d);
        std::lock_guard<std::mutex> lock(mutex_);
        reps_.emplace(key, d);
        return key;
    }

    RuleDiagram representative(const DiagramClassKey& key) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = reps_.find(key);
        if (it == reps_.end())
            throw std::invalid_argument("registry: unknown diagram key");
        return it->second;
    }

    bool known(const DiagramClassKey& key) const {
        std::lock_guard<std::mutex> lock(mutex_);
        return reps_.count(key) != 0;
    }

  private:
    Registry() { reps_.emplace(DiagramClassKey{}, RuleDiagram{}); }
    mutable std::mutex mutex_;
    std::map<DiagramClassKey, RuleDiagram> reps_;
};

struct Element {
    // Canonical key -> nonzero coefficient; deterministic iteration order.
    std::map<DiagramClassKey, Rational> terms;

    bool is_zero() const { return terms.empty(); }

    Rational coefficient(const DiagramClassKey& key) const {
        auto it = terms.find(key);
        return it == terms.end() ? Rational(0) : it->second;
    }

    Element& accumulate(const DiagramClassKey& key, const Rational& c) {
        if (c == 0) return *this;
        auto it = terms.emplace(key, Rational(0)).first;
        it->second += c;
        if (it->second == 0) terms.erase(it);
        return *this;
    }

    bool operator==(const Element&) const = default;
};

inline Element basis_element(const RuleDiagram& d, const Rational& c = 1) {
    Element x;
    x.accumulate(Registry::instance().intern(d), c);
    return x;
}

inline Element zero_element() { return {}; }

inline Element unit_element(const Rational& c = 1) { return basis_element(RuleDiagram{}, c); }

inline Element add(const Element& x, const Element& y) {
    Element out = x;
    for (const auto& [k, c] : y.terms) out.accumulate(k, c);
    return out;
}

inline Element sub(const Element& x, const Element& y) {
    Element out = x;
    for (const auto& [k, c] : y.terms) out.accumulate(k, -c);
    return out;
}

inline Element scale(const Rational& c, const Element& x) {
    Element out;
    if (c == 0) return out;
    for (const auto& [k, v] : x.terms) out.terms.emplace(k, c * v);
    return out;
}

inline Element operator+(const Element& x, const Element& y) { return add(x, y); }
inline Element operator-(const Element& x, const Element& y) { return sub(x, y); }
inline Element operator*(const Rational& c, const Element& x) { return scale(c, x); }

namespace detail {

// Memoized product of two basis diagrams: sum over all matches of the
// interned composite. Keyed by the canonical key pair, so every isomorphic
// representative pair shares the cache entry.
inline Element basis_compose(const DiagramClassKey& ka, const DiagramClassKey& kb) {
    static std::map<std::pair<DiagramClassKey, DiagramClassKey>, Element> cache;
    static std::mutex cache_mutex;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({ka, kb});
        if (it != cache.end()) return it->second;
    }
    RuleDiagram dA = Registry::instance().representative(ka);
    RuleDiagram dB = Registry::instance().representative(kb);
    Element out;
    for (const GraphMorphism& m : enumerate_matches(dA, dB))
        out.accumulate(Registry::instance().intern(compose_along_unchecked(dA, m, dB)), 1);
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(std::make_pair(ka, kb), out);
    return out;
}

}  // namespace detail

// Bilinear composition: dA stacked over dB, summed over all matches.
inline Element compose_D(const Element& x, const Element& y) {
    Element out;
    for (const auto& [ka, ca] : x.terms)
        for (const auto& [kb, cb] : y.terms) {
            Element prod = detail::basis_compose(ka, kb);
            for (const auto& [k, c] : prod.terms) out.accumulate(k, ca * cb * c);
        }
    return out;
}

// Bilinear superposition (disjoint union of basis diagrams).
inline Element superpose(const Element& x, const Element& y) {
    Element out;
    Registry& reg = Registry::instance();
    for (const auto& [ka, ca] : x.terms)
        for (const auto& [kb, cb] : y.terms) {
            // Component-multiset keys concatenate under disjoint union, so
            // the composite key can be formed without re-canonicalizing.
            std::vector<std::string> comps;
            auto split = [&](const DiagramClassKey& k) {
                size_t p = 0;
                while (p < k.size()) {
                    size_t q = k.find('\x02', p + 1);
                    if (q == std::string::npos) q = k.size();
                    comps.push_back(k.substr(p, q - p));
                    p = q;
                }
            };
            split(ka);
            split(kb);
            std::sort(comps.begin(), comps.end());
            DiagramClassKey key;
            for (auto& c : comps) key += c;
            if (!reg.known(key))
                reg.intern(superpose_diagram(reg.representative(ka), reg.representative(kb)));
            out.accumulate(key, ca * cb);
        }
    return out;
}

// Linear extension of diagram dualization.
inline Element dagger(const Element& x) {
    Element out;
    Registry& reg = Registry::instance();
    for (const auto& [k, c] : x.terms)
        out.accumulate(reg.intern(dagger_diagram(reg.representative(k))), c);
    return out;
}

// Nontrivial part of the composition: everything beyond the disjoint union.
inline Element nontrivial_compose(const Element& x, const Element& y) {
    return sub(compose_D(x, y), superpose(x, y));
}

inline Element commutator(const Element& x, const Element& y) {
    return sub(compose_D(x, y), compose_D(y, x));
}

// n-th superposition power x^{⊎n}; n = 0 gives the unit.
inline Element superpose_power(const Element& x, long n) {
    Element out = unit_element();
    for (long i = 0; i < n; ++i) out = superpose(out, x);
    return out;
}

// n-th composition power x^{*n}; n = 0 gives the unit.
inline Element compose_power(const Element& x, long n) {
    Element out = unit_element();
    for (long i = 0; i < n; ++i) out = compose_D(out, x);
    return out;
}

}  // namespace rdc
