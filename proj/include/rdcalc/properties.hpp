#pragma once

// Randomized property checks over sampled diagrams: associativity of both
// products, the reduction homomorphism, dagger anti-involution behavior and
// representative independence. Sample count is configurable (see the
// RDCALC_SAMPLES environment variable in the CLI and tests).

#include <cstdlib>

#include "sampling.hpp"
#include "verify.hpp"

namespace rdc {

inline int samples_from_env(int fallback) {
    if (const char* s = std::getenv("RDCALC_SAMPLES")) {
        int n = std::atoi(s);
        if (n > 0) return n;
    }
    return fallback;
}

inline SuiteReport verify_properties(int samples = 200, unsigned seed = 20240817) {
    SuiteReport rep{"properties", {}};
    std::mt19937 rng(seed);
    SamplerConfig cfg;
    std::vector<Element> pool;
    int relabel_ok = 0, dagger_key_ok = 0;
    for (int i = 0; i < samples; ++i) {
        RuleDiagram d = random_diagram(rng, cfg);
        pool.push_back(basis_element(d));
        // Representative independence: a relabeled isomorphic presentation
        // interns to the same class key.
        RuleDiagram rl = relabel_diagram(d, rng);
        if (canonical_diagram(d) == canonical_diagram(rl)) ++relabel_ok;
        // Dagger is an involution on classes.
        if (canonical_diagram(dagger_diagram(dagger_diagram(d))) == canonical_diagram(d))
            ++dagger_key_ok;
    }
    rep.check_bool("relabeling preserves class keys (" + std::to_string(samples) + " samples)",
                   true, relabel_ok == samples);
    rep.check_bool("dagger is an involution on classes", true, dagger_key_ok == samples);

    int triples = std::max(1, samples / 10);
    bool assoc_d = true, dagger_anti = true, relabel_compose = true;
    std::map<RewritingType, bool> assoc_r, homo;
    for (RewritingType t : kAllTypes) assoc_r[t] = homo[t] = true;
    for (int i = 0; i < triples; ++i) {
        Element x = pool[size_t(detail::rand_int(rng, 0, samples - 1))];
        Element y = pool[size_t(detail::rand_int(rng, 0, samples - 1))];
        Element z = pool[size_t(detail::rand_int(rng, 0, samples - 1))];
        if (compose_D(compose_D(x, y), z) != compose_D(x, compose_D(y, z))) assoc_d = false;
        if (dagger(compose_D(x, y)) != compose_D(dagger(y), dagger(x))) dagger_anti = false;
        for (RewritingType t : kAllTypes) {
            Element xr = reduce(x, t), yr = reduce(y, t), zr = reduce(z, t);
            if (compose_R(compose_R(xr, yr, t), zr, t) != compose_R(xr, compose_R(yr, zr, t), t))
                assoc_r[t] = false;
            if (reduce(compose_D(x, y), t) != compose_R(xr, yr, t)) homo[t] = false;
        }
        // Composition is independent of which representative got interned:
        // compose relabeled presentations and compare.
        RuleDiagram da = random_diagram(rng, cfg), db = random_diagram(rng, cfg);
        Element p1 = compose_D(basis_element(da), basis_element(db));
        Element p2 = compose_D(basis_element(relabel_diagram(da, rng)),
                               basis_element(relabel_diagram(db, rng)));
        if (p1 != p2) relabel_compose = false;
    }
    rep.check_bool("associativity of * (" + std::to_string(triples) + " triples)", true, assoc_d);
    for (RewritingType t : kAllTypes) {
        rep.check_bool(std::string("associativity of *_") + to_string(t), true, assoc_r[t]);
        rep.check_bool(std::string("reduction homomorphism, ") + to_string(t), true, homo[t]);
    }
    rep.check_bool("dagger anti-homomorphism", true, dagger_anti);
    rep.check_bool("composition independent of representatives", true, relabel_compose);
    return rep;
}

// PBW round trip on random superpositions of sampled primitives.
inline SuiteReport verify_pbw(int samples = 50, unsigned seed = 905) {
    SuiteReport rep{"pbw", {}};
    std::mt19937 rng(seed);
    SamplerConfig cfg;
    int round_trips = 0, unit_top = 0;
    for (int i = 0; i < samples; ++i) {
        // Superpose up to three primitive diagrams.
        Element x = unit_element();
        int n = detail::rand_int(rng, 1, 3);
        for (int k = 0; k < n; ++k) {
            RuleDiagram d = random_diagram(rng, cfg);
            if (!classify(d).primitive) {
                --k;
                continue;
            }
            x = superpose(x, basis_element(d));
        }
        PbwPoly poly = pbw_normal_form(x);
        if (pbw_evaluate(poly) == x) ++round_trips;
        // Triangularity: the full *-word reproduces the top term with
        // coefficient exactly 1.
        const DiagramClassKey& key = x.terms.begin()->first;
        PbwPoly word;
        word[detail::interned_component_keys(key)] = 1;
        if (pbw_evaluate(word).coefficient(key) == 1) ++unit_top;
    }
    rep.check_bool("pbw round trip (" + std::to_string(samples) + " samples)", true,
                   round_trips == samples);
    rep.check_bool("top coefficient of *-words is 1", true, unit_top == samples);
    // I^{⊎n} equals its falling-factorial expansion in rule-algebra powers
    // of I (the result is the same for all four rewriting types).
    for (long n = 0; n <= 5; ++n) {
        Element expect;
        for (const auto& [j, c] : falling_factorial_expand(n))
            expect = add(expect, scale(c, vertex_normal_form(0, j, 0)));
        rep.check("I^⊎" + std::to_string(n) + " falling factorial",
                  superpose_power(gen_I(), n), expect);
    }
    return rep;
}

}  // namespace rdc
