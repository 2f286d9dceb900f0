#pragma once

// The named generators of the studied subalgebras (vertex, loop, edge,
// Heisenberg–Weyl, structural, observables) together with the closed-form
// expressions their composites are checked against.

#include "hopf.hpp"
#include "reduction.hpp"

namespace rdc {

// ---------------------------------------------------------------------------
// Vertex generators
// ---------------------------------------------------------------------------

inline Multigraph one_vertex_graph() {
    Multigraph g;
    g.add_vertex(0);
    return g;
}

// a: delete one vertex.
inline RuleDiagram gen_a_diagram() {
    return atomic_diagram(make_linear_rule(one_vertex_graph(), Multigraph{}, {}, {}));
}

// a†: create one vertex.
inline RuleDiagram gen_adag_diagram() {
    return atomic_diagram(make_linear_rule(Multigraph{}, one_vertex_graph(), {}, {}));
}

// I: preserve one vertex.
inline RuleDiagram gen_I_diagram() {
    return atomic_diagram(make_linear_rule(one_vertex_graph(), one_vertex_graph(), {{0, 0}}, {}));
}

inline Element gen_a() { return basis_element(gen_a_diagram()); }
inline Element gen_adag() { return basis_element(gen_adag_diagram()); }
inline Element gen_I() { return basis_element(gen_I_diagram()); }

// ---------------------------------------------------------------------------
// Loop generators
// ---------------------------------------------------------------------------

// λ(M, P, N): one preserved vertex carrying M created, P preserved and N
// deleted self-loops.
inline RuleDiagram gen_lambda_diagram(int created, int preserved, int deleted) {
    Multigraph in, out;
    in.add_vertex(0);
    out.add_vertex(0);
    std::set<IdPair> re;
    for (int i = 0; i < preserved + deleted; ++i) in.add_edge(1 + i, 0, 0);
    for (int i = 0; i < preserved + created; ++i) out.add_edge(1 + i, 0, 0);
    for (int i = 0; i < preserved; ++i) re.emplace(1 + i, 1 + i);
    return atomic_diagram(make_linear_rule(std::move(in), std::move(out), {{0, 0}}, std::move(re)));
}

inline Element gen_lambda(int created, int preserved, int deleted) {
    return basis_element(gen_lambda_diagram(created, preserved, deleted));
}

inline Element gen_ldag() { return gen_lambda(1, 0, 0); }  // create a loop
inline Element gen_L() { return gen_lambda(0, 1, 0); }     // preserve a loop
inline Element gen_l() { return gen_lambda(0, 0, 1); }     // delete a loop

// (aℓ): delete a vertex together with its loop; (a†ℓ†): create both.
inline Element gen_al() {
    Multigraph in;
    in.add_vertex(0);
    in.add_edge(1, 0, 0);
    return basis_element(atomic_diagram(make_linear_rule(std::move(in), Multigraph{}, {}, {})));
}

inline Element gen_adag_ldag() {
    Multigraph out;
    out.add_vertex(0);
    out.add_edge(1, 0, 0);
    return basis_element(atomic_diagram(make_linear_rule(Multigraph{}, std::move(out), {}, {})));
}

// ---------------------------------------------------------------------------
// Edge generators (two distinct endpoint vertices, both preserved)
// ---------------------------------------------------------------------------

inline Multigraph two_vertex_graph() {
    Multigraph g;
    g.add_vertex(0);
    g.add_vertex(1);
    return g;
}

inline Multigraph single_edge_graph() {
    Multigraph g = two_vertex_graph();
    g.add_edge(2, 0, 1);
    return g;
}

// e_>†: create an edge between two preserved vertices.
inline Element gen_edag() {
    return basis_element(atomic_diagram(
        make_linear_rule(two_vertex_graph(), single_edge_graph(), {{0, 0}, {1, 1}}, {})));
}

// E_>: preserve an edge and its endpoints.
inline Element gen_E() {
    return basis_element(atomic_diagram(
        make_linear_rule(single_edge_graph(), single_edge_graph(), {{0, 0}, {1, 1}}, {{2, 2}})));
}

// e_>: delete an edge, preserving its endpoints.
inline Element gen_e() {
    return basis_element(atomic_diagram(
        make_linear_rule(single_edge_graph(), two_vertex_graph(), {{0, 0}, {1, 1}}, {})));
}

// ---------------------------------------------------------------------------
// Heisenberg–Weyl diagram algebra
// ---------------------------------------------------------------------------

inline Element gen_d_a() { return gen_a(); }
inline Element gen_d_adag() { return gen_adag(); }

// d_e: an internal worldline — a vertex created below and deleted above.
inline Element gen_d_e() { return nontrivial_compose(gen_d_a(), gen_d_adag()); }

// d(r, s, t) = d_{a†}^{⊎r} ⊎ d_a^{⊎s} ⊎ d_e^{⊎t}.
inline Element hw_element(long r, long s, long t) {
    Element out = superpose_power(gen_d_adag(), r);
    out = superpose(out, superpose_power(gen_d_a(), s));
    out = superpose(out, superpose_power(gen_d_e(), t));
    return out;
}

// Normal-ordering closed form for d(r1,s1,t1) * d(r2,s2,t2): each of the n
// contracted annihilator/creator pairs leaves an internal worldline behind.
inline Element hw_compose_closed_form(long r1, long s1, long t1, long r2, long s2, long t2) {
    Element out;
    for (long n = 0; n <= std::min(s1, r2); ++n) {
        Rational coeff = Rational(factorial(s1) * factorial(r2)) /
                         Rational(factorial(s1 - n) * factorial(n) * factorial(r2 - n));
        out = add(out, scale(coeff, hw_element(r1 + r2 - n, s1 + s2 - n, t1 + t2 + n)));
    }
    return out;
}

inline TensorElement hw_coproduct_closed_form(long r, long s, long t) {
    TensorElement out;
    out.arity = 2;
    for (long m = 0; m <= r; ++m)
        for (long n = 0; n <= s; ++n)
            for (long l = 0; l <= t; ++l) {
                Rational c = binomial(r, m) * binomial(s, n) * binomial(t, l);
                out = tensor_add(out, tensor_scale(c, tensor_product(hw_element(m, n, l),
                                                                     hw_element(r - m, s - n,
                                                                                t - l))));
            }
    return out;
}

// Antipode closed form; note the t + k: every contraction of the reversed
// product creates an internal worldline.
inline Element hw_antipode_closed_form(long r, long s, long t) {
    Element out;
    Rational sign = ((r + s + t) % 2 == 0) ? 1 : -1;
    for (long k = 0; k <= std::min(r, s); ++k) {
        Rational c = sign * Rational(factorial(k)) * binomial(r, k) * binomial(s, k);
        out = add(out, scale(c, hw_element(r - k, s - k, t + k)));
    }
    return out;
}

// HW rule algebra: r(m, n) deletes n vertices and creates m.
inline Element hw_rule(long m, long n) {
    return superpose(superpose_power(gen_adag(), m), superpose_power(gen_a(), n));
}

inline Element hw_rule_compose_closed_form(long m1, long n1, long m2, long n2) {
    Element out;
    for (long p = 0; p <= std::min(n1, m2); ++p) {
        Rational c = Rational(factorial(p)) * binomial(n1, p) * binomial(m2, p);
        out = add(out, scale(c, hw_rule(m1 + m2 - p, n1 + n2 - p)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Vertex algebra closed forms
// ---------------------------------------------------------------------------

// V(m, n, p) = a†^{*m} * I^{*n} * a^{*p} under a rule-algebra product (the
// result is independent of the rewriting type for vertex-only generators).
inline Element vertex_normal_form(long m, long n, long p,
                                  RewritingType t = RewritingType::DPO) {
    Element out = unit_element();
    for (long i = 0; i < m; ++i) out = compose_R(out, gen_adag(), t);
    for (long i = 0; i < n; ++i) out = compose_R(out, gen_I(), t);
    for (long i = 0; i < p; ++i) out = compose_R(out, gen_a(), t);
    return out;
}

// Coefficients of x(x-1)...(x-n+1) = Σ_j c_j x^j — the signed Stirling
// numbers of the first kind; I^{⊎n} = Σ_j c_j I^{*j}.
inline std::map<long, Rational> falling_factorial_expand(long n) {
    std::map<long, Rational> poly{{0, Rational(1)}};
    for (long i = 0; i < n; ++i) {
        std::map<long, Rational> next;
        for (const auto& [j, c] : poly) {
            next[j + 1] += c;
            next[j] -= Rational(i) * c;
        }
        for (auto it = next.begin(); it != next.end();)
            it = (it->second == 0) ? next.erase(it) : std::next(it);
        poly = std::move(next);
    }
    return poly;
}

// ---------------------------------------------------------------------------
// Structural generators and observables
// ---------------------------------------------------------------------------

// Ĝ: delete a copy of G (one constituent per connected component of G).
inline Element gen_G_hat(const Multigraph& g) {
    LinearRule whole = make_linear_rule(g, Multigraph{}, {}, {});
    return basis_element(split_rule_into_diagram(whole));
}

// Ĝ†: create a copy of G.
inline Element gen_G_hat_dagger(const Multigraph& g) {
    LinearRule whole = make_linear_rule(Multigraph{}, g, {}, {});
    return basis_element(split_rule_into_diagram(whole));
}

// Õ: identity rule on O — the commuting observables.
inline Element gen_obs_identity(const Multigraph& g) {
    std::set<IdPair> vp, ep;
    for (Id v : g.vertices) vp.emplace(v, v);
    for (Id e : g.edges) ep.emplace(e, e);
    LinearRule whole = make_linear_rule(g, g, std::move(vp), std::move(ep));
    return basis_element(split_rule_into_diagram(whole));
}

// Ŏ: delete a copy of O and create a fresh one (empty rule map).
inline Element gen_obs_recreate(const Multigraph& g) {
    LinearRule whole = make_linear_rule(g, g, {}, {});
    return basis_element(split_rule_into_diagram(whole));
}

}  // namespace rdc
