// Boundary analysis, fixing morphisms and the four reduction morphisms.

#include <catch2/catch_amalgamated.hpp>

#include <rdcalc/properties.hpp>

using namespace rdc;

namespace {

// Edge-preserving rule fully matched (vertex-wise) below a vertex deletion:
// the preserved edge dangles in the input interface after collapsing.
RuleDiagram dangling_composite() {
    LinearRule del = make_linear_rule(one_vertex_graph(), Multigraph{}, {}, {});
    LinearRule keep = make_linear_rule(single_edge_graph(), single_edge_graph(),
                                       {{0, 0}, {1, 1}}, {{2, 2}});
    GraphMorphism m;
    m.fv = Relation({global_id(0, 0), global_id(0, 1)}, {global_id(0, 0)},
                    {{global_id(0, 0), global_id(0, 0)}});
    m.fe = Relation({global_id(0, 2)}, {}, {});
    return compose_along(atomic_diagram(del), m, atomic_diagram(keep));
}

// The mirrored configuration: edge-preserving rule matched above a vertex
// creation, so the edge dangles in the output interface.
RuleDiagram dangling_output_composite() {
    LinearRule keep = make_linear_rule(single_edge_graph(), single_edge_graph(),
                                       {{0, 0}, {1, 1}}, {{2, 2}});
    LinearRule create = make_linear_rule(Multigraph{}, one_vertex_graph(), {}, {});
    GraphMorphism m;
    m.fv = Relation({global_id(0, 0)}, {global_id(0, 0), global_id(0, 1)},
                    {{global_id(0, 0), global_id(0, 0)}});
    m.fe = Relation({}, {global_id(0, 2)}, {});
    return compose_along(atomic_diagram(keep), m, atomic_diagram(create));
}

}  // namespace

TEST_CASE("boundary of an internal worldline is the empty pre-diagram") {
    RuleDiagram de = Registry::instance().representative(gen_d_e().terms.begin()->first);
    PreDiagram p = boundary(de);
    REQUIRE(p.in_g.vertices.empty());
    REQUIRE(p.out_g.vertices.empty());
    REQUIRE(p.dangling_in.empty());
    REQUIRE(p.dangling_out.empty());
    REQUIRE(reduce(gen_d_e(), RewritingType::DPO) == unit_element());
}

TEST_CASE("dangling edges are detected on the correct side") {
    // Deleting a preserved edge's endpoint later in time kills the edge's
    // output worldline; creating it earlier kills the input worldline.
    PreDiagram p_out = boundary(dangling_composite());
    REQUIRE(p_out.dangling_out.size() == 1);
    REQUIRE(p_out.dangling_in.empty());
    PreDiagram p_in = boundary(dangling_output_composite());
    REQUIRE(p_in.dangling_in.size() == 1);
    REQUIRE(p_in.dangling_out.empty());
}

TEST_CASE("the four reductions of the dangling example") {
    Element x = basis_element(dangling_composite());
    // DPO and the fix that only touches the other side leave the dangling
    // edge in place: projection kills the term.
    REQUIRE(reduce(x, RewritingType::DPO).is_zero());
    REQUIRE(reduce(x, RewritingType::SPO_B).is_zero());
    // Fixing the output side removes the edge: the survivor consumes the
    // edge and one endpoint, keeping the other vertex.
    Element fixed = reduce(x, RewritingType::SPO_A);
    REQUIRE(fixed.terms.size() == 1);
    RuleDiagram rep = Registry::instance().representative(fixed.terms.begin()->first);
    Multigraph in, out;
    for (const LinearRule& r : rep.parts) {
        in = disjoint_union(in, r.input);
        out = disjoint_union(out, r.output);
    }
    REQUIRE(in.vertices.size() == 2);
    REQUIRE(in.edges.size() == 1);
    REQUIRE(out.vertices.size() == 1);
    REQUIRE(out.edges.empty());  // the dangling edge was deleted by the fix
    REQUIRE(reduce(x, RewritingType::SPO_AB) == fixed);
}

TEST_CASE("fix A and fix B commute") {
    std::mt19937 rng(31);
    for (int i = 0; i < 100; ++i) {
        PreDiagram p = boundary(random_diagram(rng));
        PreDiagram ab = fix_partial(fix_partial(p, FixSide::A), FixSide::B);
        PreDiagram ba = fix_partial(fix_partial(p, FixSide::B), FixSide::A);
        REQUIRE(project(ab) == project(ba));
    }
}

TEST_CASE("reduction is the identity on irreducible diagrams") {
    for (const Element& g : {gen_a(), gen_adag(), gen_I(), gen_E(), gen_lambda(2, 1, 1)})
        for (RewritingType t : kAllTypes) REQUIRE(reduce(g, t) == g);
}

TEST_CASE("rule algebra composition requires irreducible support") {
    for (RewritingType t : kAllTypes) {
        REQUIRE_THROWS_AS(compose_R(gen_d_e(), gen_a(), t), std::invalid_argument);
        REQUIRE_NOTHROW(compose_R(gen_a(), gen_adag(), t));
    }
}

TEST_CASE("reduction is an algebra homomorphism onto each rule algebra") {
    std::mt19937 rng(77);
    for (int i = 0; i < 40; ++i) {
        Element x = basis_element(random_diagram(rng));
        Element y = basis_element(random_diagram(rng));
        for (RewritingType t : kAllTypes)
            REQUIRE(reduce(compose_D(x, y), t) == compose_R(reduce(x, t), reduce(y, t), t));
    }
}

TEST_CASE("randomized property suite is clean") {
    SuiteReport rep = verify_properties(60, 2025);
    for (const auto& c : rep.cells) {
        INFO(c.cell << ": expected " << c.expected << ", computed " << c.computed);
        REQUIRE(c.match);
    }
}
