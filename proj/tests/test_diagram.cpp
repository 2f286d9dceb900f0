// Rule diagrams: validation, classification, canonical keys, match
// enumeration, composition and dualization, plus the element layer.

#include <catch2/catch_amalgamated.hpp>

#include <rdcalc/display.hpp>
#include <rdcalc/sampling.hpp>

using namespace rdc;

namespace {

// An edge-preserving rule fully matched below a vertex deletion: the classic
// dangling configuration (the edge survives upward but its endpoint does not).
RuleDiagram dangling_composite() {
    LinearRule del = make_linear_rule(one_vertex_graph(), Multigraph{}, {}, {});
    LinearRule keep = make_linear_rule(single_edge_graph(), single_edge_graph(),
                                       {{0, 0}, {1, 1}}, {{2, 2}});
    RuleDiagram top = atomic_diagram(del);
    RuleDiagram bottom = atomic_diagram(keep);
    GraphMorphism m;  // dB items in dB's own global ids (its part 0)
    m.fv = Relation({global_id(0, 0), global_id(0, 1)}, {global_id(0, 0)},
                    {{global_id(0, 0), global_id(0, 0)}});
    m.fe = Relation({global_id(0, 2)}, {}, {});
    return compose_along(top, m, bottom);
}

}  // namespace

TEST_CASE("linear rule validity") {
    LinearRule good = make_linear_rule(one_vertex_graph(), one_vertex_graph(), {{0, 0}}, {});
    REQUIRE(is_valid_linear_rule(good));
    REQUIRE(is_connected_rule(good));
    // Edge preservation with unmapped endpoints violates the morphism
    // condition.
    Multigraph loop;
    loop.add_vertex(0);
    loop.add_edge(1, 0, 0);
    LinearRule bad = make_linear_rule(loop, loop, {}, {{1, 1}});
    std::string why;
    REQUIRE_FALSE(is_valid_linear_rule(bad, &why));
    REQUIRE_FALSE(why.empty());
    // Two unrelated vertices preserved: valid but disconnected.
    LinearRule wide = make_linear_rule(two_vertex_graph(), two_vertex_graph(),
                                       {{0, 0}, {1, 1}}, {});
    REQUIRE(is_valid_linear_rule(wide));
    REQUIRE_FALSE(is_connected_rule(wide));
}

TEST_CASE("diagram validation accepts composites and flags bad matches") {
    REQUIRE(validate_diagram(gen_a_diagram()).ok());
    REQUIRE(validate_diagram(dangling_composite()).ok());
    // A match must land in the input interface; pairing with a deleted item
    // of the upper rule is fine, but pairing out of the universes is not.
    RuleDiagram d = superpose_diagram(gen_a_diagram(), gen_adag_diagram());
    GraphMorphism m;
    m.fv = Relation({global_id(1, 0)}, {global_id(0, 0)},
                    {{global_id(1, 0), global_id(0, 0)}});
    m.fe = Relation({}, {}, {});
    d.matches[{0, 1}] = m;
    REQUIRE(validate_diagram(d).ok());
    // Duplicating the target breaks one-to-one-ness.
    RuleDiagram bad = d;
    bad.parts.push_back(gen_adag_diagram().parts[0]);
    GraphMorphism m2;
    m2.fv = Relation({global_id(2, 0)}, {global_id(0, 0)},
                     {{global_id(2, 0), global_id(0, 0)}});
    m2.fe = Relation({}, {}, {});
    bad.matches[{0, 2}] = m2;
    REQUIRE_FALSE(validate_diagram(bad).ok());
}

TEST_CASE("classification of the basic shapes") {
    DiagramClass empty = classify(empty_diagram());
    REQUIRE(empty.empty);
    REQUIRE(empty.irreducible);
    REQUIRE_FALSE(empty.primitive);
    DiagramClass at = classify(gen_adag_diagram());
    REQUIRE(at.atomic);
    REQUIRE(at.irreducible);
    REQUIRE(at.primitive);
    // d_e: two constituents joined by a nonempty match — primitive, not
    // irreducible.
    RuleDiagram de = Registry::instance().representative(gen_d_e().terms.begin()->first);
    DiagramClass dc = classify(de);
    REQUIRE(dc.primitive);
    REQUIRE_FALSE(dc.irreducible);
    REQUIRE_FALSE(dc.atomic);
    // A superposition is neither primitive nor atomic.
    DiagramClass sup = classify(superpose_diagram(gen_a_diagram(), gen_a_diagram()));
    REQUIRE_FALSE(sup.primitive);
    REQUIRE(sup.irreducible);
}

TEST_CASE("canonical keys are invariant under relabeling and part permutation") {
    std::mt19937 rng(5);
    for (int i = 0; i < 100; ++i) {
        RuleDiagram d = random_diagram(rng);
        REQUIRE(canonical_diagram(d) == canonical_diagram(relabel_diagram(d, rng)));
    }
    // Superposition order does not matter.
    RuleDiagram ab = superpose_diagram(gen_a_diagram(), gen_adag_diagram());
    RuleDiagram ba = superpose_diagram(gen_adag_diagram(), gen_a_diagram());
    REQUIRE(canonical_diagram(ab) == canonical_diagram(ba));
    // Distinct classes separate.
    REQUIRE(canonical_diagram(gen_a_diagram()) != canonical_diagram(gen_adag_diagram()));
    REQUIRE(canonical_diagram(empty_diagram()) == DiagramClassKey{});
}

TEST_CASE("match enumeration agrees with interface morphism counting") {
    // For diagrams whose interfaces carry no dangling-edge subtleties and
    // admit every injective partial morphism, the match count equals the
    // Inj count between the interface graphs.
    RuleDiagram top = gen_I_diagram();
    RuleDiagram bottom = Registry::instance().representative(gen_E().terms.begin()->first);
    auto matches = enumerate_matches(top, bottom);
    Multigraph out_face = bottom.parts[0].output;
    Multigraph in_face = top.parts[0].input;
    REQUIRE(matches.size() == enumerate_injective_partial_morphisms(out_face, in_face).size());
    // Every enumerated match really composes into a valid diagram.
    for (const auto& m : matches)
        REQUIRE(validate_diagram(compose_along_unchecked(top, m, bottom)).ok());
    // Frozen count: d_a * d_a has exactly the empty match (deleted vertices
    // offer no output interface).
    RuleDiagram a = gen_a_diagram();
    REQUIRE(enumerate_matches(a, a).size() == 1);
}

TEST_CASE("composition along an invalid match throws") {
    RuleDiagram a = gen_a_diagram(), adag = gen_adag_diagram();
    GraphMorphism bogus;
    bogus.fv = Relation({global_id(0, 0)}, {global_id(0, 0)},
                        {{global_id(0, 0), global_id(0, 0)}});
    bogus.fe = Relation({}, {}, {});
    REQUIRE_NOTHROW(compose_along(a, bogus, adag));
    GraphMorphism wrong;  // targets an input vertex the upper rule lacks
    wrong.fv = Relation({global_id(0, 0)}, {global_id(0, 5)},
                        {{global_id(0, 0), global_id(0, 5)}});
    wrong.fe = Relation({}, {}, {});
    REQUIRE_THROWS(compose_along(a, wrong, adag));
}

TEST_CASE("dagger is an anti-involution") {
    std::mt19937 rng(13);
    for (int i = 0; i < 50; ++i) {
        RuleDiagram d = random_diagram(rng);
        REQUIRE(canonical_diagram(dagger_diagram(dagger_diagram(d))) == canonical_diagram(d));
    }
    for (int i = 0; i < 20; ++i) {
        Element x = basis_element(random_diagram(rng));
        Element y = basis_element(random_diagram(rng));
        REQUIRE(dagger(compose_D(x, y)) == compose_D(dagger(y), dagger(x)));
        REQUIRE(dagger(superpose(x, y)) == superpose(dagger(x), dagger(y)));
    }
}

TEST_CASE("element arithmetic prunes zeros and is bilinear") {
    Element a = gen_a(), adag = gen_adag();
    REQUIRE(sub(a, a).is_zero());
    REQUIRE(add(a, scale(-1, a)).is_zero());
    Element two_a = scale(2, a);
    REQUIRE(two_a.coefficient(a.terms.begin()->first) == 2);
    REQUIRE(compose_D(add(a, adag), a) == add(compose_D(a, a), compose_D(adag, a)));
    REQUIRE(compose_D(unit_element(), a) == a);
    REQUIRE(compose_D(a, unit_element()) == a);
    REQUIRE(superpose(unit_element(), a) == a);
}

TEST_CASE("superposition key fast path matches explicit diagram union") {
    std::mt19937 rng(99);
    for (int i = 0; i < 50; ++i) {
        RuleDiagram d1 = random_diagram(rng), d2 = random_diagram(rng);
        Element via_keys = superpose(basis_element(d1), basis_element(d2));
        Element via_diagram = basis_element(superpose_diagram(d1, d2));
        REQUIRE(via_keys == via_diagram);
    }
}

TEST_CASE("nontrivial composition is composition minus superposition") {
    Element e = gen_e(), E = gen_E();
    REQUIRE(nontrivial_compose(e, E) == sub(compose_D(e, E), superpose(e, E)));
    REQUIRE(compose_D(gen_a(), gen_adag()) ==
            add(superpose(gen_a(), gen_adag()), gen_d_e()));
}

TEST_CASE("well-known names render correctly") {
    REQUIRE(describe_element(unit_element()) == "1·r_∅");
    REQUIRE(describe_element(gen_d_e()) == "1·d_e");
    REQUIRE(describe_element(superpose(gen_a(), gen_adag())) == "1·a†⊎a");
    REQUIRE(describe_element(zero_element()) == "0");
}
