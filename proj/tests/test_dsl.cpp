// The input language: lexer/parser round trips, diagnostics, evaluation,
// and the JSON / DOT serializers.

#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>

#include <rdcalc/dsl.hpp>
#include <rdcalc/io.hpp>

using namespace rdc;

#ifndef RDCALC_DEMO_DIR
#define RDCALC_DEMO_DIR "demo"
#endif

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string code_of(const std::string& src) {
    try {
        evaluate_dsl(parse_dsl(src));
    } catch (const DslError& e) {
        return e.code;
    }
    return "";
}

}  // namespace

TEST_CASE("printing a parsed document is a fixed point") {
    std::string src = R"(graph G {
  u v
  edges { f: u -> v }
}

rule R {
  in G
  out { w }
  map { u -> w }
}

diagram D {
  part R
  part R
  match 1.w -> 0.u
}

let x = 2/3 * (a ⊎ adag) - [a, adag]
show x * R'
show Δ(S(x))
)";
    std::string printed = print_dsl(parse_dsl(src));
    REQUIRE(print_dsl(parse_dsl(printed)) == printed);
    // The printed form evaluates to the same results as the original.
    Environment e1 = evaluate_dsl(parse_dsl(src));
    Environment e2 = evaluate_dsl(parse_dsl(printed));
    REQUIRE(e1.shown.size() == e2.shown.size());
    for (size_t i = 0; i < e1.shown.size(); ++i) {
        REQUIRE(e1.shown[i].second.kind == e2.shown[i].second.kind);
        if (e1.shown[i].second.kind == Value::Kind::element)
            REQUIRE(e1.shown[i].second.element == e2.shown[i].second.element);
        if (e1.shown[i].second.kind == Value::Kind::tensor)
            REQUIRE(e1.shown[i].second.tensor == e2.shown[i].second.tensor);
    }
}

TEST_CASE("every demo document parses, round-trips and evaluates") {
    size_t seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(RDCALC_DEMO_DIR)) {
        if (entry.path().extension() != ".rd") continue;
        ++seen;
        INFO(entry.path().string());
        std::string src = slurp(entry.path());
        DslDocument doc = parse_dsl(src);
        std::string printed = print_dsl(doc);
        REQUIRE(print_dsl(parse_dsl(printed)) == printed);
        REQUIRE_NOTHROW(evaluate_dsl(doc));
    }
    REQUIRE(seen >= 5);
}

TEST_CASE("named rules match the builtin generators") {
    std::string src = R"(
graph V1 { v1 }
rule A { in V1 out {} map {} }
rule Adag { in {} out V1 map {} }
show A - a
show Adag - adag
show A * Adag - a * adag
)";
    Environment env = evaluate_dsl(parse_dsl(src));
    for (const auto& [expr, v] : env.shown) {
        INFO(expr);
        REQUIRE(v.kind == Value::Kind::element);
        REQUIRE(v.element.is_zero());
    }
}

TEST_CASE("diagram statements build the intended composite") {
    std::string src = R"(
rule AddV { in {} out { v } map {} }
rule DelV { in { w } out {} map {} }
diagram D {
  part DelV
  part AddV
  match 1.v -> 0.w
}
show D - d_e
)";
    Environment env = evaluate_dsl(parse_dsl(src));
    REQUIRE(env.shown.at(0).second.element.is_zero());
    // A match referring to a missing item is rejected by name resolution.
    REQUIRE(code_of("rule AddV { in {} out { v } map {} }\n"
                    "rule DelV { in { w } out {} map {} }\n"
                    "diagram D { part DelV part AddV match 1.z -> 0.w }") == "E001");
}

TEST_CASE("diagnostic codes") {
    REQUIRE(code_of("show nope") == "E001");
    REQUIRE(code_of("graph G { v edges { f: v -> w } }") == "E002");
    REQUIRE(code_of("graph G { u v } rule R { in G out { w } map { u -> w  v -> w } }") == "E003");
    REQUIRE(code_of("graph G { v ") == "E004");
    REQUIRE(code_of("graph L { v edges { f: v -> v } }\n"
                    "rule R { in L out L map { f -> f } }") == "E005");
    REQUIRE(code_of("show Δ(a) * a") == "E006");
    REQUIRE(code_of("graph G { v } graph G { w }") == "E007");
    // Errors carry their source position.
    try {
        parse_dsl("graph G {\n  v edges { f: v } }");
        FAIL("expected a parse error");
    } catch (const DslError& e) {
        REQUIRE(e.line == 2);
        REQUIRE(std::string(e.what()).find("E00") != std::string::npos);
    }
}

TEST_CASE("typed products and reductions in expressions") {
    std::string src = R"(
show a *[dpo] adag - adag *[dpo] a
show a *[spoab] adag - adag *[spoab] a
show e ⊛[dpo] E
)";
    Environment env = evaluate_dsl(parse_dsl(src));
    REQUIRE(env.shown.at(0).second.element == unit_element());
    REQUIRE(env.shown.at(1).second.element == unit_element());
    REQUIRE(env.shown.at(2).second.element.terms.size() == 7);
    // Reducible operands in a typed product are rejected.
    REQUIRE(code_of("show d_e *[dpo] a") == "E005");
}

TEST_CASE("element and tensor JSON carry exact coefficients") {
    Element x = add(gen_d_e(), scale(Rational(-3, 2), gen_a()));
    Json j = element_to_json(x);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    std::set<std::string> coeffs, names;
    for (const auto& term : j) {
        REQUIRE(term.contains("key"));
        REQUIRE(term.contains("representative"));
        coeffs.insert(term.at("coefficient").get<std::string>());
        names.insert(term.at("name").get<std::string>());
    }
    REQUIRE(coeffs == std::set<std::string>{"1", "-3/2"});
    REQUIRE(names.count("d_e") == 1);
    Json t = tensor_to_json(coproduct(gen_a()));
    REQUIRE(t.at("arity") == 2);
    REQUIRE(t.at("terms").size() == 2);
    // A representative serializes with parts and matches.
    Json d = diagram_to_json(
        Registry::instance().representative(gen_d_e().terms.begin()->first));
    REQUIRE(d.at("parts").size() == 2);
    REQUIRE(d.at("matches").size() == 1);
}

TEST_CASE("DOT output names clusters and worldlines") {
    RuleDiagram de = Registry::instance().representative(gen_d_e().terms.begin()->first);
    std::string dot = diagram_to_dot(de, "de");
    REQUIRE(dot.find("digraph de") != std::string::npos);
    REQUIRE(dot.find("cluster_part0") != std::string::npos);
    REQUIRE(dot.find("cluster_part1") != std::string::npos);
    REQUIRE(dot.find("style=dotted") != std::string::npos);
    std::string g = graph_to_dot(single_edge_graph());
    REQUIRE(g.find("->") != std::string::npos);
}
