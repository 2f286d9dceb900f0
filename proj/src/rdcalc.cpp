// Command-line front end: algebra expressions over the DSL, the reduction
// and Hopf operations, normal forms, DOT export, and the verification
// harness. Exit codes: 0 success, 1 verification mismatch, 2 input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include <rdcalc/dsl.hpp>
#include <rdcalc/io.hpp>
#include <rdcalc/properties.hpp>

namespace {

using namespace rdc;

struct CliState {
    bool json = false;
    std::string dsl_file;
    Environment env;

    void load() {
        if (dsl_file.empty()) return;
        std::ifstream in(dsl_file);
        if (!in) throw DslError("E001", 0, 0, "cannot open DSL file '" + dsl_file + "'");
        std::string src((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        env = evaluate_dsl(parse_dsl(src));
    }

    Value eval(const std::string& expr) const {
        DslDocument doc = parse_dsl("show " + expr);
        return detail::evaluate_expr(*doc.statements.at(0).show.expr, env);
    }

    Element eval_element(const std::string& expr) const {
        Value v = eval(expr);
        if (v.kind == Value::Kind::scalar) return scale(v.scalar, unit_element());
        if (v.kind != Value::Kind::element)
            throw DslError("E006", 0, 0, "expression '" + expr + "' is not an element");
        return v.element;
    }

    void print_element(const Element& x) const {
        if (json)
            std::cout << element_to_json(x).dump(2) << "\n";
        else
            std::cout << describe_element(x) << "\n";
    }

    void print_tensor(const TensorElement& t) const {
        if (json)
            std::cout << tensor_to_json(t).dump(2) << "\n";
        else
            std::cout << describe_tensor(t) << "\n";
    }
};

RewritingType parse_type(const std::string& s) {
    if (s == "dpo") return RewritingType::DPO;
    if (s == "spoa") return RewritingType::SPO_A;
    if (s == "spob") return RewritingType::SPO_B;
    if (s == "spoab") return RewritingType::SPO_AB;
    throw CLI::ValidationError("--type", "expected one of dpo|spoa|spob|spoab");
}

int report_suites(const CliState& st, const std::vector<SuiteReport>& suites) {
    bool all_ok = true;
    if (st.json) {
        Json out = Json::array();
        for (const auto& s : suites) {
            Json js;
            js["suite"] = s.suite;
            js["ok"] = s.ok();
            js["cells"] = Json::array();
            for (const auto& c : s.cells)
                js["cells"].push_back(Json{{"cell", c.cell},
                                           {"expected", c.expected},
                                           {"computed", c.computed},
                                           {"match", c.match}});
            out.push_back(std::move(js));
            all_ok = all_ok && s.ok();
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& s : suites) {
            std::cout << s.suite << ": " << (s.ok() ? "ok" : "MISMATCH") << " ("
                      << s.cells.size() << " cells)\n";
            for (const auto& c : s.cells)
                if (!c.match)
                    std::cout << "  " << c.cell << ": expected " << c.expected << ", computed "
                              << c.computed << "\n";
            all_ok = all_ok && s.ok();
        }
    }
    return all_ok ? 0 : 1;
}

// Normal ordering of a vertex-algebra element as a polynomial in the ordered
// rule-algebra products a†^m * I^n * a^p, by triangular elimination.
void print_vertex_normal_order(const CliState& st, Element x, RewritingType t) {
    struct Term {
        long m, n, p;
        Rational c;
    };
    std::vector<Term> terms;
    DiagramClassKey k_adag = gen_adag().terms.begin()->first;
    DiagramClassKey k_a = gen_a().terms.begin()->first;
    DiagramClassKey k_i = gen_I().terms.begin()->first;
    while (!x.is_zero()) {
        auto best = x.terms.begin();
        for (auto it = x.terms.begin(); it != x.terms.end(); ++it)
            if (filtration_degree(it->first) > filtration_degree(best->first)) best = it;
        long m = 0, n = 0, p = 0;
        for (const auto& comp : detail::interned_component_keys(best->first)) {
            if (comp == k_adag) ++m;
            else if (comp == k_i) ++n;
            else if (comp == k_a) ++p;
            else throw DslError("E006", 0, 0, "element is not in the vertex subalgebra");
        }
        Rational c = best->second;
        terms.push_back({m, n, p, c});
        x = sub(x, scale(c, vertex_normal_form(m, n, p, t)));
    }
    if (st.json) {
        Json out = Json::array();
        for (const auto& t2 : terms)
            out.push_back(Json{{"adag_power", t2.m},
                               {"id_power", t2.n},
                               {"a_power", t2.p},
                               {"coefficient", rational_to_string(t2.c)}});
        std::cout << out.dump(2) << "\n";
        return;
    }
    if (terms.empty()) {
        std::cout << "0\n";
        return;
    }
    std::string line;
    for (const auto& t2 : terms) {
        if (!line.empty()) line += " + ";
        line += rational_to_string(t2.c) + "·";
        auto pow = [&](const std::string& g, long e) {
            if (e == 0) return std::string();
            if (e == 1) return g;
            return g + "^" + std::to_string(e);
        };
        std::string mono = pow("a†", t2.m);
        for (const std::string& f : {pow("I", t2.n), pow("a", t2.p)})
            if (!f.empty()) mono += (mono.empty() ? "" : "*") + f;
        line += mono.empty() ? "1" : mono;
    }
    std::cout << line << "\n";
}

void print_pbw(const CliState& st, const Element& x, bool hw_only) {
    PbwPoly poly = pbw_normal_form(x);
    if (hw_only) {
        DiagramClassKey ok[] = {gen_adag().terms.begin()->first, gen_a().terms.begin()->first,
                                gen_d_e().terms.begin()->first};
        for (const auto& [word, c] : poly)
            for (const auto& k : word)
                if (k != ok[0] && k != ok[1] && k != ok[2])
                    throw DslError("E006", 0, 0,
                                   "element is not in the Heisenberg-Weyl subalgebra");
    }
    if (st.json) {
        Json out = Json::array();
        for (const auto& [word, c] : poly) {
            Json w = Json::array();
            for (const auto& k : word) w.push_back(describe_key(k));
            out.push_back(Json{{"word", std::move(w)}, {"coefficient", rational_to_string(c)}});
        }
        std::cout << out.dump(2) << "\n";
        return;
    }
    if (poly.empty()) {
        std::cout << "0\n";
        return;
    }
    std::string line;
    for (const auto& [word, c] : poly) {
        if (!line.empty()) line += " + ";
        line += rational_to_string(c) + "·";
        if (word.empty()) line += "1";
        for (size_t i = 0; i < word.size(); ++i)
            line += (i ? "*" : "") + describe_key(word[i]);
    }
    std::cout << line << "\n";
}

std::vector<SuiteReport> run_verify(const std::string& which) {
    long hw_max = std::min(3, std::max(1, samples_from_env(2)));
    std::vector<SuiteReport> suites;
    auto want = [&](const std::string& s) { return which == s || which == "all"; };
    for (RewritingType t : kAllTypes) {
        if (want("vertex")) suites.push_back(verify_vertex_table(t));
        if (want("loop")) suites.push_back(verify_loop_table(t));
        if (want("coupling")) suites.push_back(verify_coupling_table(t));
        if (want("edge")) suites.push_back(verify_edge(t));
        if (want("hw")) suites.push_back(verify_hw(t, hw_max));
        if (want("structural")) suites.push_back(verify_structural(t));
        if (want("observables")) suites.push_back(verify_observables(t));
        if (want("nocounit")) suites.push_back(verify_no_counit(t));
    }
    if (want("hopf")) suites.push_back(verify_hopf());
    if (want("properties")) suites.push_back(verify_properties(samples_from_env(50)));
    if (want("pbw")) suites.push_back(verify_pbw(samples_from_env(50)));
    if (suites.empty()) throw CLI::ValidationError("verify", "unknown suite '" + which + "'");
    return suites;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rdcalc — exact computer algebra for rule diagrams of graph rewriting"};
    app.require_subcommand(1);

    CliState st;
    app.add_flag("--json", st.json, "emit JSON instead of plain text");
    app.add_option("--file", st.dsl_file, "DSL file with graph/rule/diagram definitions");

    std::string expr_a, expr_b, type_str = "dpo", mode, which;
    bool nontrivial = false, reduced = false, with_type = false;

    auto* compose = app.add_subcommand("compose", "compose two elements");
    compose->add_option("x", expr_a)->required();
    compose->add_option("y", expr_b)->required();
    compose->add_option("--type", type_str, "reduce to a rule algebra: dpo|spoa|spob|spoab")
        ->each([&](const std::string&) { with_type = true; });
    compose->add_flag("--nontrivial", nontrivial, "drop the disjoint-union part");

    auto* red = app.add_subcommand("reduce", "apply a reduction morphism");
    red->add_option("x", expr_a)->required();
    red->add_option("--type", type_str)->required();

    auto* comm = app.add_subcommand("commutator", "commutator [x, y]");
    comm->add_option("x", expr_a)->required();
    comm->add_option("y", expr_b)->required();
    comm->add_option("--type", type_str)->each([&](const std::string&) { with_type = true; });

    auto* cop = app.add_subcommand("coproduct", "coproduct of an element");
    cop->add_option("x", expr_a)->required();
    cop->add_flag("--reduced", reduced, "omit the unit-factor terms");

    auto* anti = app.add_subcommand("antipode", "antipode of an element");
    anti->add_option("x", expr_a)->required();

    auto* dag = app.add_subcommand("dagger", "dualization of an element");
    dag->add_option("x", expr_a)->required();

    auto* no = app.add_subcommand("normal-order", "normal form: hw | vertex | pbw");
    no->add_option("mode", mode)->required()->check(CLI::IsMember({"hw", "vertex", "pbw"}));
    no->add_option("x", expr_a)->required();
    no->add_option("--type", type_str, "rule algebra for vertex normal ordering");

    auto* ver = app.add_subcommand("verify", "recompute the closed-form tables");
    ver->add_option("suite", which)
        ->required()
        ->check(CLI::IsMember({"vertex", "loop", "coupling", "edge", "hw", "structural",
                               "observables", "hopf", "nocounit", "properties", "pbw", "all"}));

    auto* dot = app.add_subcommand("export-dot", "DOT export of a named graph or diagram");
    dot->add_option("name", expr_a)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 2;  // flag/argument problems are input errors
    }

    try {
        st.load();
        if (compose->parsed()) {
            Element x = st.eval_element(expr_a), y = st.eval_element(expr_b);
            Element out;
            if (with_type) {
                RewritingType t = parse_type(type_str);
                out = nontrivial ? nontrivial_compose_R(x, y, t) : compose_R(x, y, t);
            } else {
                out = nontrivial ? nontrivial_compose(x, y) : compose_D(x, y);
            }
            st.print_element(out);
        } else if (red->parsed()) {
            st.print_element(reduce(st.eval_element(expr_a), parse_type(type_str)));
        } else if (comm->parsed()) {
            Element x = st.eval_element(expr_a), y = st.eval_element(expr_b);
            if (with_type)
                st.print_element(commutator_R(x, y, parse_type(type_str)));
            else
                st.print_element(sub(compose_D(x, y), compose_D(y, x)));
        } else if (cop->parsed()) {
            Element x = st.eval_element(expr_a);
            st.print_tensor(reduced ? reduced_coproduct(x) : coproduct(x));
        } else if (anti->parsed()) {
            st.print_element(antipode(st.eval_element(expr_a)));
        } else if (dag->parsed()) {
            st.print_element(dagger(st.eval_element(expr_a)));
        } else if (no->parsed()) {
            Element x = st.eval_element(expr_a);
            if (mode == "vertex")
                print_vertex_normal_order(st, x, parse_type(type_str));
            else
                print_pbw(st, x, mode == "hw");
        } else if (ver->parsed()) {
            return report_suites(st, run_verify(which));
        } else if (dot->parsed()) {
            if (auto it = st.env.graphs.find(expr_a); it != st.env.graphs.end()) {
                std::cout << graph_to_dot(it->second.g, expr_a);
            } else if (auto it2 = st.env.diagrams.find(expr_a); it2 != st.env.diagrams.end()) {
                std::cout << diagram_to_dot(it2->second.d, expr_a);
            } else {
                Element x = st.eval_element(expr_a);
                if (x.terms.size() != 1)
                    throw DslError("E006", 0, 0, "can only export a single basis diagram");
                std::cout << diagram_to_dot(
                    Registry::instance().representative(x.terms.begin()->first), "D");
            }
        }
    } catch (const DslError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
