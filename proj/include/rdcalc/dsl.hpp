#pragma once

// Text DSL for graphs, rules, diagrams and algebra expressions.
//
//   graph G { v1 v2 edges { e1: v1 -> v2 } }
//   rule A { in { v1 } out { } map { } }
//   diagram D { part A part A match 1.v1 -> 0.v1 }
//   let x = a *[dpo] adag
//   show [x, adag†]
//
// Expressions combine named elements with + - scalars, * (diagram
// composition), *[type] (rule algebra composition), ⊎/uplus (superposition),
// ⊛/star (nontrivial composition, optionally typed), † or ' (dualization),
// [x,y] (commutator), Δ/Delta (coproduct) and S (antipode). '#' comments.

#include <memory>

#include "generators.hpp"
#include "sampling.hpp"

namespace rdc {

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

struct DslError : std::runtime_error {
    std::string code;
    int line, col;
    DslError(std::string code_, int line_, int col_, const std::string& msg)
        : std::runtime_error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + code_ +
                             ": " + msg),
          code(std::move(code_)),
          line(line_),
          col(col_) {}
};

// E001 unknown name            E002 malformed edge
// E003 non-injective map       E004 syntax error
// E005 invalid object          E006 expression type error
// E007 duplicate definition

// ---------------------------------------------------------------------------
// Document model
// ---------------------------------------------------------------------------

struct DslEdge {
    std::string name, src, tgt;
};

struct GraphBody {
    std::vector<std::string> vertices;
    std::vector<DslEdge> edges;
};

struct GraphStmt {
    std::string name;
    GraphBody body;
};

// A rule side is either an inline graph body or a reference to a named graph.
struct RuleSide {
    std::string ref;  // empty when inline
    GraphBody body;
};

struct RuleStmt {
    std::string name;
    RuleSide in, out;
    std::vector<std::pair<std::string, std::string>> map_pairs;
};

struct DslMatch {
    int from_part = 0;  // part whose output provides the item (larger index)
    std::string from_item;
    int to_part = 0;  // part whose input receives it
    std::string to_item;
};

struct DiagramStmt {
    std::string name;
    std::vector<std::string> parts;  // rule names; index 0 is latest in time
    std::vector<DslMatch> matches;
};

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
    enum class Op {
        name,
        scalar,
        add,
        sub,
        neg,
        compose,     // *
        compose_t,   // *[type]
        superpose,   // ⊎
        nontriv,     // ⊛
        nontriv_t,   // ⊛[type]
        dagger,
        commutator,  // [x, y]
        coproduct,   // Δ
        antipode     // S
    };
    Op op;
    std::string name;
    Rational value;
    RewritingType type = RewritingType::DPO;
    std::vector<ExprPtr> args;
    int line = 0, col = 0;
};

struct LetStmt {
    std::string name;
    ExprPtr expr;
};

struct ShowStmt {
    ExprPtr expr;
};

struct Statement {
    enum class Kind { graph, rule, diagram, let, show } kind;
    GraphStmt graph;
    RuleStmt rule;
    DiagramStmt diagram;
    LetStmt let;
    ShowStmt show;
};

struct DslDocument {
    std::vector<Statement> statements;
};

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace detail {

struct Token {
    enum class Kind { ident, integer, punct, eof } kind;
    std::string text;
    int line, col;
};

inline std::vector<Token> lex_dsl(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    static const std::vector<std::string> multi = {"->", "†", "⊎", "⊛", "Δ"};
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        int tl = line, tc = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                      src[j] == '_'))
                ++j;
            out.push_back({Token::Kind::ident, src.substr(i, j - i), tl, tc});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Token::Kind::integer, src.substr(i, j - i), tl, tc});
            advance(j - i);
            continue;
        }
        bool matched = false;
        for (const auto& m : multi)
            if (src.compare(i, m.size(), m) == 0) {
                out.push_back({Token::Kind::punct, m, tl, tc});
                advance(m.size());
                matched = true;
                break;
            }
        if (matched) continue;
        if (std::string("{}()[],.:*+-/='").find(c) != std::string::npos) {
            out.push_back({Token::Kind::punct, std::string(1, c), tl, tc});
            advance(1);
            continue;
        }
        throw DslError("E004", tl, tc, "unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back({Token::Kind::eof, "", line, col});
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace detail {

class DslParser {
  public:
    explicit DslParser(const std::string& src) : toks_(lex_dsl(src)) {}

    DslDocument parse_document() {
        DslDocument doc;
        while (!at_eof()) doc.statements.push_back(parse_statement());
        return doc;
    }

  private:
    std::vector<Token> toks_;
    size_t pos_ = 0;

    const Token& peek(size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    bool at_eof() const { return peek().kind == Token::Kind::eof; }
    Token next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
    [[noreturn]] void fail(const std::string& msg, const Token& t) const {
        throw DslError("E004", t.line, t.col, msg);
    }
    bool is_punct(const std::string& p, size_t ahead = 0) const {
        return peek(ahead).kind == Token::Kind::punct && peek(ahead).text == p;
    }
    bool is_ident(const std::string& w, size_t ahead = 0) const {
        return peek(ahead).kind == Token::Kind::ident && peek(ahead).text == w;
    }
    Token expect_punct(const std::string& p) {
        if (!is_punct(p)) fail("expected '" + p + "'", peek());
        return next();
    }
    Token expect_ident() {
        if (peek().kind != Token::Kind::ident) fail("expected a name", peek());
        return next();
    }
    long expect_integer() {
        if (peek().kind != Token::Kind::integer) fail("expected an integer", peek());
        return std::stol(next().text);
    }

    Statement parse_statement() {
        const Token& t = peek();
        if (t.kind != Token::Kind::ident) fail("expected a statement", t);
        Statement s{};
        if (t.text == "graph") {
            s.kind = Statement::Kind::graph;
            s.graph = parse_graph_stmt();
        } else if (t.text == "rule") {
            s.kind = Statement::Kind::rule;
            s.rule = parse_rule_stmt();
        } else if (t.text == "diagram") {
            s.kind = Statement::Kind::diagram;
            s.diagram = parse_diagram_stmt();
        } else if (t.text == "let") {
            s.kind = Statement::Kind::let;
            next();
            s.let.name = expect_ident().text;
            expect_punct("=");
            s.let.expr = parse_expr();
        } else if (t.text == "show") {
            s.kind = Statement::Kind::show;
            next();
            s.show.expr = parse_expr();
        } else {
            fail("unknown statement '" + t.text + "'", t);
        }
        return s;
    }

    GraphBody parse_graph_body() {
        GraphBody b;
        expect_punct("{");
        while (!is_punct("}")) {
            if (is_ident("edges")) {
                next();
                expect_punct("{");
                while (!is_punct("}")) {
                    DslEdge e;
                    Token name = expect_ident();
                    e.name = name.text;
                    if (!is_punct(":"))
                        throw DslError("E002", peek().line, peek().col,
                                       "malformed edge: expected ':' after edge name");
                    next();
                    e.src = expect_ident().text;
                    if (!is_punct("->"))
                        throw DslError("E002", peek().line, peek().col,
                                       "malformed edge: expected '->' between endpoints");
                    next();
                    e.tgt = expect_ident().text;
                    b.edges.push_back(std::move(e));
                    if (is_punct(",")) next();
                }
                next();
                continue;
            }
            b.vertices.push_back(expect_ident().text);
            if (is_punct(",")) next();
        }
        next();
        return b;
    }

    GraphStmt parse_graph_stmt() {
        next();  // 'graph'
        GraphStmt g;
        g.name = expect_ident().text;
        g.body = parse_graph_body();
        return g;
    }

    RuleSide parse_rule_side() {
        RuleSide side;
        if (is_punct("{")) {
            side.body = parse_graph_body();
        } else {
            side.ref = expect_ident().text;
        }
        return side;
    }

    RuleStmt parse_rule_stmt() {
        next();  // 'rule'
        RuleStmt r;
        r.name = expect_ident().text;
        expect_punct("{");
        if (!is_ident("in")) fail("expected 'in'", peek());
        next();
        r.in = parse_rule_side();
        if (!is_ident("out")) fail("expected 'out'", peek());
        next();
        r.out = parse_rule_side();
        if (!is_ident("map")) fail("expected 'map'", peek());
        next();
        expect_punct("{");
        while (!is_punct("}")) {
            std::string from = expect_ident().text;
            expect_punct("->");
            std::string to = expect_ident().text;
            r.map_pairs.emplace_back(std::move(from), std::move(to));
            if (is_punct(",")) next();
        }
        next();
        expect_punct("}");
        return r;
    }

    DiagramStmt parse_diagram_stmt() {
        next();  // 'diagram'
        DiagramStmt d;
        d.name = expect_ident().text;
        expect_punct("{");
        while (!is_punct("}")) {
            if (is_ident("part")) {
                next();
                d.parts.push_back(expect_ident().text);
            } else if (is_ident("match")) {
                next();
                DslMatch m;
                m.from_part = int(expect_integer());
                expect_punct(".");
                m.from_item = expect_ident().text;
                expect_punct("->");
                m.to_part = int(expect_integer());
                expect_punct(".");
                m.to_item = expect_ident().text;
                d.matches.push_back(std::move(m));
            } else {
                fail("expected 'part' or 'match'", peek());
            }
        }
        next();
        return d;
    }

    std::optional<RewritingType> parse_type_suffix() {
        if (!is_punct("[")) return std::nullopt;
        if (peek(1).kind != Token::Kind::ident) return std::nullopt;
        std::string w = peek(1).text;
        RewritingType t;
        if (w == "dpo") t = RewritingType::DPO;
        else if (w == "spoa") t = RewritingType::SPO_A;
        else if (w == "spob") t = RewritingType::SPO_B;
        else if (w == "spoab") t = RewritingType::SPO_AB;
        else return std::nullopt;  // '[' starts a commutator operand instead
        next();
        next();
        expect_punct("]");
        return t;
    }

    ExprPtr make(Expr::Op op, std::vector<ExprPtr> args, const Token& at) {
        auto e = std::make_shared<Expr>();
        e->op = op;
        e->args = std::move(args);
        e->line = at.line;
        e->col = at.col;
        return e;
    }

    ExprPtr parse_expr() { return parse_additive(); }

    ExprPtr parse_additive() {
        ExprPtr lhs = parse_multiplicative();
        while (is_punct("+") || is_punct("-")) {
            Token op = next();
            ExprPtr rhs = parse_multiplicative();
            lhs = make(op.text == "+" ? Expr::Op::add : Expr::Op::sub, {lhs, rhs}, op);
        }
        return lhs;
    }

    ExprPtr parse_multiplicative() {
        ExprPtr lhs = parse_unary();
        for (;;) {
            if (is_punct("*") || is_punct("⊛") || is_ident("star")) {
                bool nontriv = !is_punct("*");
                Token op = next();
                auto t = parse_type_suffix();
                ExprPtr rhs = parse_unary();
                Expr::Op kind = nontriv ? (t ? Expr::Op::nontriv_t : Expr::Op::nontriv)
                                        : (t ? Expr::Op::compose_t : Expr::Op::compose);
                lhs = make(kind, {lhs, rhs}, op);
                if (t) lhs->type = *t;
            } else if (is_punct("⊎") || is_ident("uplus")) {
                Token op = next();
                lhs = make(Expr::Op::superpose, {lhs, parse_unary()}, op);
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_unary() {
        if (is_punct("-")) {
            Token op = next();
            return make(Expr::Op::neg, {parse_unary()}, op);
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        while (is_punct("†") || is_punct("'")) {
            Token op = next();
            e = make(Expr::Op::dagger, {e}, op);
        }
        return e;
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        if (t.kind == Token::Kind::integer) {
            Token num = next();
            Rational v(Integer(num.text));
            if (is_punct("/") && peek(1).kind == Token::Kind::integer) {
                next();
                Token den = next();
                v /= Rational(Integer(den.text));
            }
            auto e = make(Expr::Op::scalar, {}, num);
            e->value = v;
            return e;
        }
        if (is_punct("(")) {
            next();
            ExprPtr e = parse_expr();
            expect_punct(")");
            return e;
        }
        if (is_punct("[")) {
            Token open = next();
            ExprPtr x = parse_expr();
            expect_punct(",");
            ExprPtr y = parse_expr();
            expect_punct("]");
            return make(Expr::Op::commutator, {x, y}, open);
        }
        if ((is_punct("Δ") || is_ident("Delta")) && is_punct("(", 1)) {
            Token op = next();
            next();
            ExprPtr e = parse_expr();
            expect_punct(")");
            return make(Expr::Op::coproduct, {e}, op);
        }
        if (is_ident("S") && is_punct("(", 1)) {
            Token op = next();
            next();
            ExprPtr e = parse_expr();
            expect_punct(")");
            return make(Expr::Op::antipode, {e}, op);
        }
        if (t.kind == Token::Kind::ident) {
            Token name = next();
            auto e = make(Expr::Op::name, {}, name);
            e->name = name.text;
            return e;
        }
        fail("expected an expression", t);
    }
};

}  // namespace detail

inline DslDocument parse_dsl(const std::string& source) {
    return detail::DslParser(source).parse_document();
}

// ---------------------------------------------------------------------------
// Printer (canonical formatting; parse ∘ print is the identity on documents)
// ---------------------------------------------------------------------------

namespace detail {

inline std::string print_graph_body(const GraphBody& b) {
    std::string out = "{";
    for (const auto& v : b.vertices) out += " " + v;
    if (!b.edges.empty()) {
        out += " edges {";
        for (const auto& e : b.edges) out += " " + e.name + ": " + e.src + " -> " + e.tgt;
        out += " }";
    }
    return out + " }";
}

inline std::string print_expr(const Expr& e) {
    auto wrap = [](const ExprPtr& c) {
        std::string s = print_expr(*c);
        if (c->op == Expr::Op::name || c->op == Expr::Op::scalar ||
            c->op == Expr::Op::commutator || c->op == Expr::Op::coproduct ||
            c->op == Expr::Op::antipode || c->op == Expr::Op::dagger)
            return s;
        return "(" + s + ")";
    };
    auto type_suffix = [&] { return std::string("[") + [&] {
        switch (e.type) {
            case RewritingType::DPO: return "dpo";
            case RewritingType::SPO_A: return "spoa";
            case RewritingType::SPO_B: return "spob";
            case RewritingType::SPO_AB: return "spoab";
        }
        return "dpo";
    }() + "]"; };
    switch (e.op) {
        case Expr::Op::name: return e.name;
        case Expr::Op::scalar: return rational_to_string(e.value);
        case Expr::Op::add: return wrap(e.args[0]) + " + " + wrap(e.args[1]);
        case Expr::Op::sub: return wrap(e.args[0]) + " - " + wrap(e.args[1]);
        case Expr::Op::neg: return "-" + wrap(e.args[0]);
        case Expr::Op::compose: return wrap(e.args[0]) + " * " + wrap(e.args[1]);
        case Expr::Op::compose_t:
            return wrap(e.args[0]) + " *" + type_suffix() + " " + wrap(e.args[1]);
        case Expr::Op::superpose: return wrap(e.args[0]) + " ⊎ " + wrap(e.args[1]);
        case Expr::Op::nontriv: return wrap(e.args[0]) + " ⊛ " + wrap(e.args[1]);
        case Expr::Op::nontriv_t:
            return wrap(e.args[0]) + " ⊛" + type_suffix() + " " + wrap(e.args[1]);
        case Expr::Op::dagger: return wrap(e.args[0]) + "†";
        case Expr::Op::commutator:
            return "[" + print_expr(*e.args[0]) + ", " + print_expr(*e.args[1]) + "]";
        case Expr::Op::coproduct: return "Δ(" + print_expr(*e.args[0]) + ")";
        case Expr::Op::antipode: return "S(" + print_expr(*e.args[0]) + ")";
    }
    return "?";
}

}  // namespace detail

inline std::string print_dsl(const DslDocument& doc) {
    std::string out;
    for (const Statement& s : doc.statements) {
        switch (s.kind) {
            case Statement::Kind::graph:
                out += "graph " + s.graph.name + " " + detail::print_graph_body(s.graph.body);
                break;
            case Statement::Kind::rule: {
                auto side = [](const RuleSide& rs) {
                    return rs.ref.empty() ? detail::print_graph_body(rs.body) : rs.ref;
                };
                out += "rule " + s.rule.name + " { in " + side(s.rule.in) + " out " +
                       side(s.rule.out) + " map {";
                for (const auto& [a, b] : s.rule.map_pairs) out += " " + a + " -> " + b;
                out += " } }";
                break;
            }
            case Statement::Kind::diagram: {
                out += "diagram " + s.diagram.name + " {";
                for (const auto& p : s.diagram.parts) out += " part " + p;
                for (const auto& m : s.diagram.matches)
                    out += " match " + std::to_string(m.from_part) + "." + m.from_item + " -> " +
                           std::to_string(m.to_part) + "." + m.to_item;
                out += " }";
                break;
            }
            case Statement::Kind::let:
                out += "let " + s.let.name + " = " + detail::print_expr(*s.let.expr);
                break;
            case Statement::Kind::show:
                out += "show " + detail::print_expr(*s.show.expr);
                break;
        }
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct NamedGraph {
    Multigraph g;
    std::map<std::string, Id> v_names, e_names;
};

struct NamedRule {
    LinearRule r;
    NamedGraph in, out;
};

struct NamedDiagram {
    RuleDiagram d;
    std::vector<NamedRule> part_names;
};

struct Value {
    enum class Kind { scalar, element, tensor } kind = Kind::scalar;
    Rational scalar;
    Element element;
    TensorElement tensor;
};

struct Environment {
    std::map<std::string, NamedGraph> graphs;
    std::map<std::string, NamedRule> rules;
    std::map<std::string, NamedDiagram> diagrams;
    std::map<std::string, Value> lets;
    std::vector<std::pair<std::string, Value>> shown;  // outputs of show statements
};

namespace detail {

inline NamedGraph build_graph(const GraphBody& b, int line, int col) {
    NamedGraph ng;
    Id next_id = 0;
    for (const auto& v : b.vertices) {
        if (!ng.v_names.emplace(v, next_id).second)
            throw DslError("E007", line, col, "duplicate vertex '" + v + "'");
        ng.g.add_vertex(next_id++);
    }
    for (const auto& e : b.edges) {
        auto s = ng.v_names.find(e.src), t = ng.v_names.find(e.tgt);
        if (s == ng.v_names.end() || t == ng.v_names.end())
            throw DslError("E002", line, col,
                           "malformed edge '" + e.name + "': unknown endpoint");
        if (ng.e_names.count(e.name) || ng.v_names.count(e.name))
            throw DslError("E007", line, col, "duplicate item '" + e.name + "'");
        ng.e_names.emplace(e.name, next_id);
        ng.g.add_edge(next_id++, s->second, t->second);
    }
    return ng;
}

inline std::optional<Element> builtin_element(const std::string& name) {
    if (name == "a") return gen_a();
    if (name == "adag") return gen_adag();
    if (name == "I") return gen_I();
    if (name == "l") return gen_l();
    if (name == "ldag") return gen_ldag();
    if (name == "L") return gen_L();
    if (name == "e") return gen_e();
    if (name == "edag") return gen_edag();
    if (name == "E") return gen_E();
    if (name == "d_e") return gen_d_e();
    return std::nullopt;
}

inline Value evaluate_expr(const Expr& e, const Environment& env);

inline Element element_of(const Value& v, const Expr& at) {
    if (v.kind == Value::Kind::element) return v.element;
    if (v.kind == Value::Kind::scalar) return scale(v.scalar, unit_element());
    throw DslError("E006", at.line, at.col, "expected an element, got a tensor");
}

inline Value element_value(Element x) {
    Value v;
    v.kind = Value::Kind::element;
    v.element = std::move(x);
    return v;
}

inline Value evaluate_expr(const Expr& e, const Environment& env) {
    auto arg = [&](size_t i) { return evaluate_expr(*e.args[i], env); };
    switch (e.op) {
        case Expr::Op::scalar: {
            Value v;
            v.kind = Value::Kind::scalar;
            v.scalar = e.value;
            return v;
        }
        case Expr::Op::name: {
            if (auto it = env.lets.find(e.name); it != env.lets.end()) return it->second;
            if (auto b = builtin_element(e.name)) return element_value(*b);
            if (auto it = env.diagrams.find(e.name); it != env.diagrams.end())
                return element_value(basis_element(it->second.d));
            if (auto it = env.rules.find(e.name); it != env.rules.end())
                return element_value(basis_element(split_rule_into_diagram(it->second.r)));
            throw DslError("E001", e.line, e.col, "unknown name '" + e.name + "'");
        }
        case Expr::Op::add:
        case Expr::Op::sub: {
            Value x = arg(0), y = arg(1);
            bool minus = (e.op == Expr::Op::sub);
            if (x.kind == Value::Kind::scalar && y.kind == Value::Kind::scalar) {
                Value v;
                v.kind = Value::Kind::scalar;
                v.scalar = minus ? Rational(x.scalar - y.scalar) : Rational(x.scalar + y.scalar);
                return v;
            }
            if (x.kind == Value::Kind::tensor || y.kind == Value::Kind::tensor) {
                if (x.kind != y.kind)
                    throw DslError("E006", e.line, e.col, "cannot mix tensors and elements");
                Value v;
                v.kind = Value::Kind::tensor;
                v.tensor = tensor_add(x.tensor, minus ? tensor_scale(-1, y.tensor) : y.tensor);
                return v;
            }
            Element ex = element_of(x, e), ey = element_of(y, e);
            return element_value(minus ? sub(ex, ey) : add(ex, ey));
        }
        case Expr::Op::neg: {
            Value x = arg(0);
            if (x.kind == Value::Kind::scalar) {
                x.scalar = -x.scalar;
                return x;
            }
            if (x.kind == Value::Kind::tensor) {
                x.tensor = tensor_scale(-1, x.tensor);
                return x;
            }
            x.element = scale(-1, x.element);
            return x;
        }
        case Expr::Op::compose: {
            Value x = arg(0), y = arg(1);
            if (x.kind == Value::Kind::scalar || y.kind == Value::Kind::scalar) {
                const Value& s = (x.kind == Value::Kind::scalar) ? x : y;
                const Value& o = (x.kind == Value::Kind::scalar) ? y : x;
                if (o.kind == Value::Kind::scalar) {
                    Value v;
                    v.kind = Value::Kind::scalar;
                    v.scalar = x.scalar * y.scalar;
                    return v;
                }
                if (o.kind == Value::Kind::tensor) {
                    Value v;
                    v.kind = Value::Kind::tensor;
                    v.tensor = tensor_scale(s.scalar, o.tensor);
                    return v;
                }
                return element_value(scale(s.scalar, o.element));
            }
            if (x.kind == Value::Kind::tensor && y.kind == Value::Kind::tensor) {
                Value v;
                v.kind = Value::Kind::tensor;
                v.tensor = tensor_multiply(x.tensor, y.tensor);
                return v;
            }
            return element_value(compose_D(element_of(x, e), element_of(y, e)));
        }
        case Expr::Op::compose_t:
            try {
                return element_value(compose_R(element_of(arg(0), e), element_of(arg(1), e),
                                               e.type));
            } catch (const std::invalid_argument& ex) {
                throw DslError("E005", e.line, e.col, ex.what());
            }
        case Expr::Op::superpose:
            return element_value(superpose(element_of(arg(0), e), element_of(arg(1), e)));
        case Expr::Op::nontriv:
            return element_value(nontrivial_compose(element_of(arg(0), e), element_of(arg(1), e)));
        case Expr::Op::nontriv_t:
            return element_value(
                nontrivial_compose_R(element_of(arg(0), e), element_of(arg(1), e), e.type));
        case Expr::Op::dagger: return element_value(dagger(element_of(arg(0), e)));
        case Expr::Op::commutator: {
            Element x = element_of(arg(0), e), y = element_of(arg(1), e);
            return element_value(sub(compose_D(x, y), compose_D(y, x)));
        }
        case Expr::Op::coproduct: {
            Value v;
            v.kind = Value::Kind::tensor;
            v.tensor = coproduct(element_of(arg(0), e));
            return v;
        }
        case Expr::Op::antipode: return element_value(antipode(element_of(arg(0), e)));
    }
    throw DslError("E004", e.line, e.col, "unhandled expression");
}

inline NamedRule build_rule(const RuleStmt& r, const Environment& env) {
    NamedRule nr;
    auto side = [&](const RuleSide& rs) -> NamedGraph {
        if (rs.ref.empty()) return build_graph(rs.body, 0, 0);
        auto it = env.graphs.find(rs.ref);
        if (it == env.graphs.end())
            throw DslError("E001", 0, 0, "unknown graph '" + rs.ref + "'");
        return it->second;
    };
    nr.in = side(r.in);
    nr.out = side(r.out);
    std::set<IdPair> vp, ep;
    std::set<std::string> used_from, used_to;
    for (const auto& [from, to] : r.map_pairs) {
        if (!used_from.insert(from).second || !used_to.insert(to).second)
            throw DslError("E003", 0, 0,
                           "non-injective correspondence at '" + from + " -> " + to + "'");
        if (auto v = nr.in.v_names.find(from); v != nr.in.v_names.end()) {
            auto w = nr.out.v_names.find(to);
            if (w == nr.out.v_names.end())
                throw DslError("E001", 0, 0, "unknown output vertex '" + to + "'");
            vp.emplace(v->second, w->second);
        } else if (auto ee = nr.in.e_names.find(from); ee != nr.in.e_names.end()) {
            auto f = nr.out.e_names.find(to);
            if (f == nr.out.e_names.end())
                throw DslError("E001", 0, 0, "unknown output edge '" + to + "'");
            ep.emplace(ee->second, f->second);
        } else {
            throw DslError("E001", 0, 0, "unknown input item '" + from + "'");
        }
    }
    nr.r = make_linear_rule(nr.in.g, nr.out.g, std::move(vp), std::move(ep));
    std::string why;
    if (!is_valid_linear_rule(nr.r, &why))
        throw DslError("E005", 0, 0, "invalid rule '" + r.name + "': " + why);
    return nr;
}

inline NamedDiagram build_diagram(const DiagramStmt& d, const Environment& env) {
    NamedDiagram nd;
    for (const auto& pname : d.parts) {
        auto it = env.rules.find(pname);
        if (it == env.rules.end())
            throw DslError("E001", 0, 0, "unknown rule '" + pname + "'");
        if (!is_connected_rule(it->second.r))
            throw DslError("E005", 0, 0, "rule '" + pname + "' is not connected");
        nd.d.parts.push_back(it->second.r);
        nd.part_names.push_back(it->second);
    }
    for (const auto& m : d.matches) {
        int j = m.from_part, i = m.to_part;
        if (i >= j || j >= int(nd.d.parts.size()) || i < 0)
            throw DslError("E005", 0, 0, "match must go from a later part to an earlier one");
        auto& gm = nd.d.matches[{i, j}];
        const NamedRule& from = nd.part_names[size_t(j)];
        const NamedRule& to = nd.part_names[size_t(i)];
        auto globalized = [&](const Multigraph& g, int part, bool edges) {
            IdSet u;
            for (Id x : (edges ? g.edges : g.vertices)) u.insert(global_id(part, x));
            return u;
        };
        if (gm.fv.pairs.empty() && gm.fv.dom_universe.empty()) {
            gm.fv = Relation(globalized(from.r.output, j, false),
                             globalized(to.r.input, i, false), {});
            gm.fe = Relation(globalized(from.r.output, j, true), globalized(to.r.input, i, true),
                             {});
        }
        auto resolve = [&](const NamedGraph& names, const std::string& item, int part)
            -> std::pair<bool, Id> {
            if (auto v = names.v_names.find(item); v != names.v_names.end())
                return {false, global_id(part, v->second)};
            if (auto ee = names.e_names.find(item); ee != names.e_names.end())
                return {true, global_id(part, ee->second)};
            throw DslError("E001", 0, 0, "unknown match item '" + item + "'");
        };
        auto [from_is_edge, from_id] = resolve(from.out, m.from_item, j);
        auto [to_is_edge, to_id] = resolve(to.in, m.to_item, i);
        if (from_is_edge != to_is_edge)
            throw DslError("E005", 0, 0, "match pairs a vertex with an edge");
        (from_is_edge ? gm.fe : gm.fv).pairs.emplace(from_id, to_id);
    }
    ValidationReport rep = validate_diagram(nd.d);
    if (!rep.ok())
        throw DslError("E005", 0, 0, "invalid diagram '" + d.name + "': " + rep.violations[0]);
    return nd;
}

}  // namespace detail

// Evaluates every statement; definitions land in the environment, show
// statements append (printed expression, value) pairs to env.shown.
inline Environment evaluate_dsl(const DslDocument& doc) {
    Environment env;
    for (const Statement& s : doc.statements) {
        switch (s.kind) {
            case Statement::Kind::graph:
                if (!env.graphs
                         .emplace(s.graph.name, detail::build_graph(s.graph.body, 0, 0))
                         .second)
                    throw DslError("E007", 0, 0, "duplicate graph '" + s.graph.name + "'");
                break;
            case Statement::Kind::rule:
                if (!env.rules.emplace(s.rule.name, detail::build_rule(s.rule, env)).second)
                    throw DslError("E007", 0, 0, "duplicate rule '" + s.rule.name + "'");
                break;
            case Statement::Kind::diagram:
                if (!env.diagrams.emplace(s.diagram.name, detail::build_diagram(s.diagram, env))
                         .second)
                    throw DslError("E007", 0, 0, "duplicate diagram '" + s.diagram.name + "'");
                break;
            case Statement::Kind::let:
                env.lets[s.let.name] = detail::evaluate_expr(*s.let.expr, env);
                break;
            case Statement::Kind::show:
                env.shown.emplace_back(detail::print_expr(*s.show.expr),
                                       detail::evaluate_expr(*s.show.expr, env));
                break;
        }
    }
    return env;
}

}  // namespace rdc
