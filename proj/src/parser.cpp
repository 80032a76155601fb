#include "bcs/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>

namespace bcs {

namespace {

enum class Tok {
    end, sep,           // end of input; statement separator (newline or ';' at depth 0)
    ident, number,
    plus, minus, star, slash, caret,
    lparen, rparen, lbracket, rbracket,
    comma, semi, arrow,
    rel_le, rel_lt, rel_ge, rel_gt, rel_eq, rel_ne,
};

struct Token {
    Tok kind;
    std::string text;
    double num = 0.0;
    int line = 0, col = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        for (;;) {
            if (pos_ >= s_.size()) return make(Tok::end);
            char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
                continue;
            }
            if (c == '\n') {
                advance();
                if (depth_ == 0) return Token{Tok::sep, "\n", 0.0, line_, col_};
                continue;
            }
            if (std::isspace((unsigned char)c)) { advance(); continue; }
            break;
        }
        int ln = line_, co = col_;
        char c = s_[pos_];
        auto tok = [&](Tok k, std::string t) {
            for (std::size_t i = 0; i < t.size(); ++i) advance();
            return Token{k, t, 0.0, ln, co};
        };
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::string id;
            while (pos_ < s_.size() &&
                   (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_')) {
                id += s_[pos_];
                advance();
            }
            return Token{Tok::ident, id, 0.0, ln, co};
        }
        if (std::isdigit((unsigned char)c) ||
            (c == '.' && pos_ + 1 < s_.size() &&
             std::isdigit((unsigned char)s_[pos_ + 1]))) {
            const char* start = s_.c_str() + pos_;
            char* endp = nullptr;
            double v = std::strtod(start, &endp);
            std::string t(start, (std::size_t)(endp - start));
            for (std::size_t i = 0; i < t.size(); ++i) advance();
            return Token{Tok::number, t, v, ln, co};
        }
        switch (c) {
            case '+': return tok(Tok::plus, "+");
            case '-':
                if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '>')
                    return tok(Tok::arrow, "->");
                return tok(Tok::minus, "-");
            case '*': return tok(Tok::star, "*");
            case '/': return tok(Tok::slash, "/");
            case '^': return tok(Tok::caret, "^");
            case '(': ++depth_; return tok(Tok::lparen, "(");
            case ')': if (depth_ > 0) --depth_; return tok(Tok::rparen, ")");
            case '[': return tok(Tok::lbracket, "[");
            case ']': return tok(Tok::rbracket, "]");
            case ',': return tok(Tok::comma, ",");
            case ';':
                if (depth_ == 0) return tok(Tok::sep, ";");
                return tok(Tok::semi, ";");
            case '<':
                if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '=')
                    return tok(Tok::rel_le, "<=");
                return tok(Tok::rel_lt, "<");
            case '>':
                if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '=')
                    return tok(Tok::rel_ge, ">=");
                return tok(Tok::rel_gt, ">");
            case '=': return tok(Tok::rel_eq, "=");
            case '!':
                if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '=')
                    return tok(Tok::rel_ne, "!=");
                break;
            default: break;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", ln, co);
    }

private:
    Token make(Tok k) { return Token{k, "", 0.0, line_, col_}; }
    void advance() {
        if (s_[pos_] == '\n') { ++line_; col_ = 1; }
        else ++col_;
        ++pos_;
    }
    const std::string& s_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    int depth_ = 0;
};

std::optional<Rel> rel_of(Tok k) {
    switch (k) {
        case Tok::rel_le: return Rel::le;
        case Tok::rel_lt: return Rel::lt;
        case Tok::rel_ge: return Rel::ge;
        case Tok::rel_gt: return Rel::gt;
        case Tok::rel_eq: return Rel::eq;
        case Tok::rel_ne: return Rel::ne;
        default: return std::nullopt;
    }
}

// Copies the subtree at `root` in `src` into `dst`, returning the new root.
int clone_subtree(const Expression& src, int root, Expression& dst) {
    const ExprNode& n = src.nodes[(std::size_t)root];
    switch (n.kind) {
        case NodeKind::constant:
        case NodeKind::pi_const:
            return dst.add(n.kind, -1, -1, n.val);
        case NodeKind::var:
            return dst.add(NodeKind::var, n.a);
        case NodeKind::piecewise: {
            PiecewiseData out;
            const PiecewiseData& pw = src.pws[(std::size_t)n.a];
            for (const auto& c : pw.cases) {
                int g = clone_subtree(src, c.guard, dst);
                int b = clone_subtree(src, c.branch, dst);
                out.cases.push_back({g, c.rel, b});
            }
            out.else_branch = clone_subtree(src, pw.else_branch, dst);
            dst.pws.push_back(std::move(out));
            return dst.add(NodeKind::piecewise, (int)dst.pws.size() - 1);
        }
        default: {
            int a = clone_subtree(src, n.a, dst);
            int b = n.b >= 0 ? clone_subtree(src, n.b, dst) : -1;
            return dst.add(n.kind, a, b, n.val);
        }
    }
}

struct LetDef {
    Expression expr;
    int root;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) { bump(); }

    NCSP parse() {
        NCSP p;
        bool saw_any = false;
        skip_seps();
        while (cur_.kind != Tok::end) {
            if (cur_.kind != Tok::ident)
                fail("expected a statement keyword");
            const std::string kw = cur_.text;
            if (kw == "problem") {
                bump();
                p.name = expect_ident("problem name");
            } else if (kw == "var") {
                bump();
                std::string name = expect_ident("variable name");
                if (var_index(name) >= 0 || lets_.count(name))
                    fail("duplicate identifier '" + name + "'");
                if (expect_ident("'in'") != "in") fail("expected 'in'");
                expect(Tok::lbracket, "'['");
                double lo = parse_signed_number();
                expect(Tok::comma, "','");
                double hi = parse_signed_number();
                expect(Tok::rbracket, "']'");
                if (!(lo <= hi)) fail("empty domain for '" + name + "'");
                if (var_names_.size() >= 64) fail("too many variables");
                var_names_.push_back(name);
                domain_.push_back(Interval(lo, hi));
            } else if (kw == "let") {
                bump();
                std::string name = expect_ident("let name");
                if (var_index(name) >= 0 || lets_.count(name))
                    fail("duplicate identifier '" + name + "'");
                expect(Tok::rel_eq, "'='");
                LetDef def;
                def.root = parse_expr(def.expr);
                lets_.emplace(name, std::move(def));
            } else if (kw == "constraint") {
                bump();
                parse_constraint(p);
            } else {
                fail("unknown statement '" + kw + "'");
            }
            saw_any = true;
            if (cur_.kind != Tok::end) expect(Tok::sep, "end of statement");
            skip_seps();
        }
        if (!saw_any) fail("empty problem");
        if (var_names_.empty()) fail("no variables declared");
        p.var_names = var_names_;
        p.domain.comps = domain_;
        for (std::size_t i = 0; i < p.constraints.size(); ++i)
            p.constraints[i].id = (int)i;
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, cur_.line, cur_.col);
    }
    void bump() { cur_ = lex_.next(); }
    void skip_seps() { while (cur_.kind == Tok::sep) bump(); }
    void expect(Tok k, const char* what) {
        if (cur_.kind != k) fail(std::string("expected ") + what);
        bump();
    }
    std::string expect_ident(const char* what) {
        if (cur_.kind != Tok::ident) fail(std::string("expected ") + what);
        std::string t = cur_.text;
        bump();
        return t;
    }
    double parse_signed_number() {
        bool neg = false;
        if (cur_.kind == Tok::minus) { neg = true; bump(); }
        if (cur_.kind != Tok::number) fail("expected a number");
        double v = cur_.num;
        bump();
        return neg ? -v : v;
    }
    int var_index(const std::string& name) const {
        for (std::size_t i = 0; i < var_names_.size(); ++i)
            if (var_names_[i] == name) return (int)i;
        return -1;
    }

    // comparison chain: expr (rel expr)+ ; returns operand roots + relations
    struct Chain {
        std::vector<int> operands;  // in `arena`
        std::vector<Rel> rels;
    };
    Chain parse_chain(Expression& arena) {
        Chain ch;
        ch.operands.push_back(parse_expr(arena));
        auto r = rel_of(cur_.kind);
        if (!r) fail("expected a comparison operator");
        while ((r = rel_of(cur_.kind))) {
            bump();
            ch.rels.push_back(*r);
            ch.operands.push_back(parse_expr(arena));
        }
        return ch;
    }

    // lhs rel rhs -> "expr rel 0" root in `dst`
    int normalize(const Expression& arena, int lhs, int rhs, Expression& dst) {
        const ExprNode& rn = arena.nodes[(std::size_t)rhs];
        int l = clone_subtree(arena, lhs, dst);
        if (rn.kind == NodeKind::constant && rn.val == 0.0) return l;
        int r = clone_subtree(arena, rhs, dst);
        return dst.add(NodeKind::sub, l, r);
    }

    void parse_constraint(NCSP& p) {
        Expression scratch;
        std::vector<Chain> disjuncts;
        disjuncts.push_back(parse_chain(scratch));
        while (cur_.kind == Tok::ident && cur_.text == "or") {
            bump();
            disjuncts.push_back(parse_chain(scratch));
        }
        if (disjuncts.size() == 1) {
            // A chain of k comparisons expands to k separate constraints.
            const Chain& ch = disjuncts[0];
            for (std::size_t i = 0; i < ch.rels.size(); ++i) {
                Constraint c;
                int root = normalize(scratch, ch.operands[i], ch.operands[i + 1], c.expr);
                c.atoms.push_back({root, ch.rels[i]});
                p.constraints.push_back(std::move(c));
            }
        } else {
            Constraint c;
            for (const Chain& ch : disjuncts) {
                if (ch.rels.size() != 1)
                    fail("chained comparison not allowed inside a disjunction");
                int root = normalize(scratch, ch.operands[0], ch.operands[1], c.expr);
                c.atoms.push_back({root, ch.rels[0]});
            }
            p.constraints.push_back(std::move(c));
        }
    }

    int parse_expr(Expression& a) {
        int lhs = parse_term(a);
        for (;;) {
            if (cur_.kind == Tok::plus) {
                bump();
                lhs = a.add(NodeKind::add, lhs, parse_term(a));
            } else if (cur_.kind == Tok::minus) {
                bump();
                lhs = a.add(NodeKind::sub, lhs, parse_term(a));
            } else {
                return lhs;
            }
        }
    }

    int parse_term(Expression& a) {
        int lhs = parse_factor(a);
        for (;;) {
            if (cur_.kind == Tok::star) {
                bump();
                lhs = a.add(NodeKind::mul, lhs, parse_factor(a));
            } else if (cur_.kind == Tok::slash) {
                bump();
                lhs = a.add(NodeKind::div, lhs, parse_factor(a));
            } else {
                return lhs;
            }
        }
    }

    int parse_factor(Expression& a) {
        if (cur_.kind == Tok::minus) {
            bump();
            return a.add(NodeKind::neg, parse_factor(a));
        }
        return parse_power(a);
    }

    // ^ binds tighter than unary minus; the exponent must be constant.
    int parse_power(Expression& a) {
        int base = parse_atom(a);
        if (cur_.kind != Tok::caret) return base;
        bump();
        Expression tmp;
        int eroot = parse_factor(tmp);
        if (var_mask(tmp, eroot) != 0)
            fail("exponent must be a constant expression");
        double r = point_eval(tmp, eroot, {});
        if (std::isnan(r)) fail("exponent does not evaluate to a number");
        return a.add(NodeKind::pow, base, -1, r);
    }

    int parse_atom(Expression& a) {
        switch (cur_.kind) {
            case Tok::number: {
                double v = cur_.num;
                bump();
                return a.add_const(v);
            }
            case Tok::lparen: {
                bump();
                int e = parse_expr(a);
                expect(Tok::rparen, "')'");
                return e;
            }
            case Tok::ident: {
                std::string id = cur_.text;
                if (id == "pi") { bump(); return a.add(NodeKind::pi_const); }
                if (id == "piecewise") { bump(); return parse_piecewise(a); }
                if (id == "sqrt" || id == "ln" || id == "exp" || id == "abs") {
                    bump();
                    expect(Tok::lparen, "'('");
                    int c = parse_expr(a);
                    expect(Tok::rparen, "')'");
                    NodeKind k = id == "sqrt" ? NodeKind::sqrt_fn
                               : id == "ln"   ? NodeKind::ln_fn
                               : id == "exp"  ? NodeKind::exp_fn
                                              : NodeKind::abs_fn;
                    return a.add(k, c);
                }
                if (id == "min" || id == "max") {
                    bump();
                    expect(Tok::lparen, "'('");
                    int l = parse_expr(a);
                    expect(Tok::comma, "','");
                    int r = parse_expr(a);
                    expect(Tok::rparen, "')'");
                    return a.add(id == "min" ? NodeKind::min_fn : NodeKind::max_fn,
                                 l, r);
                }
                int vi = var_index(id);
                if (vi >= 0) { bump(); return a.add(NodeKind::var, vi); }
                auto it = lets_.find(id);
                if (it != lets_.end()) {
                    bump();
                    return clone_subtree(it->second.expr, it->second.root, a);
                }
                fail("unknown identifier '" + id + "'");
            }
            default:
                fail("expected an expression");
        }
    }

    // piecewise((cmp) -> expr; ...; else -> expr)
    int parse_piecewise(Expression& a) {
        expect(Tok::lparen, "'('");
        PiecewiseData pw;
        bool saw_else = false;
        for (;;) {
            if (cur_.kind == Tok::ident && cur_.text == "else") {
                bump();
                expect(Tok::arrow, "'->'");
                pw.else_branch = parse_expr(a);
                saw_else = true;
                break;
            }
            expect(Tok::lparen, "'(' before guard");
            int lhs = parse_expr(a);
            auto r = rel_of(cur_.kind);
            if (!r) fail("expected a comparison in piecewise guard");
            bump();
            int rhs = parse_expr(a);
            expect(Tok::rparen, "')' after guard");
            // normalize guard to "g rel 0" in place
            const ExprNode& rn = a.nodes[(std::size_t)rhs];
            int g = (rn.kind == NodeKind::constant && rn.val == 0.0)
                        ? lhs
                        : a.add(NodeKind::sub, lhs, rhs);
            expect(Tok::arrow, "'->'");
            int branch = parse_expr(a);
            pw.cases.push_back({g, *r, branch});
            if (cur_.kind == Tok::semi) { bump(); continue; }
            fail("expected ';' or 'else' in piecewise");
        }
        if (!saw_else) fail("piecewise requires an else branch");
        expect(Tok::rparen, "')'");
        a.pws.push_back(std::move(pw));
        return a.add(NodeKind::piecewise, (int)a.pws.size() - 1);
    }

    Lexer lex_;
    Token cur_;
    std::vector<std::string> var_names_;
    std::vector<Interval> domain_;
    std::map<std::string, LetDef> lets_;
};

}  // namespace

NCSP parse_problem(const std::string& text) { return Parser(text).parse(); }

std::string print_problem(const NCSP& p) {
    std::string s = "problem " + (p.name.empty() ? std::string("unnamed") : p.name) + "\n";
    for (std::size_t i = 0; i < p.var_names.size(); ++i) {
        s += "var " + p.var_names[i] + " in [" + format_double(p.domain[i].lo) +
             ", " + format_double(p.domain[i].hi) + "]\n";
    }
    for (const auto& c : p.constraints) {
        s += "constraint ";
        for (std::size_t i = 0; i < c.atoms.size(); ++i) {
            if (i) s += " or ";
            s += to_text(c.expr, c.atoms[i].root, p.var_names) + " " +
                 rel_text(c.atoms[i].rel) + " 0";
        }
        s += "\n";
    }
    return s;
}

}  // namespace bcs
