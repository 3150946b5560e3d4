#include "pecan/syntax.hpp"

#include <cctype>
#include <set>

namespace pecan::syntax {

using namespace ast;

namespace {

enum class Tok { Ident, Int, String, Directive, Sym, End };

struct Token {
    Tok kind;
    std::string text;
    SourceLoc loc;
};

const std::set<std::string> kKeywords = {"exists", "forall", "if",       "then",     "true",
                                          "false",  "is",     "are",     "Restrict", "Structure",
                                          "defining", "Theorem"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '\''; }

std::vector<Token> lex(const std::string& src) {
    static const char* symbols[] = {"<=>", ":=", "=>", "<=", ">=", "!=", "..", "(", ")", "{", "}", "[", "]",
                                    ",",   ".",  ":",  "&",  "|",  "!",  "<",  ">", "=", "+", "-", "*"};
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (src.compare(i, 2, "//") == 0) {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        SourceLoc loc{line, col};
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            out.push_back({Tok::Ident, src.substr(i, j - i), loc});
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Tok::Int, src.substr(i, j - i), loc});
            advance(j - i);
        } else if (c == '#') {
            std::size_t j = i + 1;
            while (j < src.size() && ident_char(src[j])) ++j;
            if (j == i + 1) throw SyntaxError("expected a directive name after '#'", loc);
            out.push_back({Tok::Directive, src.substr(i, j - i), loc});
            advance(j - i);
        } else if (c == '"') {
            std::string text;
            advance(1);
            while (true) {
                if (i >= src.size() || src[i] == '\n') throw SyntaxError("unterminated string", loc);
                if (src[i] == '"') break;
                if (src[i] == '\\' && i + 1 < src.size()) advance(1);
                text += src[i];
                advance(1);
            }
            advance(1);
            out.push_back({Tok::String, text, loc});
        } else {
            bool matched = false;
            for (const char* s : symbols) {
                std::string sym(s);
                if (src.compare(i, sym.size(), sym) == 0) {
                    out.push_back({Tok::Sym, sym, loc});
                    advance(sym.size());
                    matched = true;
                    break;
                }
            }
            if (!matched) throw SyntaxError(std::string("unexpected character '") + c + "'", loc);
        }
    }
    out.push_back({Tok::End, "", {line, col}});
    return out;
}

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::String: return "string \"" + t.text + "\"";
    default: return "'" + t.text + "'";
    }
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    Program program() {
        Program p;
        while (peek().kind != Tok::End) p.items.push_back(item());
        return p;
    }

    PredPtr lone_pred() {
        PredPtr p = pred();
        expect_end();
        return p;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool is_sym(const std::string& s, std::size_t k = 0) const {
        return peek(k).kind == Tok::Sym && peek(k).text == s;
    }
    bool is_word(const std::string& s, std::size_t k = 0) const {
        return peek(k).kind == Tok::Ident && peek(k).text == s;
    }
    bool accept_sym(const std::string& s) {
        if (!is_sym(s)) return false;
        next();
        return true;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw SyntaxError("expected " + what + ", found " + describe(peek()), peek().loc);
    }
    void expect_sym(const std::string& s) {
        if (!accept_sym(s)) fail("'" + s + "'");
    }
    void expect_word(const std::string& s) {
        if (!is_word(s)) fail("'" + s + "'");
        next();
    }
    void expect_end() {
        if (peek().kind != Tok::End) fail("end of input");
    }
    std::string name() {
        if (peek().kind != Tok::Ident || kKeywords.count(peek().text)) fail("an identifier");
        return next().text;
    }
    std::string string_lit() {
        if (peek().kind != Tok::String) fail("a string");
        return next().text;
    }

    std::vector<std::string> name_list() {
        std::vector<std::string> out{name()};
        while (accept_sym(",")) out.push_back(name());
        return out;
    }

    TypeTag type_tag() {
        TypeTag t;
        t.name = name();
        if (accept_sym("(")) {
            if (!is_sym(")")) t.args = name_list();
            expect_sym(")");
        }
        return t;
    }

    std::optional<TypeTag> type_annotation() {
        if (is_word("is") || is_sym(":")) {
            next();
            return type_tag();
        }
        return std::nullopt;
    }

    std::vector<Param> params() {
        std::vector<Param> out;
        expect_sym("(");
        if (accept_sym(")")) return out;
        do {
            Param p;
            p.name = name();
            p.type = type_annotation();
            out.push_back(std::move(p));
        } while (accept_sym(","));
        expect_sym(")");
        return out;
    }

    Item item() {
        const Token& t = peek();
        SourceLoc loc = t.loc;
        if (t.kind == Tok::Directive) return directive();
        if (is_word("Restrict")) {
            next();
            RestrictDecl r{name_list(), {}, loc};
            if (!is_word("are") && !is_word("is")) fail("'are' or 'is'");
            next();
            r.type = type_tag();
            expect_sym(".");
            return r;
        }
        if (is_word("Structure")) {
            next();
            StructureDecl s{type_tag(), {}, loc};
            expect_word("defining");
            expect_sym("{");
            if (!is_sym("}")) {
                do {
                    std::string key = string_lit();
                    expect_sym(":");
                    s.defs.emplace_back(std::move(key), template_());
                } while (accept_sym(","));
            }
            expect_sym("}");
            accept_sym(".");
            return s;
        }
        if (is_word("Theorem")) {
            next();
            expect_sym("(");
            TheoremDecl th{string_lit(), nullptr, loc};
            expect_sym(",");
            expect_sym("{");
            th.body = pred();
            expect_sym("}");
            expect_sym(")");
            accept_sym(".");
            return th;
        }
        if (t.kind == Tok::Ident && !kKeywords.count(t.text)) {
            PredicateDef d{name(), {}, nullptr, loc};
            if (is_sym("(")) d.params = params();
            expect_sym(":=");
            d.body = pred();
            accept_sym(".");
            return d;
        }
        fail("a definition or directive");
    }

    Template template_() {
        Template t{name(), {}};
        expect_sym("(");
        if (!is_sym(")")) {
            do {
                if (accept_sym("*") || (is_word("any") && (next(), true))) {
                    t.slots.emplace_back(std::nullopt);
                } else {
                    t.slots.emplace_back(name());
                }
            } while (accept_sym(","));
        }
        expect_sym(")");
        return t;
    }

    Item directive() {
        const Token t = next();
        if (t.text == "#load" || t.text == "#builtin") {
            std::string source = string_lit();
            expect_word("as");
            std::string pname = name();
            std::vector<Param> ps = params();
            accept_sym(".");
            if (t.text == "#load") return LoadDecl{source, pname, ps, t.loc};
            return BuiltinDecl{source, pname, ps, t.loc};
        }
        if (t.text == "#save_aut") {
            std::string path = string_lit();
            std::string pname = name();
            accept_sym(".");
            return SaveDecl{path, pname, t.loc};
        }
        throw SyntaxError("unknown directive '" + t.text + "'", t.loc);
    }

    // Predicates, loosest binding first.

    PredPtr pred() {
        PredPtr lhs = implication();
        while (is_sym("<=>")) {
            SourceLoc loc = next().loc;
            lhs = make_junction(PredKind::Iff, lhs, implication(), loc);
        }
        return lhs;
    }

    PredPtr implication() {
        PredPtr lhs = disjunction();
        if (is_sym("=>")) {
            SourceLoc loc = next().loc;
            return make_junction(PredKind::Implies, lhs, implication(), loc);
        }
        return lhs;
    }

    PredPtr disjunction() {
        PredPtr lhs = conjunction();
        while (is_sym("|")) {
            SourceLoc loc = next().loc;
            lhs = make_junction(PredKind::Or, lhs, conjunction(), loc);
        }
        return lhs;
    }

    PredPtr conjunction() {
        PredPtr lhs = unary();
        while (is_sym("&")) {
            SourceLoc loc = next().loc;
            lhs = make_junction(PredKind::And, lhs, unary(), loc);
        }
        return lhs;
    }

    PredPtr unary() {
        SourceLoc loc = peek().loc;
        if (accept_sym("!")) return make_not(unary(), loc);
        if (is_word("exists") || is_word("forall")) {
            PredKind kind = next().text == "exists" ? PredKind::Exists : PredKind::Forall;
            std::vector<std::string> vars = name_list();
            std::optional<TypeTag> type = type_annotation();
            expect_sym(".");
            return make_quantifier(kind, std::move(vars), std::move(type), pred(), loc);
        }
        if (is_word("if")) {
            next();
            PredPtr cond = pred();
            expect_word("then");
            return make_junction(PredKind::Implies, cond, pred(), loc);
        }
        return atom();
    }

    PredPtr atom() {
        SourceLoc loc = peek().loc;
        if (is_word("true") || is_word("false")) return make_const(next().text == "true", loc);

        const std::size_t start = pos_;
        const bool opens_paren = is_sym("(");
        // Both readings are tried; the error that got further is reported.
        std::optional<SyntaxError> best;
        std::size_t best_pos = 0;
        auto note_failure = [&](const SyntaxError& e) {
            if (!best || pos_ >= best_pos) {
                best = e;
                best_pos = pos_;
            }
        };
        try {
            ExprPtr lhs = expr();
            static const std::pair<const char*, RelOp> rels[] = {{"<", RelOp::Lt},  {"<=", RelOp::Le},
                                                                  {">", RelOp::Gt},  {">=", RelOp::Ge},
                                                                  {"=", RelOp::Eq},  {"!=", RelOp::Ne}};
            for (const auto& [sym, op] : rels)
                if (is_sym(sym)) {
                    SourceLoc at = next().loc;
                    return make_rel(op, lhs, expr(), at);
                }
            if (is_word("is")) {
                next();
                auto p = std::make_shared<Pred>();
                p->kind = PredKind::Is;
                p->loc = loc;
                p->args = {lhs};
                p->type = type_tag();
                return p;
            }
            if (lhs->kind == ExprKind::Func && !opens_paren) return make_call(lhs->name, lhs->args, loc);
            if (lhs->kind == ExprKind::Var && !opens_paren) return make_call(lhs->name, {}, loc);
            fail("a relation");
        } catch (const SyntaxError& e) {
            note_failure(e);
            pos_ = start;
        }
        if (accept_sym("(")) {
            try {
                PredPtr p = pred();
                expect_sym(")");
                return p;
            } catch (const SyntaxError& e) {
                note_failure(e);
            }
        }
        throw *best;
    }

    // Expressions.

    ExprPtr expr() {
        ExprPtr lhs = term();
        while (is_sym("+") || is_sym("-")) {
            const Token& op = next();
            ExprKind kind = op.text == "+" ? ExprKind::Add : ExprKind::Sub;
            lhs = make_binary(kind, lhs, term(), op.loc);
        }
        return lhs;
    }

    ExprPtr term() {
        if (peek().kind == Tok::Int && is_sym("*", 1)) {
            const Token& n = next();
            next();
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Mul;
            e->value = literal_value(n);
            e->loc = n.loc;
            e->args = {term()};
            return e;
        }
        return primary();
    }

    unsigned long long literal_value(const Token& t) {
        try {
            return std::stoull(t.text);
        } catch (const std::exception&) {
            throw SyntaxError("integer literal out of range", t.loc);
        }
    }

    ExprPtr primary() {
        SourceLoc loc = peek().loc;
        if (peek().kind == Tok::Int) return make_int(literal_value(next()), loc);
        if (accept_sym("(")) {
            ExprPtr e = expr();
            expect_sym(")");
            return e;
        }
        std::string id = name();
        if (accept_sym("(")) {
            std::vector<ExprPtr> args;
            if (!is_sym(")")) {
                do args.push_back(expr());
                while (accept_sym(","));
            }
            expect_sym(")");
            return make_func(id, std::move(args), loc);
        }
        if (accept_sym("[")) {
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::WordAt;
            e->name = id;
            e->loc = loc;
            e->args = {expr()};
            if (accept_sym("..")) {
                e->kind = ExprKind::WordRange;
                e->args.push_back(expr());
            }
            expect_sym("]");
            return e;
        }
        return make_var(id, loc);
    }
};

}  // namespace

Program parse(const std::string& text) { return Parser(text).program(); }

PredPtr parse_pred(const std::string& text) { return Parser(text).lone_pred(); }

}  // namespace pecan::syntax
