#include "icatt/parser.hpp"

#include <cctype>
#include <map>

namespace icatt {

namespace {

enum class Tok { Ident, LParen, RParen, LBrace, RBrace, Comma, Colon, Equals, Arrow, Star, Wild, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    Span span;
};

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '\'' || c == '_';
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.span = {line, col};
        auto single = [&](Tok k) {
            t.kind = k;
            t.text = std::string(1, c);
            advance(1);
        };
        switch (c) {
        case '(': single(Tok::LParen); break;
        case ')': single(Tok::RParen); break;
        case '{': single(Tok::LBrace); break;
        case '}': single(Tok::RBrace); break;
        case ',': single(Tok::Comma); break;
        case ':': single(Tok::Colon); break;
        case '=': single(Tok::Equals); break;
        case '*': single(Tok::Star); break;
        default:
            if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
                t.kind = Tok::Arrow;
                t.text = "->";
                advance(2);
                break;
            }
            if (!ident_char(c) || c == '-' || c == '\'') {
                Error err(ErrorKind::Syntax, "unexpected character '" + std::string(1, c) + "'");
                err.locate(line, col);
                throw err;
            }
            {
                std::size_t j = i;
                while (j < text.size() && ident_char(text[j])) {
                    if (text[j] == '-' && j + 1 < text.size() && text[j + 1] == '>') break;
                    ++j;
                }
                t.text = text.substr(i, j - i);
                t.kind = t.text == "_" ? Tok::Wild : Tok::Ident;
                advance(j - i);
            }
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.span = {line, col};
    out.push_back(end);
    return out;
}

const std::map<std::string, Destructor>& destructor_keywords() {
    static const std::map<std::string, Destructor> m = {
        {"linv", Destructor::LInv},   {"rinv", Destructor::RInv},   {"lunit", Destructor::LUnit},
        {"runit", Destructor::RUnit}, {"ilunit", Destructor::LWit}, {"irunit", Destructor::RWit}};
    return m;
}

bool is_decl_keyword(const std::string& s) { return s == "coh" || s == "let" || s == "inv" || s == "rec"; }

bool is_reserved(const std::string& s) {
    return is_decl_keyword(s) || s == "can" || s == "Inv" || s == "IHleft" || s == "IHright" ||
           destructor_keywords().count(s);
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    std::vector<SurfaceDecl> file() {
        std::vector<SurfaceDecl> out;
        while (peek().kind != Tok::End) out.push_back(decl());
        return out;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void error(const Token& t, const std::string& msg) const {
        std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        Error err(ErrorKind::Syntax, msg + ", found " + found);
        err.locate(t.span.line, t.span.column);
        throw err;
    }

    Token expect(Tok k, const std::string& what) {
        if (peek().kind != k) error(peek(), "expected " + what);
        return next();
    }

    bool at_ident(const std::string& s) const { return peek().kind == Tok::Ident && peek().text == s; }

    std::string name(const std::string& what) {
        const Token& t = peek();
        if (t.kind != Tok::Ident || is_reserved(t.text)) error(t, "expected " + what);
        return next().text;
    }

    SurfaceDecl decl() {
        const Token& kw = peek();
        if (kw.kind != Tok::Ident || !is_decl_keyword(kw.text))
            error(kw, "expected a declaration keyword (coh, let, inv or rec)");
        SurfaceDecl d;
        d.span = kw.span;
        std::string k = next().text;
        d.keyword = k == "coh" ? DeclKeyword::Coh : k == "let" ? DeclKeyword::Let
                  : k == "inv" ? DeclKeyword::Inv : DeclKeyword::Rec;
        d.name = name("a declaration name");
        context(d);
        switch (d.keyword) {
        case DeclKeyword::Coh:
            expect(Tok::Colon, "':' before the type of a coherence");
            d.type = type();
            break;
        case DeclKeyword::Let:
            if (peek().kind == Tok::Colon) {
                next();
                d.type = type();
            }
            expect(Tok::Equals, "'=' before the body");
            d.body = expr();
            break;
        case DeclKeyword::Inv:
        case DeclKeyword::Rec: {
            expect(Tok::Equals, "'=' before the components");
            expect(Tok::LBrace, "'{'");
            d.components.push_back(expr());
            while (peek().kind == Tok::Comma) {
                next();
                d.components.push_back(expr());
            }
            expect(Tok::RBrace, "'}' or ','");
            break;
        }
        }
        const Token& t = peek();
        if (t.kind != Tok::End && !(t.kind == Tok::Ident && is_decl_keyword(t.text)))
            error(t, "expected the end of the declaration");
        return d;
    }

    void context(SurfaceDecl& d) {
        while (peek().kind == Tok::LParen) {
            if (peek(1).kind == Tok::Ident && peek(2).kind == Tok::Colon) {
                next();
                Binder b;
                b.span = peek().span;
                b.name = name("a variable name");
                expect(Tok::Colon, "':'");
                b.type = type();
                expect(Tok::RParen, "')'");
                d.telescope.push_back(std::move(b));
            } else {
                if (d.ps || !d.telescope.empty()) error(peek(), "a pasting-scheme shorthand must be the whole context");
                d.ps = group();
            }
        }
    }

    PsGroup group() {
        expect(Tok::LParen, "'('");
        PsGroup g;
        g.names.push_back(name("a variable name"));
        while (peek().kind == Tok::LParen) {
            g.children.push_back(group());
            g.names.push_back(name("a variable name"));
        }
        expect(Tok::RParen, "')'");
        return g;
    }

    TyExprPtr type() {
        auto t = std::make_shared<TyExpr>();
        t->span = peek().span;
        if (peek().kind == Tok::Star) {
            next();
            t->kind = TyKind::Obj;
            return t;
        }
        if (at_ident("Inv")) {
            next();
            t->kind = TyKind::Inv;
            t->src = arg();
            return t;
        }
        t->kind = TyKind::Arr;
        t->src = expr();
        expect(Tok::Arrow, "'->'");
        t->tgt = expr();
        return t;
    }

    bool starts_arg() const {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::LParen:
        case Tok::Wild:
            return true;
        case Tok::Ident:
            return !is_decl_keyword(t.text) && t.text != "Inv";
        default:
            return false;
        }
    }

    ExprPtr expr() {
        const Token& t = peek();
        if (t.kind == Tok::Ident && !is_reserved(t.text)) {
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Name;
            e->span = t.span;
            e->name = next().text;
            while (starts_arg()) e->args.push_back(arg());
            return e;
        }
        return arg();
    }

    ExprPtr arg() {
        const Token& t = peek();
        auto e = std::make_shared<Expr>();
        e->span = t.span;
        if (t.kind == Tok::Wild) {
            next();
            e->kind = ExprKind::Wild;
            return e;
        }
        if (t.kind == Tok::LParen) {
            next();
            ExprPtr inner = expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (t.kind != Tok::Ident || is_decl_keyword(t.text) || t.text == "Inv") error(t, "expected a term");
        auto d = destructor_keywords().find(t.text);
        if (d != destructor_keywords().end()) {
            next();
            e->kind = ExprKind::Destr;
            e->destr = d->second;
            e->args.push_back(arg());
            return e;
        }
        if (t.text == "IHleft" || t.text == "IHright") {
            e->kind = ExprKind::IH;
            e->right = next().text == "IHright";
            return e;
        }
        if (t.text == "can") {
            next();
            e->kind = ExprKind::Can;
            expect(Tok::LParen, "'(' after can");
            e->subject = expr();
            expect(Tok::LBrace, "'{' before the can witnesses");
            if (peek().kind != Tok::RBrace) {
                e->witnesses.push_back(expr());
                while (peek().kind == Tok::Comma) {
                    next();
                    e->witnesses.push_back(expr());
                }
            }
            expect(Tok::RBrace, "'}' or ','");
            expect(Tok::RParen, "')' after the can witnesses");
            return e;
        }
        e->kind = ExprKind::Name;
        e->name = next().text;
        return e;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printing

bool atomic(const Expr& e) {
    return e.kind == ExprKind::Wild || e.kind == ExprKind::IH || e.kind == ExprKind::Can ||
           (e.kind == ExprKind::Name && e.args.empty());
}

std::string print_arg(const Expr& e) {
    std::string s = print(e);
    return atomic(e) ? s : "(" + s + ")";
}

std::string print_group(const PsGroup& g) {
    std::string s = "(" + g.names[0];
    for (std::size_t i = 0; i < g.children.size(); ++i) s += print_group(g.children[i]) + g.names[i + 1];
    return s + ")";
}

bool same_ptr(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return same(*a, *b);
}

bool same_ptr(const TyExprPtr& a, const TyExprPtr& b) {
    if (!a || !b) return !a && !b;
    return same(*a, *b);
}

bool same_group(const PsGroup& a, const PsGroup& b) {
    if (a.names != b.names || a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!same_group(a.children[i], b.children[i])) return false;
    return true;
}

bool same_list(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!same_ptr(a[i], b[i])) return false;
    return true;
}

} // namespace

std::vector<SurfaceDecl> parse(const std::string& text) { return Parser(lex(text)).file(); }

std::string_view keyword_name(DeclKeyword k) {
    switch (k) {
    case DeclKeyword::Coh: return "coh";
    case DeclKeyword::Let: return "let";
    case DeclKeyword::Inv: return "inv";
    case DeclKeyword::Rec: return "rec";
    }
    return "let";
}

std::string print(const Expr& e) {
    switch (e.kind) {
    case ExprKind::Wild: return "_";
    case ExprKind::IH: return e.right ? "IHright" : "IHleft";
    case ExprKind::Destr: return std::string(destructor_name(e.destr)) + " (" + print(*e.args[0]) + ")";
    case ExprKind::Can: {
        std::string s = "can (" + print(*e.subject) + " {";
        for (std::size_t i = 0; i < e.witnesses.size(); ++i) s += (i ? ", " : " ") + print(*e.witnesses[i]);
        return s + (e.witnesses.empty() ? "})" : " })");
    }
    case ExprKind::Name: {
        std::string s = e.name;
        for (const auto& a : e.args) s += " " + print_arg(*a);
        return s;
    }
    }
    return "_";
}

std::string print(const TyExpr& t) {
    switch (t.kind) {
    case TyKind::Obj: return "*";
    case TyKind::Inv: return "Inv (" + print(*t.src) + ")";
    case TyKind::Arr: return print(*t.src) + " -> " + print(*t.tgt);
    }
    return "*";
}

std::string print(const SurfaceDecl& d) {
    std::string s = std::string(keyword_name(d.keyword)) + " " + d.name;
    if (d.ps) s += " " + print_group(*d.ps);
    for (const auto& b : d.telescope) s += " (" + b.name + " : " + print(*b.type) + ")";
    if (d.type) s += "\n  : " + print(*d.type);
    if (d.body) s += "\n  = " + print(*d.body);
    if (!d.components.empty()) {
        s += "\n  = { ";
        for (std::size_t i = 0; i < d.components.size(); ++i) s += (i ? ",\n      " : "") + print(*d.components[i]);
        s += " }";
    }
    return s + "\n";
}

std::string print(const std::vector<SurfaceDecl>& decls) {
    std::string s;
    for (std::size_t i = 0; i < decls.size(); ++i) s += (i ? "\n" : "") + print(decls[i]);
    return s;
}

bool same(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case ExprKind::Wild: return true;
    case ExprKind::IH: return a.right == b.right;
    case ExprKind::Destr: return a.destr == b.destr && same_list(a.args, b.args);
    case ExprKind::Can: return same_ptr(a.subject, b.subject) && same_list(a.witnesses, b.witnesses);
    case ExprKind::Name: return a.name == b.name && same_list(a.args, b.args);
    }
    return false;
}

bool same(const TyExpr& a, const TyExpr& b) {
    return a.kind == b.kind && same_ptr(a.src, b.src) && same_ptr(a.tgt, b.tgt);
}

bool same(const SurfaceDecl& a, const SurfaceDecl& b) {
    if (a.keyword != b.keyword || a.name != b.name) return false;
    if (a.ps.has_value() != b.ps.has_value() || (a.ps && !same_group(*a.ps, *b.ps))) return false;
    if (a.telescope.size() != b.telescope.size()) return false;
    for (std::size_t i = 0; i < a.telescope.size(); ++i)
        if (a.telescope[i].name != b.telescope[i].name || !same_ptr(a.telescope[i].type, b.telescope[i].type))
            return false;
    return same_ptr(a.type, b.type) && same_ptr(a.body, b.body) && same_list(a.components, b.components);
}

} // namespace icatt
