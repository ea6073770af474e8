#include <doctest.h>

#include "icatt/error.hpp"
#include "icatt/parser.hpp"
#include "icatt/surface.hpp"
#include "support/support.hpp"

using namespace icatt;

namespace {

Error syntax_error(const std::string& text) {
    try {
        parse(text);
    } catch (const Error& e) {
        return e;
    }
    FAIL("parse succeeded");
    return Error(ErrorKind::Usage, "");
}

} // namespace

TEST_CASE("empty input and comments") {
    CHECK(parse("").empty());
    CHECK(parse("   \n\n").empty());
    CHECK(parse("### a comment\n# another\n").empty());
}

TEST_CASE("coherence declarations with a pasting scheme") {
    auto ds = parse("coh whiskl (x(f)y(g(a)h)z) : comp f g -> comp f h");
    REQUIRE(ds.size() == 1);
    const auto& d = ds[0];
    CHECK(d.keyword == DeclKeyword::Coh);
    CHECK(d.name == "whiskl");
    REQUIRE(d.ps);
    CHECK(d.ps->names == std::vector<std::string>{"x", "y", "z"});
    REQUIRE(d.ps->children.size() == 2);
    CHECK(d.ps->children[0].names == std::vector<std::string>{"f"});
    CHECK(d.ps->children[1].names == std::vector<std::string>{"g", "h"});
    CHECK(d.ps->children[1].children[0].names == std::vector<std::string>{"a"});
    REQUIRE(d.type);
    CHECK(d.type->kind == TyKind::Arr);
    CHECK(d.type->src->kind == ExprKind::Name);
    CHECK(d.type->src->name == "comp");
    CHECK(d.type->src->args.size() == 2);
}

TEST_CASE("let declarations with telescopes, can and destructors") {
    auto ds = parse(
        "let compinv (x : *) (y : *) (z : *) (f : x -> y) (g : y -> z)\n"
        "  (e : Inv (f)) (e' : Inv (g)) : Inv (comp f g) = can ( comp f g { e , e' })\n"
        "let l (x : *) (y : *) (f : x -> y) (e : Inv(f)) = linv (e)\n");
    REQUIRE(ds.size() == 2);
    CHECK(ds[0].telescope.size() == 7);
    CHECK(ds[0].telescope[6].name == "e'");
    CHECK(ds[0].type->kind == TyKind::Inv);
    CHECK(ds[0].body->kind == ExprKind::Can);
    CHECK(ds[0].body->witnesses.size() == 2);
    CHECK(!ds[1].type);
    CHECK(ds[1].body->kind == ExprKind::Destr);
    CHECK(ds[1].body->destr == Destructor::LInv);
}

TEST_CASE("inv and rec declarations, wildcards and induction hypotheses") {
    auto ds = parse(
        "rec r (x : *) (y : *) (f : x -> y) (e : Inv(f))\n"
        "= { linv(e), f, f, _, lunit (e), can (_ { IHright }), IHleft }\n");
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].keyword == DeclKeyword::Rec);
    REQUIRE(ds[0].components.size() == 7);
    CHECK(ds[0].components[3]->kind == ExprKind::Wild);
    const auto& c = *ds[0].components[5];
    CHECK(c.kind == ExprKind::Can);
    CHECK(c.subject->kind == ExprKind::Wild);
    CHECK(c.witnesses[0]->kind == ExprKind::IH);
    CHECK(c.witnesses[0]->right);
    CHECK(ds[0].components[6]->kind == ExprKind::IH);
    CHECK_FALSE(ds[0].components[6]->right);
}

TEST_CASE("syntax errors are located") {
    Error e = syntax_error("coh unitl (x(f)y) : comp (id _) f -> f\nlet bad (x : *) = ) x\n");
    CHECK(e.kind() == ErrorKind::Syntax);
    CHECK(e.located());
    CHECK(e.line() == 2);

    Error missing = syntax_error("let id2 (x : * = id x\n");
    CHECK(missing.line() == 1);
    CHECK(missing.column() > 10);

    CHECK(syntax_error("coh (x) : x -> x").kind() == ErrorKind::Syntax);
    CHECK(syntax_error("frobnicate x").kind() == ErrorKind::Syntax);
}

TEST_CASE("printing and reparsing the corpus is the identity") {
    std::string text = icatt::testing::read_text(icatt::testing::source_path("proofs/invertibility.catt"));
    auto first = parse(text);
    CHECK(first.size() >= 25);
    auto second = parse(print(first));
    REQUIRE(second.size() == first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CAPTURE(first[i].name);
        CHECK(same(first[i], second[i]));
    }
    CHECK(print(second) == print(first));
}
