#include <doctest.h>

#include "icatt/kernel.hpp"
#include "icatt/meta.hpp"
#include "icatt/normalize.hpp"
#include "icatt/printer.hpp"
#include "icatt/ps.hpp"
#include "support/support.hpp"

using namespace icatt;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Usage;
}

Context globular_context() {
    Context c;
    c.push("x", obj());
    c.push("y", obj());
    c.push("f", arr(obj(), var(0), var(1)));
    c.push("g", arr(obj(), var(0), var(1)));
    c.push("a", arr(arr(obj(), var(0), var(1)), var(2), var(3)));
    c.push("h", arr(obj(), var(0), var(0)));
    return c;
}

} // namespace

TEST_CASE("contexts") {
    CHECK_NOTHROW(check_ctx(Context{}));
    CHECK_NOTHROW(check_ctx(globular_context()));
    Context dup;
    dup.push("x", obj());
    dup.push("x", obj());
    CHECK(kind_of([&] { check_ctx(dup); }) == ErrorKind::Duplicate);
}

TEST_CASE("types") {
    Context d1 = disk(1);
    Checker c(d1);
    CHECK_NOTHROW(c.check_type(obj()));
    CHECK_THROWS_AS(c.check_type(arr(obj(), var(0), var(2))), Error);
    CHECK_NOTHROW(c.check_type(inv(d1.types[2], var(2))));
    CHECK_THROWS_AS(c.check_type(inv(obj(), var(0))), Error);
}

TEST_CASE("inference") {
    Context two = build_ps(linear_shape(2)).body;
    Term fg = make_comp({var(2), var(4)}, {two.types[2], two.types[4]});
    CHECK(equal(Checker(two).infer(fg), arr(obj(), var(0), var(3))));

    Context e = walking_equiv(1);
    Type lu = Checker(e).infer(destr(Destructor::LUnit, var(3)));
    CHECK(show(lu, e) == "comp (linv (e1)) d1 -> id d0+");
    Type ru = Checker(e).infer(destr(Destructor::RUnit, var(3)));
    CHECK(show(ru, e) == "comp d1 (rinv (e1)) -> id d0-");

    auto bad = make_coh_head(globular_context(), arr(obj(), var(0), var(0)), "bad");
    CHECK(kind_of([&] { validate_coh_head(bad); }) == ErrorKind::NotPs);
    CHECK(kind_of([&] { Checker(e).infer(destr(Destructor::LInv, var(2))); }) == ErrorKind::TypeMismatch);
}

TEST_CASE("substitutions") {
    CHECK_NOTHROW(Checker(Context{}).check_sub({}, Context{}));
    Context e = walking_equiv(1);
    Context s0 = sphere(0);
    CHECK_NOTHROW(Checker(e).check_sub({var(0), var(1)}, s0));
    Context two = build_ps(linear_shape(2)).body;
    Substitution swapped{var(0), var(1), var(3), var(2), var(4)};
    CHECK_THROWS_AS(Checker(two).check_sub(swapped, two), Error);
}

TEST_CASE("declarations") {
    const auto& corpus = icatt::testing::corpus();
    CHECK(corpus.env.find("compinv"));
    Environment env = corpus.env;
    Decl again = *corpus.env.find("unitl");
    CHECK(kind_of([&] { check_decl(env, again); }) == ErrorKind::Duplicate);
}

TEST_CASE("conversion") {
    Context x;
    x.push("x", obj());
    Term idx = coh(id_head(), {var(0)});
    CHECK(convertible(idx, idx));
    Type xx = arr(obj(), var(0), var(0));
    CHECK_FALSE(convertible(idx, make_comp({idx, idx}, {xx, xx})));

    icatt::testing::RandomTerms gen(11);
    auto w = gen.invertible();
    Term k = icatt::testing::eta_components(w);
    CHECK(convertible(destr(Destructor::LInv, k), destr(Destructor::LInv, w.witness)));
}

TEST_CASE("every corpus coherence is full and every can has its exact witness domain") {
    for (const auto& e : icatt::testing::corpus().decls) {
        if (e.decl.kind == DeclKind::Coh) {
            const PsContext& ps = validate_coh_head(e.decl.coh);
            CHECK(full_type(ps, e.decl.type));
        }
        for (const auto& loc : icatt::testing::can_occurrences(e.decl)) {
            const Term& s = loc.term->args[0];
            CHECK(loc.term->keys == can_index(*s->coh));
            int top = s->coh->type->dim + 1;
            for (int l : loc.term->keys) CHECK(s->coh->ps.types[l]->dim + 1 == top);
        }
    }
}

TEST_CASE("substitution preserves typing on random terms") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        icatt::testing::RandomTerms gen(seed);
        const Context& c = gen.context();
        Term t = gen.categorical();
        Type a = Checker(c).infer(t);
        Context s = suspend(c);
        CHECK(convertible(Checker(s).infer(suspend(t)), suspend(a)));
    }
}
