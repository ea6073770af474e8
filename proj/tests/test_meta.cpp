#include <doctest.h>

#include "icatt/kernel.hpp"
#include "icatt/meta.hpp"
#include "icatt/normalize.hpp"
#include "icatt/printer.hpp"
#include "icatt/ps.hpp"
#include "support/support.hpp"

using namespace icatt;

TEST_CASE("disks and spheres") {
    CHECK(sphere(-1).size() == 0);
    CHECK(show(disk(1)) == "(d0- : *) (d0+ : *) (d1 : d0- -> d0+)");
    for (int n = 0; n < 4; ++n) {
        CHECK(equal_ctx(suspend(disk(n)), disk(n + 1)));
        CHECK(equal_ctx(suspend(sphere(n)), sphere(n + 1)));
        CHECK_NOTHROW(check_ctx(disk(n)));
    }
    Substitution incl = sphere_inclusion(1);
    CHECK(incl.size() == sphere(0).size());
    CHECK(equal_sub(incl, {var(0), var(1)}));
    CHECK_NOTHROW(Checker(disk(1)).check_sub(incl, sphere(0)));
}

TEST_CASE("walking equivalences") {
    CHECK(show(walking_equiv(1)) == "(d0- : *) (d0+ : *) (d1 : d0- -> d0+) (e1 : Inv (d1))");
    for (int m = 1; m < 4; ++m) {
        CHECK(equal_ctx(suspend(walking_equiv(m)), walking_equiv(m + 1)));
        CHECK(equal_sub(equiv_display(m), identity_sub(disk(m).size())));
        CHECK_NOTHROW(Checker(walking_equiv(m)).check_sub(equiv_display(m), disk(m)));
    }
}

TEST_CASE("suspension") {
    Term idx = coh(id_head(), {var(0)});
    Context x;
    x.push("x", obj());
    Type t = Checker(x).infer(idx);
    Context sx = suspend(x);
    Type st = Checker(sx).infer(suspend(idx));
    CHECK(equal(st, suspend(t)));
    CHECK(st->dim == t->dim + 1);
    CHECK(equal(suspend(obj()), arr(obj(), var(0), var(1))));
}

TEST_CASE("opposites") {
    CHECK(equal(opposite(1, obj()), obj()));
    Type a = arr(arr(obj(), var(0), var(1)), var(2), var(3));
    CHECK(equal(opposite(2, a), arr(arr(obj(), var(0), var(1)), var(3), var(2))));
    CHECK(equal(opposite(1, a), arr(arr(obj(), var(1), var(0)), var(2), var(3))));
    CHECK(equal(opposite(2, opposite(2, a)), a));
    CHECK_THROWS_AS(opposite(1, inv(arr(obj(), var(0), var(1)), var(2))), Error);
}

TEST_CASE("classifying substitutions") {
    CHECK(classify_type(obj()).empty());
    CHECK(equal_sub(classify_type(arr(obj(), var(4), var(5))), {var(4), var(5)}));
    Type b = arr(obj(), var(0), var(1));
    CHECK(equal_sub(classify_type(inv(b, var(2))), {var(0), var(1), var(2)}));
    CHECK(equal_sub(classify_term(var(0), obj()), {var(0)}));
    Substitution chi = classify_term(var(3), inv(b, var(2)));
    CHECK(equal(chi.back(), var(3)));

    // The witness classifier lands in the next walking equivalence.
    Context e = walking_equiv(1);
    Term w = destr(Destructor::LWit, var(3));
    Type wt = Checker(e).infer(w);
    Substitution cw = classify_term(w, wt);
    CHECK_NOTHROW(Checker(e).check_sub(cw, walking_equiv(2)));
}

TEST_CASE("induction contexts and instantiation") {
    Context e = walking_equiv(1);
    Context ind = equiv_ind_context(0, var(2), e.types[2]);
    CHECK(ind.size() == e.size() + 2);
    CHECK(show(ind.types[4], ind) == "Inv (lunit (e1))");
    CHECK(show(ind.types[5], ind) == "Inv (runit (e1))");
    CHECK_NOTHROW(check_ctx(ind));

    const auto& corpus = icatt::testing::corpus();
    const Decl* d = corpus.env.find("linv-inv");
    REQUIRE(d);
    const RecHead& h = *d->rec;
    CHECK_NOTHROW(check_ctx(icatt::testing::rec_component_context(h, kTILU)));

    Term r = d->body;
    Substitution inst = instantiation(h.n, r);
    for (std::size_t l = 0; l < e.size(); ++l) CHECK(equal(inst[l], var(static_cast<int>(l))));
    Checker c(e);
    Context ind_r = equiv_ind_context(h.n, h.comps[kT], c.infer(h.comps[kT]));
    CHECK_NOTHROW(c.check_sub(inst, ind_r));
    CHECK(convertible(c.infer(inst[ih_left(h.n)]), subst(ind_r.types[ih_left(h.n)], inst)));
}
