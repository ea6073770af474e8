#include <doctest.h>

#include "icatt/inverse.hpp"
#include "icatt/kernel.hpp"
#include "icatt/meta.hpp"
#include "icatt/normalize.hpp"
#include "icatt/printer.hpp"
#include "support/support.hpp"

using namespace icatt;

namespace {

const std::array<Destructor, 6> kAll{Destructor::LInv, Destructor::RInv, Destructor::LUnit,
                                     Destructor::RUnit, Destructor::LWit, Destructor::RWit};

Term coind_of(const Term& e) {
    return coind({var(2), destr(Destructor::LInv, e), destr(Destructor::RInv, e), destr(Destructor::LUnit, e),
                  destr(Destructor::RUnit, e), destr(Destructor::LWit, e), destr(Destructor::RWit, e)});
}

} // namespace

TEST_CASE("destructors project out of coinductive structures") {
    Term e = var(3);
    Term k = coind_of(e);
    for (Destructor d : kAll) CHECK(equal(beta_reduce(destr(d, k)), destr(d, e)));
    CHECK(equal(beta_reduce(var(3)), var(3)));
}

TEST_CASE("destructors compute on can terms") {
    icatt::testing::RandomTerms gen(3);
    for (int i = 0; i < 20; ++i) {
        auto w = gen.invertible();
        if (w.witness->kind != TermKind::Can) continue;
        for (Destructor d : kAll)
            CHECK(equal(beta_reduce(destr(d, w.witness)), beta_reduce(canonical_component(w.witness, d))));
    }
}

TEST_CASE("destructors compute on rec") {
    const Decl* d = icatt::testing::corpus().env.find("linv-inv");
    REQUIRE(d);
    Term r = d->body;
    const RecHead& h = *r->rec;
    Term l = beta_reduce(destr(Destructor::LInv, r));
    CHECK(equal(l, beta_reduce(subst(h.comps[kTL], r->args))));
    Term lw = beta_reduce(destr(Destructor::LWit, r));
    Substitution inst = compose(instantiation(h.n, r), r->args);
    CHECK(equal(lw, beta_reduce(subst(h.comps[kTILU], inst))));
}

TEST_CASE("normal forms") {
    Context e = walking_equiv(1);
    Term le = destr(Destructor::LInv, var(3));
    CHECK(equal(nf(e, le), le));
    CHECK_FALSE(erase_check(e, le));
    CHECK(erase_check(e, Term(var(2))));

    Term ex = nf(e, Term(var(3)));
    REQUIRE(ex->kind == TermKind::Coind);
    CHECK(equal(ex->args[0], var(2)));
    CHECK(equal(nf(e, ex), ex));

    icatt::testing::RandomTerms gen(9);
    for (int i = 0; i < 40; ++i) {
        Term t = gen.categorical();
        Term n = nf(gen.context(), t);
        CHECK(equal(nf(gen.context(), n), n));
        CHECK(convertible(n, t));
    }
}

TEST_CASE("eta expansion") {
    Context e = walking_equiv(1);
    Term k = eta_expand(var(3), e.types[3]);
    CHECK(equal(k, coind_of(var(3))));
    CHECK(convertible(Checker(e).infer(k), e.types[3]));
}

TEST_CASE("one step reducts") {
    CHECK(one_step_reducts(var(0)).empty());
    Term k = coind_of(var(3));
    auto r = one_step_reducts(destr(Destructor::LInv, k));
    REQUIRE(r.size() == 1);
    CHECK(equal(r[0], destr(Destructor::LInv, var(3))));
    auto nested = one_step_reducts(destr(Destructor::RInv, destr(Destructor::LWit, k)));
    CHECK(nested.size() == 1);
}

TEST_CASE("convertibility is not full equality of cells") {
    Context e = walking_equiv(1);
    CHECK_FALSE(convertible(destr(Destructor::LInv, var(3)), destr(Destructor::RInv, var(3))));
    CHECK(convertible(destr(Destructor::LInv, coind_of(var(3))), destr(Destructor::LInv, var(3))));
}
