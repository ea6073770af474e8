#include <doctest.h>

#include <algorithm>
#include <random>

#include "icatt/kernel.hpp"
#include "icatt/meta.hpp"
#include "icatt/ps.hpp"
#include "support/support.hpp"

using namespace icatt;
using icatt::testing::ps_by_rules;

namespace {

bool accepts(const Context& c) {
    try {
        check_ps(c);
        return true;
    } catch (const Error&) {
        return false;
    }
}

Context pasting_example() {
    // (x : *) (y : *) (f : x -> y) (g : x -> y) (a : f -> g) (z : *) (h : y -> z)
    Context c;
    c.push("x", obj());
    c.push("y", obj());
    c.push("f", arr(obj(), var(0), var(1)));
    c.push("g", arr(obj(), var(0), var(1)));
    c.push("a", arr(arr(obj(), var(0), var(1)), var(2), var(3)));
    c.push("z", obj());
    c.push("h", arr(obj(), var(1), var(5)));
    return c;
}

std::vector<std::string> positive_names(const PsContext& ps, const std::vector<int>& levels) {
    std::vector<std::string> out;
    for (int l : levels)
        if (ps.var_dim(l) > 0) out.push_back(ps.body.names[l]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("pasting scheme recognition examples") {
    PsContext ps = check_ps(pasting_example());
    CHECK(positive_names(ps, ps.sources) == std::vector<std::string>{"a", "f", "h"});
    CHECK(positive_names(ps, ps.targets) == std::vector<std::string>{"a", "g", "h"});
    CHECK(ps.dim == 2);

    Context point;
    point.push("x", obj());
    CHECK(accepts(point));

    Context globular = pasting_example();
    globular.names.resize(5);
    globular.types.resize(5);
    globular.push("h", arr(obj(), var(0), var(0)));
    CHECK_FALSE(accepts(globular));
    CHECK_THROWS_AS(check_ps(globular), Error);
}

TEST_CASE("stack simulation agrees with the derivation rules on all small contexts") {
    auto contexts = icatt::testing::all_contexts(6, 2);
    int ps_count = 0;
    for (const auto& c : contexts) {
        bool rules = ps_by_rules(c);
        CHECK(accepts(c) == rules);
        ps_count += rules;
    }
    CHECK(ps_count == 4);  // (x), (x y f), (x y f z g), (x y f g a)
}

TEST_CASE("stack simulation agrees with the derivation rules on random contexts of up to 8 entries") {
    std::mt19937_64 rng(42);
    int ps_count = 0;
    for (int i = 0; i < 3000; ++i) {
        Context c = icatt::testing::random_context(rng, 1 + static_cast<int>(rng() % 8), 3);
        bool rules = ps_by_rules(c);
        CHECK(accepts(c) == rules);
        ps_count += rules;
    }
    CHECK(ps_count > 100);
}

TEST_CASE("fullness") {
    PsContext two = build_ps(linear_shape(2));  // x f y g z
    CHECK(full_type(two, arr(obj(), var(0), var(3))));
    PsContext point = build_ps(linear_shape(0));
    CHECK(full_type(point, arr(obj(), var(0), var(0))));
    std::string why;
    CHECK_FALSE(full_type(two, arr(obj(), var(0), var(1)), &why));
    CHECK(why.find("x3") != std::string::npos);
}

TEST_CASE("suspension preserves ps-ness and fullness") {
    PsContext two = build_ps(linear_shape(2));
    Type t = arr(obj(), var(0), var(3));
    PsContext s = check_ps(suspend(two.body));
    CHECK(full_type(s, suspend(t)));
    CHECK(s.dim == 2);
}

TEST_CASE("explicit arguments are the locally maximal variables") {
    PsContext whisk = build_ps(Shape{{Shape{}, Shape{{Shape{}}}}});  // x f y g a h z
    auto mask = explicit_mask(whisk.body);
    std::vector<int> levels;
    for (std::size_t l = 0; l < mask.size(); ++l)
        if (mask[l]) levels.push_back(static_cast<int>(l));
    REQUIRE(levels.size() == 2);
    CHECK(whisk.var_dim(levels[0]) == 1);
    CHECK(whisk.var_dim(levels[1]) == 2);
}

TEST_CASE("opposite pasting schemes") {
    PsContext two = build_ps(linear_shape(2));
    OppositePs op = opposite_ps(1, two);
    CHECK(op.ps.body.size() == two.body.size());
    // The first arrow of the opposite is the last arrow of the original.
    CHECK(op.iso[2] == 4);
    CHECK(op.iso[4] == 2);
    OppositePs back = opposite_ps(1, op.ps);
    for (std::size_t l = 0; l < two.body.size(); ++l) CHECK(op.iso[back.iso[l]] == static_cast<int>(l));
}
