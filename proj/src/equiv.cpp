#include "icatt/equiv.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "icatt/kernel.hpp"
#include "icatt/meta.hpp"
#include "icatt/normalize.hpp"
#include "icatt/printer.hpp"

namespace icatt {

namespace {

constexpr int kCell = 2;   // d1 in walking_equiv(1)
constexpr int kEquiv = 3;  // e1 in walking_equiv(1)

// Invertibility neutrals over the cell of dimension k: iterated witness chains.
std::vector<Term> inv_neutrals(int k) {
    std::vector<Term> out{var(kEquiv)};
    for (int i = 1; i < k; ++i) {
        std::vector<Term> next;
        for (const auto& e : out) {
            next.push_back(destr(Destructor::LWit, e));
            next.push_back(destr(Destructor::RWit, e));
        }
        out = std::move(next);
    }
    return out;
}

} // namespace

std::vector<Term> enumerate_neutrals(int n) {
    if (n < 0) fail(ErrorKind::Bound, "neutral dimension must be non-negative");
    if (n == 0) return {var(0), var(1)};
    std::vector<Term> out;
    if (n == 1) out.push_back(var(kCell));
    for (const auto& e : inv_neutrals(n)) {
        out.push_back(destr(Destructor::LInv, e));
        out.push_back(destr(Destructor::RInv, e));
    }
    if (n >= 2) {
        for (const auto& e : inv_neutrals(n - 1)) {
            out.push_back(destr(Destructor::LUnit, e));
            out.push_back(destr(Destructor::RUnit, e));
        }
    }
    return out;
}

long long neutral_count_formula(int n) {
    if (n == 0) return 2;
    if (n == 1) return 3;
    return 3LL << (n - 1);
}

Pullback pullback_along_display(const Context& delta, const Substitution& f, const Context& gamma_ext,
                                std::size_t gamma_size, const std::string& suffix) {
    if (f.size() != gamma_size || gamma_size > gamma_ext.size())
        fail(ErrorKind::IllFormed, "pullback: the substitution does not match the base of the display map");
    Pullback p;
    p.ctx = delta;
    p.to_delta = identity_sub(delta.size());
    p.to_ext = f;
    for (std::size_t j = gamma_size; j < gamma_ext.size(); ++j) {
        Type t = subst(gamma_ext.types[j], p.to_ext);
        int level = static_cast<int>(p.ctx.size());
        p.ctx.push(gamma_ext.names[j] + suffix, t);
        p.to_ext.push_back(var(level));
    }
    return p;
}

namespace {

// The truncations are built once per thread and shared by all queries.
const std::vector<Truncation>& truncations(int n) {
    thread_local std::vector<Truncation> tower;
    if (tower.empty()) {
        Truncation t0;
        t0.ctx.push("x", obj());
        t0.ctx.push("y", obj());
        tower.push_back(t0);

        Truncation t1;
        t1.n = 1;
        t1.ctx = t0.ctx;
        Term x = var(0), y = var(1);
        t1.ctx.push("u", arr(obj(), x, y));
        t1.ctx.push("v", arr(obj(), y, x));
        t1.ctx.push("w", arr(obj(), y, x));
        Term u = var(2), v = var(3), w = var(4);
        Type xy = arr(obj(), x, y), yx = arr(obj(), y, x);
        t1.i = {x, y};
        t1.f = {y, y, make_comp({v, u}, {yx, xy}), make_id(obj(), y)};
        t1.g = {x, x, make_comp({u, w}, {xy, yx}), make_id(obj(), x)};
        tower.push_back(t1);
    }
    while (static_cast<int>(tower.size()) <= n) {
        const Truncation& prev = tower.back();
        const Truncation& before = tower[tower.size() - 2];
        Context sprev = suspend(prev.ctx);
        std::size_t base = suspend(before.ctx).size();
        Pullback left = pullback_along_display(prev.ctx, prev.f, sprev, base, "_v");
        Substitution g_left = compose(prev.g, left.to_delta);
        Pullback right = pullback_along_display(left.ctx, g_left, sprev, base, "_w");
        Truncation next;
        next.n = prev.n + 1;
        next.ctx = right.ctx;
        next.i = identity_sub(prev.ctx.size());
        next.f = compose(left.to_ext, right.to_delta);
        next.g = right.to_ext;
        tower.push_back(std::move(next));
    }
    return tower;
}

} // namespace

Truncation equiv_truncation(int n, int bound) {
    if (n < 0) fail(ErrorKind::Bound, "truncation level must be non-negative");
    if (n > bound)
        fail(ErrorKind::Bound, "truncation level " + std::to_string(n) + " exceeds the configured bound " +
                                   std::to_string(bound));
    return truncations(n)[n];
}

std::string telescope_text(const Context& c) { return show(c); }

namespace {

Substitution witness_classifier(Destructor d) {
    Context e = walking_equiv(1);
    Term cell = destr(d, var(kEquiv));
    return classify_term(cell, destructor_type(d, var(kEquiv), e.types[kEquiv]));
}

bool convertible_sub(const Substitution& a, const Substitution& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!convertible(a[i], b[i])) return false;
    return true;
}

} // namespace

GammaReport check_gamma(int n, int bound) {
    GammaReport r;
    r.n = n;
    const Context e1 = walking_equiv(1);
    const Truncation& tn = equiv_truncation(n, bound);
    const auto& tower = truncations(n);

    std::vector<Substitution> gammas;
    gammas.push_back({var(0), var(1)});
    if (n >= 1) {
        Substitution g1 = gammas[0];
        g1.push_back(var(kCell));
        g1.push_back(destr(Destructor::LInv, var(kEquiv)));
        g1.push_back(destr(Destructor::RInv, var(kEquiv)));
        gammas.push_back(g1);
    }
    const Substitution chi_l = witness_classifier(Destructor::LWit);
    const Substitution chi_r = witness_classifier(Destructor::RWit);
    for (int k = 2; k <= n; ++k) {
        const Substitution& prev = gammas[k - 1];
        Substitution sprev = suspend(prev);
        std::size_t base = suspend(tower[k - 2].ctx).size();
        Substitution next = prev;
        for (const Substitution* chi : {&chi_l, &chi_r})
            for (std::size_t j = base; j < sprev.size(); ++j) next.push_back(nf(e1, subst(sprev[j], *chi)));
        gammas.push_back(std::move(next));
    }
    r.gamma = gammas[n];

    try {
        Checker(e1).check_sub(r.gamma, tn.ctx);
        r.well_typed = true;
    } catch (const Error& err) {
        r.problems.push_back(std::string("gamma does not type-check: ") + err.what());
    }

    std::map<std::string, std::string> image;
    std::vector<std::string> expected;
    for (int k = 0; k <= n; ++k)
        for (const auto& t : enumerate_neutrals(k)) expected.push_back(show(t, e1));
    std::sort(expected.begin(), expected.end());
    std::vector<std::string> got;
    for (std::size_t j = 0; j < r.gamma.size(); ++j) {
        std::string s = show(nf(e1, r.gamma[j]), e1);
        r.mappings.push_back(tn.ctx.names[j] + " -> " + s);
        got.push_back(s);
    }
    std::sort(got.begin(), got.end());
    auto dup = std::adjacent_find(got.begin(), got.end());
    if (dup != got.end()) r.problems.push_back("two variables map to " + *dup);
    std::vector<std::string> missing, extra;
    std::set_difference(expected.begin(), expected.end(), got.begin(), got.end(), std::back_inserter(missing));
    std::set_difference(got.begin(), got.end(), expected.begin(), expected.end(), std::back_inserter(extra));
    for (const auto& m : missing) r.problems.push_back("no variable maps to the neutral " + m);
    for (const auto& m : extra) r.problems.push_back("variable image " + m + " is not a neutral of dimension <= n");
    r.bijective = dup == got.end() && missing.empty() && extra.empty();

    if (n == 0) {
        r.restricts = r.left_compatible = r.right_compatible = true;
    } else {
        r.restricts = convertible_sub(compose(tn.i, r.gamma), gammas[n - 1]);
        Substitution sprev = suspend(gammas[n - 1]);
        r.left_compatible = convertible_sub(compose(tn.f, r.gamma), compose(sprev, chi_l));
        r.right_compatible = convertible_sub(compose(tn.g, r.gamma), compose(sprev, chi_r));
        if (!r.restricts) r.problems.push_back("i . gamma differs from the previous gamma");
        if (!r.left_compatible) r.problems.push_back("f . gamma differs from (suspended gamma) . chi(LWit e1)");
        if (!r.right_compatible) r.problems.push_back("g . gamma differs from (suspended gamma) . chi(RWit e1)");
    }
    r.ok = r.well_typed && r.bijective && r.restricts && r.left_compatible && r.right_compatible;
    return r;
}

std::string format_report(const GammaReport& r) {
    std::ostringstream os;
    os << "gamma^" << r.n << ": " << (r.ok ? "ok" : "FAILED") << "\n";
    for (const auto& m : r.mappings) os << "  " << m << "\n";
    os << "  well-typed: " << (r.well_typed ? "yes" : "no") << "\n";
    os << "  bijective onto neutrals of dimension <= " << r.n << ": " << (r.bijective ? "yes" : "no") << "\n";
    os << "  i . gamma = previous gamma: " << (r.restricts ? "yes" : "no") << "\n";
    os << "  f . gamma = suspended gamma . chi(LWit e1): " << (r.left_compatible ? "yes" : "no") << "\n";
    os << "  g . gamma = suspended gamma . chi(RWit e1): " << (r.right_compatible ? "yes" : "no") << "\n";
    for (const auto& p : r.problems) os << "  problem: " << p << "\n";
    return os.str();
}

} // namespace icatt
