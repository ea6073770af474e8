#include "icatt/meta.hpp"

#include <map>
#include <set>
#include <unordered_map>

#include "icatt/ps.hpp"

namespace icatt {

// ---------------------------------------------------------------------------
// Suspension

namespace {

struct Suspender {
    std::unordered_map<const TermNode*, Term> memo;

    std::vector<Term> sub(const std::vector<Term>& s) {
        std::vector<Term> out;
        out.reserve(s.size() + 2);
        out.push_back(var(0));
        out.push_back(var(1));
        for (const auto& t : s) out.push_back(term(t));
        return out;
    }

    std::vector<Term> each(const std::vector<Term>& s, std::size_t from = 0) {
        std::vector<Term> out;
        for (std::size_t i = from; i < s.size(); ++i) out.push_back(term(s[i]));
        return out;
    }

    Term term(const Term& t) {
        if (t->kind == TermKind::Var) return var(t->index + 2);
        if (t->kind == TermKind::Meta) fail(ErrorKind::IllFormed, "cannot suspend an unsolved metavariable");
        auto it = memo.find(t.get());
        if (it != memo.end()) return it->second;
        Term r;
        switch (t->kind) {
        case TermKind::Coh: r = coh(suspend(t->coh), sub(t->args)); break;
        case TermKind::Rec: r = rec(suspend(t->rec), sub(t->args)); break;
        case TermKind::Coind: {
            std::array<Term, 7> c;
            for (int i = 0; i < 7; ++i) c[i] = term(t->args[i]);
            r = coind(std::move(c));
            break;
        }
        case TermKind::Can: {
            std::vector<int> keys;
            for (int k : t->keys) keys.push_back(k + 2);
            r = can(term(t->args[0]), std::move(keys), each(t->args, 1));
            break;
        }
        case TermKind::Destr: r = destr(t->destr, term(t->args[0])); break;
        default: break;
        }
        memo.emplace(t.get(), r);
        return r;
    }

    Type type(const Type& a) {
        switch (a->kind) {
        case TypeKind::Obj: return arr(obj(), var(0), var(1));
        case TypeKind::Arr: return arr(type(a->base), term(a->src), term(a->tgt));
        case TypeKind::Inv: return inv(type(a->base), term(a->src));
        }
        return a;
    }
};

std::string fresh_base(const Context& c, char sign) {
    std::set<std::string> names(c.names.begin(), c.names.end());
    for (int i = 0;; ++i) {
        std::string n = "v" + std::to_string(i) + sign;
        if (!names.count(n)) return n;
    }
}

} // namespace

Term suspend(const Term& t) { return Suspender{}.term(t); }
Type suspend(const Type& a) { return Suspender{}.type(a); }

Context suspend(const Context& c) {
    Context out;
    out.push(fresh_base(c, '-'), obj());
    out.push(fresh_base(c, '+'), obj());
    Suspender s;
    for (std::size_t i = 0; i < c.size(); ++i) out.push(c.names[i], s.type(c.types[i]));
    return out;
}

Substitution suspend(const Substitution& s) { return Suspender{}.sub(s); }

CohHeadPtr suspend(const CohHeadPtr& h) {
    thread_local std::unordered_map<const CohHead*, std::pair<CohHeadPtr, CohHeadPtr>> cache;
    auto it = cache.find(h.get());
    if (it != cache.end()) return it->second.second;
    auto r = make_coh_head(suspend(h->ps), suspend(h->type), h->label);
    cache.emplace(h.get(), std::make_pair(h, r));
    return r;
}

RecHeadPtr suspend(const RecHeadPtr& h) {
    thread_local std::unordered_map<const RecHead*, std::pair<RecHeadPtr, RecHeadPtr>> cache;
    auto it = cache.find(h.get());
    if (it != cache.end()) return it->second.second;
    Suspender s;
    std::array<Term, 7> c;
    for (int i = 0; i < 7; ++i) c[i] = s.term(h->comps[i]);
    auto r = make_rec_head(h->n + 1, std::move(c), h->label);
    cache.emplace(h.get(), std::make_pair(h, r));
    return r;
}

Term suspend_n(const Term& t, int k) {
    Term r = t;
    for (int i = 0; i < k; ++i) r = suspend(r);
    return r;
}
Type suspend_n(const Type& a, int k) {
    Type r = a;
    for (int i = 0; i < k; ++i) r = suspend(r);
    return r;
}
Context suspend_n(const Context& c, int k) {
    Context r = c;
    for (int i = 0; i < k; ++i) r = suspend(r);
    return r;
}
CohHeadPtr suspend_n(const CohHeadPtr& h, int k) {
    CohHeadPtr r = h;
    for (int i = 0; i < k; ++i) r = suspend(r);
    return r;
}

// ---------------------------------------------------------------------------
// Opposites

namespace {

const PsContext& ps_of(const CohHeadPtr& h) {
    thread_local std::unordered_map<const CohHead*, std::pair<CohHeadPtr, PsContext>> cache;
    auto it = cache.find(h.get());
    if (it == cache.end()) it = cache.emplace(h.get(), std::make_pair(h, check_ps(h->ps))).first;
    return it->second.second;
}

} // namespace

Type opposite(int n, const Type& a) {
    switch (a->kind) {
    case TypeKind::Obj: return a;
    case TypeKind::Arr: {
        Type b = opposite(n, a->base);
        Term s = opposite(n, a->src), t = opposite(n, a->tgt);
        if (a->base->dim + 2 == n) return arr(b, t, s);
        return arr(b, s, t);
    }
    case TypeKind::Inv: break;
    }
    fail(ErrorKind::OpUnsupported, "opposite is not defined on invertibility types");
}

Term opposite(int n, const Term& t) {
    switch (t->kind) {
    case TermKind::Var: return t;
    case TermKind::Coh: {
        const PsContext& ps = ps_of(t->coh);
        OppositePs op = opposite_ps(n, ps);
        Substitution rename(ps.body.size());
        for (std::size_t l = 0; l < op.iso.size(); ++l) rename[op.iso[l]] = var(static_cast<int>(l));
        Type ty = subst(opposite(n, t->coh->type), rename);
        auto head = make_coh_head(op.ps.body, ty, t->coh->label);
        Substitution sub;
        for (std::size_t l = 0; l < op.iso.size(); ++l) sub.push_back(opposite(n, t->args[op.iso[l]]));
        return coh(head, std::move(sub));
    }
    default: break;
    }
    fail(ErrorKind::OpUnsupported, "opposite is not defined on invertibility syntax");
}

// ---------------------------------------------------------------------------
// Distinguished contexts

Context sphere(int n) {
    Context c;
    Type prev = obj();
    for (int i = 0; i <= n; ++i) {
        int lo = static_cast<int>(c.size());
        c.push("d" + std::to_string(i) + "-", prev);
        c.push("d" + std::to_string(i) + "+", prev);
        prev = arr(prev, var(lo), var(lo + 1));
    }
    return c;
}

Context disk(int n) {
    Context c = sphere(n - 1);
    Type top = n == 0 ? obj() : arr(c.types[2 * n - 1], var(2 * n - 2), var(2 * n - 1));
    c.push("d" + std::to_string(n), top);
    return c;
}

Substitution sphere_inclusion(int n) { return identity_sub(2 * static_cast<std::size_t>(n)); }

Context walking_equiv(int m) {
    Context c = disk(m);
    c.push("e" + std::to_string(m), inv(c.types[disk_top(m)], var(disk_top(m))));
    return c;
}

Substitution equiv_display(int m) { return identity_sub(2 * static_cast<std::size_t>(m) + 1); }

Substitution classify_type(const Type& a) {
    switch (a->kind) {
    case TypeKind::Obj: return {};
    case TypeKind::Arr: {
        Substitution s = classify_type(a->base);
        s.push_back(a->src);
        s.push_back(a->tgt);
        return s;
    }
    case TypeKind::Inv: {
        Substitution s = classify_type(a->base);
        s.push_back(a->src);
        return s;
    }
    }
    return {};
}

Substitution classify_term(const Term& t, const Type& a) {
    Substitution s = classify_type(a);
    s.push_back(t);
    return s;
}

namespace {

Substitution classify_witness(int m, Destructor d) {
    Context e = walking_equiv(m);
    Term cell = var(equiv_cell(m));
    Term w = destr(d, cell);
    return classify_term(w, destructor_type(d, cell, e.types[equiv_cell(m)]));
}

} // namespace

Context equiv_ind_context(int n, const Term& t, const Type& t_type) {
    Context c = walking_equiv(n + 1);
    Type base = suspend(inv(t_type, t));
    c.push("h-", subst(base, classify_witness(n + 1, Destructor::LWit)));
    c.push("h+", subst(base, classify_witness(n + 1, Destructor::RWit)));
    return c;
}

Substitution instantiation(int n, const Term& r) {
    Substitution s = identity_sub(2 * static_cast<std::size_t>(n + 1) + 2);
    Term sr = suspend(r);
    s.push_back(subst(sr, classify_witness(n + 1, Destructor::LWit)));
    s.push_back(subst(sr, classify_witness(n + 1, Destructor::RWit)));
    return s;
}

// ---------------------------------------------------------------------------
// Built-in coherences and the destructor table

CohHeadPtr id_head() {
    thread_local CohHeadPtr h = [] {
        Context c;
        c.push("x", obj());
        return make_coh_head(c, arr(obj(), var(0), var(0)), "id");
    }();
    return h;
}

CohHeadPtr comp_head(int arity) {
    thread_local std::map<int, CohHeadPtr> cache;
    auto it = cache.find(arity);
    if (it != cache.end()) return it->second;
    PsContext ps = build_ps(linear_shape(arity), [](int level, int depth) {
        if (depth == 0) return "x" + std::to_string(level == 0 ? 0 : (level + 1) / 2);
        return "f" + std::to_string(level / 2);
    });
    int last = ps.nodes[0].cells.back();
    auto h = make_coh_head(ps.body, arr(obj(), var(0), var(last)), "comp");
    cache.emplace(arity, h);
    return h;
}

Term make_id(const Type& a_type, const Term& a) {
    Substitution s = classify_type(a_type);
    s.push_back(a);
    return coh(suspend_n(id_head(), a_type->dim + 1), std::move(s));
}

Term make_comp(const std::vector<Term>& cells, const std::vector<Type>& types) {
    if (cells.empty() || cells.size() != types.size())
        fail(ErrorKind::IllFormed, "composite needs at least one cell");
    const Type& base = types[0]->base;
    Substitution s = classify_type(base);
    s.push_back(types[0]->src);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        s.push_back(types[i]->tgt);
        s.push_back(cells[i]);
    }
    return coh(suspend_n(comp_head(static_cast<int>(cells.size())), base->dim + 1), std::move(s));
}

Type destructor_type(Destructor d, const Term& e, const Type& inv_type) {
    if (inv_type->kind != TypeKind::Inv)
        fail(ErrorKind::TypeMismatch, "destructor applied to a term that is not an invertibility structure");
    const Type& b = inv_type->base;
    const Term& t = inv_type->src;
    if (b->kind != TypeKind::Arr) fail(ErrorKind::TypeMismatch, "invertibility structure over a non-arrow type");
    const Type& a = b->base;
    const Term& u = b->src;
    const Term& v = b->tgt;
    Type back = arr(a, v, u);
    switch (d) {
    case Destructor::LInv:
    case Destructor::RInv:
        return back;
    case Destructor::LUnit:
        return arr(arr(a, v, v), make_comp({destr(Destructor::LInv, e), t}, {back, b}), make_id(a, v));
    case Destructor::RUnit:
        return arr(arr(a, u, u), make_comp({t, destr(Destructor::RInv, e)}, {b, back}), make_id(a, u));
    case Destructor::LWit:
        return inv(destructor_type(Destructor::LUnit, e, inv_type), destr(Destructor::LUnit, e));
    case Destructor::RWit:
        return inv(destructor_type(Destructor::RUnit, e, inv_type), destr(Destructor::RUnit, e));
    }
    return back;
}

} // namespace icatt
