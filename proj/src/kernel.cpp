#include "icatt/kernel.hpp"

#include <set>

#include "icatt/meta.hpp"
#include "icatt/normalize.hpp"
#include "icatt/printer.hpp"

namespace icatt {

std::string brief(const std::string& s, std::size_t limit) {
    if (s.size() <= limit) return s;
    return s.substr(0, limit) + " ...";
}

namespace {

template <class Head, class Value>
struct HeadCache {
    std::unordered_multimap<std::size_t, std::pair<std::shared_ptr<const Head>, Value>> entries;

    const Value* find(const std::shared_ptr<const Head>& h) {
        auto range = entries.equal_range(h->hash);
        for (auto it = range.first; it != range.second; ++it)
            if (it->second.first == h || equal(*it->second.first, *h)) return &it->second.second;
        return nullptr;
    }
    const Value& add(const std::shared_ptr<const Head>& h, Value v) {
        return entries.emplace(h->hash, std::make_pair(h, std::move(v)))->second.second;
    }
};

} // namespace

// ---------------------------------------------------------------------------
// Contexts and heads

void check_ctx(const Context& c) {
    std::set<std::string> seen;
    Checker ck(c);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!seen.insert(c.names[i]).second)
            fail(ErrorKind::Duplicate, "duplicate variable " + c.names[i] + " in context");
        for (int l : variables_used(c.types[i]))
            if (l >= static_cast<int>(i))
                fail(ErrorKind::IllFormed, "type of " + c.names[i] + " refers to a later variable");
        ck.check_type(c.types[i]);
    }
}

const PsContext& validate_coh_head(const CohHeadPtr& h) {
    thread_local HeadCache<CohHead, PsContext> cache;
    if (const PsContext* ps = cache.find(h)) return *ps;
    check_ctx(h->ps);
    PsContext ps = check_ps(h->ps);
    Checker ck(h->ps);
    ck.check_type(h->type);
    std::string why;
    if (!full_type(ps, h->type, &why))
        fail(ErrorKind::NotFull, "type " + brief(show(h->type, h->ps)) + " is not full: " + why);
    return cache.add(h, std::move(ps));
}

ComponentTypes component_types(const Term& t, const Type& b, const Term& tl, const Term& tr,
                               const Term& tlu, const Term& tru) {
    if (b->kind != TypeKind::Arr) fail(ErrorKind::TypeMismatch, "invertibility structure over a non-arrow type");
    const Type& a = b->base;
    const Term& u = b->src;
    const Term& v = b->tgt;
    ComponentTypes ct;
    Type back = arr(a, v, u);
    ct.tl = back;
    ct.tr = back;
    ct.tlu = arr(arr(a, v, v), make_comp({tl, t}, {back, b}), make_id(a, v));
    ct.tru = arr(arr(a, u, u), make_comp({t, tr}, {b, back}), make_id(a, u));
    ct.tilu = inv(ct.tlu, tlu);
    ct.tiru = inv(ct.tru, tru);
    return ct;
}

Type validate_rec_head(const RecHeadPtr& h) {
    thread_local HeadCache<RecHead, Type> cache;
    if (const Type* t = cache.find(h)) return *t;
    const auto& c = h->comps;
    Checker ce(walking_equiv(h->n + 1));
    Type b = ce.infer(c[kT]);
    if (b->kind != TypeKind::Arr) fail(ErrorKind::RecContext, "rec seed term must be a categorical cell");
    ComponentTypes ct = component_types(c[kT], b, c[kTL], c[kTR], c[kTLU], c[kTRU]);
    ce.check(c[kTL], ct.tl, "rec component 2");
    ce.check(c[kTR], ct.tr, "rec component 3");
    ce.check(c[kTLU], ct.tlu, "rec component 4");
    ce.check(c[kTRU], ct.tru, "rec component 5");
    Checker ci(equiv_ind_context(h->n, c[kT], b));
    ci.check(c[kTILU], ct.tilu, "rec component 6");
    ci.check(c[kTIRU], ct.tiru, "rec component 7");
    return cache.add(h, b);
}

std::vector<int> can_index(const CohHead& h) {
    std::vector<int> out;
    int d = h.type->dim + 1;
    for (std::size_t l = 0; l < h.ps.size(); ++l)
        if (h.ps.types[l]->dim + 1 == d) out.push_back(static_cast<int>(l));
    return out;
}

// ---------------------------------------------------------------------------
// Checker

Checker::Checker(Context ctx) : ctx_(std::move(ctx)) {}

void Checker::check_type(const Type& a) {
    switch (a->kind) {
    case TypeKind::Obj: return;
    case TypeKind::Arr:
        if (a->base->kind == TypeKind::Inv)
            fail(ErrorKind::IllFormed, "arrow type over an invertibility type");
        check_type(a->base);
        check(a->src, a->base, "source");
        check(a->tgt, a->base, "target");
        return;
    case TypeKind::Inv:
        if (a->base->kind != TypeKind::Arr)
            fail(ErrorKind::TypeMismatch, "Inv requires a subject of positive dimension");
        check_type(a->base);
        check(a->src, a->base, "Inv subject");
        return;
    }
}

void Checker::check(const Term& t, const Type& expected, const std::string& what) {
    Type actual = infer(t);
    if (!convertible(actual, expected))
        fail(ErrorKind::TypeMismatch, what + " " + brief(show(t, ctx_), 300) + " has type " +
                                          brief(show(actual, ctx_), 400) + " but " +
                                          brief(show(expected, ctx_), 400) + " was expected");
}

void Checker::check_sub(const Substitution& s, const Context& target) {
    if (s.size() != target.size())
        fail(ErrorKind::TypeMismatch, "substitution has " + std::to_string(s.size()) + " entries, expected " +
                                          std::to_string(target.size()));
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s[i]) fail(ErrorKind::IllFormed, "substitution leaves " + target.names[i] + " undefined");
        check(s[i], subst(target.types[i], s), "argument for " + target.names[i] + ":");
    }
}

Type Checker::infer(const Term& t) {
    if (t->kind == TermKind::Var) return infer_uncached(t);
    auto it = memo_.find(t.get());
    if (it != memo_.end()) return it->second.second;
    Type a = infer_uncached(t);
    memo_.emplace(t.get(), std::make_pair(t, a));
    return a;
}

Type Checker::infer_uncached(const Term& t) {
    switch (t->kind) {
    case TermKind::Var:
        if (t->index < 0 || static_cast<std::size_t>(t->index) >= ctx_.size())
            fail(ErrorKind::IllFormed, "unbound variable at level " + std::to_string(t->index));
        return ctx_.types[t->index];
    case TermKind::Meta:
        fail(ErrorKind::Unification, "unsolved metavariable ?" + std::to_string(t->index));
    case TermKind::Coh:
        validate_coh_head(t->coh);
        check_sub(t->args, t->coh->ps);
        return subst(t->coh->type, t->args);
    case TermKind::Destr: {
        Type a = infer(t->args[0]);
        if (a->kind != TypeKind::Inv)
            fail(ErrorKind::TypeMismatch, std::string(destructor_name(t->destr)) + " applied to " +
                                              brief(show(t->args[0], ctx_), 300) +
                                              " which is not an invertibility structure");
        return destructor_type(t->destr, t->args[0], a);
    }
    case TermKind::Coind: return infer_coind(t);
    case TermKind::Can: return infer_can(t);
    case TermKind::Rec: {
        Type b = validate_rec_head(t->rec);
        check_sub(t->args, walking_equiv(t->rec->n + 1));
        return inv(subst(b, t->args), subst(t->rec->comps[kT], t->args));
    }
    }
    fail(ErrorKind::IllFormed, "unknown term");
}

Type Checker::infer_coind(const Term& t) {
    const auto& c = t->args;
    if (c.size() != 7) fail(ErrorKind::Arity, "coind needs seven components");
    Type b = infer(c[kT]);
    if (b->kind != TypeKind::Arr)
        fail(ErrorKind::TypeMismatch, "coind seed must be a categorical cell of positive dimension");
    ComponentTypes ct = component_types(c[kT], b, c[kTL], c[kTR], c[kTLU], c[kTRU]);
    check(c[kTL], ct.tl, "coind component 2");
    check(c[kTR], ct.tr, "coind component 3");
    check(c[kTLU], ct.tlu, "coind component 4");
    check(c[kTRU], ct.tru, "coind component 5");
    check(c[kTILU], ct.tilu, "coind component 6");
    check(c[kTIRU], ct.tiru, "coind component 7");
    return inv(b, c[kT]);
}

Type Checker::infer_can(const Term& t) {
    const Term& s = t->args[0];
    if (s->kind != TermKind::Coh) fail(ErrorKind::CanWitness, "can subject must be a coherence");
    Type a = infer(s);
    const CohHead& h = *s->coh;
    std::vector<int> index = can_index(h);
    if (t->keys != index) {
        std::set<int> have(t->keys.begin(), t->keys.end());
        for (int l : index)
            if (!have.count(l)) fail(ErrorKind::CanWitness, "missing can witness for variable " + h.ps.names[l]);
        fail(ErrorKind::CanWitness, "can witnesses are not indexed by the top-dimensional variables");
    }
    for (std::size_t i = 0; i < index.size(); ++i) {
        int l = index[i];
        Type expected = inv(subst(h.ps.types[l], s->args), s->args[l]);
        check(t->args[i + 1], expected, "can witness for " + h.ps.names[l] + ":");
    }
    return inv(a, s);
}

// ---------------------------------------------------------------------------
// Environment

const Decl* Environment::find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &decls_[it->second];
}

void Environment::add(Decl d) {
    if (index_.count(d.name)) fail(ErrorKind::Duplicate, "redeclaration of " + d.name);
    index_.emplace(d.name, decls_.size());
    decls_.push_back(std::move(d));
}

void check_decl(Environment& env, Decl d) {
    if (env.find(d.name)) fail(ErrorKind::Duplicate, "redeclaration of " + d.name);
    check_ctx(d.ctx);
    Checker ck(d.ctx);
    ck.check_type(d.type);
    switch (d.kind) {
    case DeclKind::Coh:
        if (!d.coh) fail(ErrorKind::IllFormed, "coherence declaration without a head");
        validate_coh_head(d.coh);
        break;
    case DeclKind::Rec: {
        if (!d.rec) fail(ErrorKind::IllFormed, "rec declaration without a head");
        if (!equal_ctx(d.ctx, walking_equiv(d.rec->n + 1)))
            fail(ErrorKind::RecContext, "rec context must be the walking equivalence");
        validate_rec_head(d.rec);
        break;
    }
    case DeclKind::Inv:
        if (d.body->kind != TermKind::Coind) fail(ErrorKind::Arity, "inv declaration must be a coind");
        break;
    case DeclKind::Let:
        break;
    }
    ck.check(d.body, d.type, "body of " + d.name);
    env.add(std::move(d));
}

} // namespace icatt
