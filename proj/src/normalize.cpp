#include "icatt/normalize.hpp"

#include <unordered_map>

#include "icatt/inverse.hpp"
#include "icatt/kernel.hpp"
#include "icatt/meta.hpp"

namespace icatt {

int component_index(Destructor d) {
    switch (d) {
    case Destructor::LInv: return kTL;
    case Destructor::RInv: return kTR;
    case Destructor::LUnit: return kTLU;
    case Destructor::RUnit: return kTRU;
    case Destructor::LWit: return kTILU;
    case Destructor::RWit: return kTIRU;
    }
    return kTL;
}

namespace {

// Contracts a destructor applied to a constructor; null when not a redex.
Term contract(Destructor d, const Term& a) {
    switch (a->kind) {
    case TermKind::Coind:
        return a->args[component_index(d)];
    case TermKind::Can:
        if (a->args[0]->kind != TermKind::Coh) return nullptr;
        return canonical_component(a, d);
    case TermKind::Rec: {
        const auto& h = a->rec;
        if (!is_witness(d)) return subst(h->comps[component_index(d)], a->args);
        Term self = rec(h, identity_sub(a->args.size()));
        Substitution s = compose(instantiation(h->n, self), a->args);
        return subst(h->comps[component_index(d)], s);
    }
    default:
        return nullptr;
    }
}

struct Beta {
    std::unordered_map<const TermNode*, std::pair<Term, Term>>& cache;

    std::vector<Term> map(const std::vector<Term>& v, bool& changed) {
        std::vector<Term> out;
        out.reserve(v.size());
        for (const auto& t : v) {
            out.push_back(term(t));
            if (out.back() != t) changed = true;
        }
        return out;
    }

    Term term(const Term& t) {
        if (t->kind == TermKind::Var || t->kind == TermKind::Meta) return t;
        auto it = cache.find(t.get());
        if (it != cache.end()) return it->second.second;
        Term r = t;
        bool changed = false;
        switch (t->kind) {
        case TermKind::Coh: {
            auto args = map(t->args, changed);
            if (changed) r = coh(t->coh, std::move(args));
            break;
        }
        case TermKind::Rec: {
            auto args = map(t->args, changed);
            if (changed) r = rec(t->rec, std::move(args));
            break;
        }
        case TermKind::Coind: {
            auto args = map(t->args, changed);
            if (changed) {
                std::array<Term, 7> c;
                for (int i = 0; i < 7; ++i) c[i] = args[i];
                r = coind(std::move(c));
            }
            break;
        }
        case TermKind::Can: {
            auto args = map(t->args, changed);
            if (changed) {
                Term s = args[0];
                args.erase(args.begin());
                r = can(s, t->keys, std::move(args));
            }
            break;
        }
        case TermKind::Destr: {
            Term a = term(t->args[0]);
            Term c = contract(t->destr, a);
            if (c) r = term(c);
            else if (a != t->args[0]) r = destr(t->destr, a);
            break;
        }
        default:
            break;
        }
        cache.emplace(t.get(), std::make_pair(t, r));
        if (r != t) cache.emplace(r.get(), std::make_pair(r, r));
        return r;
    }

    Type type(const Type& a) {
        switch (a->kind) {
        case TypeKind::Obj: return a;
        case TypeKind::Arr: {
            Type b = type(a->base);
            Term s = term(a->src), t = term(a->tgt);
            if (b == a->base && s == a->src && t == a->tgt) return a;
            return arr(b, s, t);
        }
        case TypeKind::Inv: {
            Type b = type(a->base);
            Term s = term(a->src);
            if (b == a->base && s == a->src) return a;
            return inv(b, s);
        }
        }
        return a;
    }
};

std::unordered_map<const TermNode*, std::pair<Term, Term>>& beta_cache() {
    thread_local std::unordered_map<const TermNode*, std::pair<Term, Term>> cache;
    if (cache.size() > 4000000) cache.clear();
    return cache;
}

} // namespace

Term beta_reduce(const Term& t) { return Beta{beta_cache()}.term(t); }
Type beta_reduce(const Type& a) { return Beta{beta_cache()}.type(a); }

std::vector<Term> one_step_reducts(const Term& t) {
    std::vector<Term> out;
    if (t->kind == TermKind::Destr) {
        if (Term c = contract(t->destr, t->args[0])) out.push_back(c);
    }
    for (std::size_t i = 0; i < t->args.size(); ++i) {
        for (const Term& r : one_step_reducts(t->args[i])) {
            auto args = t->args;
            args[i] = r;
            switch (t->kind) {
            case TermKind::Coh: out.push_back(coh(t->coh, args)); break;
            case TermKind::Rec: out.push_back(rec(t->rec, args)); break;
            case TermKind::Coind: {
                std::array<Term, 7> c;
                for (int k = 0; k < 7; ++k) c[k] = args[k];
                out.push_back(coind(c));
                break;
            }
            case TermKind::Can: {
                Term s = args[0];
                args.erase(args.begin());
                out.push_back(can(s, t->keys, args));
                break;
            }
            case TermKind::Destr: out.push_back(destr(t->destr, args[0])); break;
            default: break;
            }
        }
    }
    return out;
}

bool convertible(const Term& a, const Term& b) {
    if (a == b) return true;
    return equal(beta_reduce(a), beta_reduce(b));
}

bool convertible(const Type& a, const Type& b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case TypeKind::Obj: return true;
    case TypeKind::Arr:
        return convertible(a->base, b->base) && convertible(a->src, b->src) && convertible(a->tgt, b->tgt);
    case TypeKind::Inv:
        return convertible(a->base, b->base) && convertible(a->src, b->src);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Eta

Term eta_expand(const Term& e, const Type& inv_type) {
    if (inv_type->kind != TypeKind::Inv)
        fail(ErrorKind::TypeMismatch, "eta-expansion of a term that is not an invertibility structure");
    std::array<Term, 7> c;
    for (Destructor d : all_destructors) c[component_index(d)] = destr(d, e);
    c[kT] = inv_type->src;
    return coind(c);
}

namespace {

struct Eta {
    int guard;

    // t is beta-normal with type a; positions here are not under a destructor.
    Term term(const Term& t, const Type& a) {
        if (a->kind != TypeKind::Inv) return t;
        const Term& subject = a->src;
        const Type& b = a->base;
        int subject_dim = b->dim + 1;
        if (t->kind == TermKind::Coind) return into_coind(t, a);
        if (t->kind == TermKind::Can) {
            const Term& s = t->args[0];
            std::vector<Term> w;
            for (std::size_t i = 1; i < t->args.size(); ++i) {
                int l = t->keys[i - 1];
                Type wt = inv(subst(s->coh->ps.types[l], s->args), s->args[l]);
                w.push_back(term(t->args[i], wt));
            }
            Term r = can(s, t->keys, std::move(w));
            if (subject_dim > guard) return r;
            return expand(r, a);
        }
        if (subject_dim > guard) return t;
        (void)subject;
        return expand(t, a);
    }

    Term expand(const Term& e, const Type& a) {
        std::array<Term, 7> c;
        for (Destructor d : all_destructors) {
            Term r = beta_reduce(destr(d, e));
            if (is_witness(d)) r = term(r, beta_reduce(destructor_type(d, e, a)));
            c[component_index(d)] = r;
        }
        c[kT] = a->src;
        return coind(c);
    }

    Term into_coind(const Term& t, const Type& a) {
        std::array<Term, 7> c;
        for (int i = 0; i < 7; ++i) c[i] = t->args[i];
        ComponentTypes ct = component_types(c[kT], a->base, c[kTL], c[kTR], c[kTLU], c[kTRU]);
        c[kTILU] = term(c[kTILU], beta_reduce(ct.tilu));
        c[kTIRU] = term(c[kTIRU], beta_reduce(ct.tiru));
        return coind(c);
    }
};

} // namespace

Term nf(const Context& c, const Term& t, int guard) {
    Term b = beta_reduce(t);
    Checker ck(c);
    Type a = beta_reduce(ck.infer(b));
    if (a->kind != TypeKind::Inv) return b;
    return Eta{guard}.term(b, a);
}

Term nf(const Context& c, const Term& t) {
    Checker ck(c);
    Type a = ck.infer(t);
    int guard = a->kind == TypeKind::Inv ? a->base->dim + 1 : a->dim + 1;
    return nf(c, t, guard);
}

Type nf(const Context&, const Type& a) { return beta_reduce(a); }

bool is_catt(const Term& t) {
    switch (t->kind) {
    case TermKind::Var: return true;
    case TermKind::Coh:
        for (const auto& a : t->args)
            if (!is_catt(a)) return false;
        return true;
    default: return false;
    }
}

bool is_catt(const Type& a) {
    switch (a->kind) {
    case TypeKind::Obj: return true;
    case TypeKind::Arr: return is_catt(a->base) && is_catt(a->src) && is_catt(a->tgt);
    case TypeKind::Inv: return false;
    }
    return false;
}

bool erase_check(const Context& c, const Term& t) { return is_catt(nf(c, t)); }
bool erase_check(const Context& c, const Type& a) { return is_catt(nf(c, a)); }

} // namespace icatt
