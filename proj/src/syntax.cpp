#include "icatt/syntax.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace icatt {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_context(const Context& c) {
    std::size_t h = 0xc0ffee;
    for (const auto& t : c.types) h = mix(h, t->hash);
    return h;
}

} // namespace

std::string_view destructor_name(Destructor d) {
    switch (d) {
    case Destructor::LInv: return "linv";
    case Destructor::RInv: return "rinv";
    case Destructor::LUnit: return "lunit";
    case Destructor::RUnit: return "runit";
    case Destructor::LWit: return "ilunit";
    case Destructor::RWit: return "irunit";
    }
    return "?";
}

std::string_view category_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::UnknownName: return "unknown-name";
    case ErrorKind::Duplicate: return "duplicate";
    case ErrorKind::IllFormed: return "ill-formed";
    case ErrorKind::NotPs: return "not-ps";
    case ErrorKind::NotFull: return "not-full";
    case ErrorKind::TypeMismatch: return "type-mismatch";
    case ErrorKind::Arity: return "arity";
    case ErrorKind::CanWitness: return "can-witness";
    case ErrorKind::IHOutsideRec: return "ih-outside-rec";
    case ErrorKind::RecContext: return "rec-context";
    case ErrorKind::Unification: return "unification";
    case ErrorKind::OpUnsupported: return "op-unsupported";
    case ErrorKind::Bound: return "bound";
    case ErrorKind::Usage: return "usage";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Construction

Type obj() {
    static const Type star = [] {
        auto n = std::make_shared<TypeNode>();
        n->kind = TypeKind::Obj;
        n->dim = -1;
        n->hash = 0x5151;
        return Type(n);
    }();
    return star;
}

Type arr(Type base, Term src, Term tgt) {
    auto n = std::make_shared<TypeNode>();
    n->kind = TypeKind::Arr;
    n->dim = base->dim + 1;
    n->hash = mix(mix(mix(0xa77, base->hash), src->hash), tgt->hash);
    n->has_meta = base->has_meta || src->has_meta || tgt->has_meta;
    n->base = std::move(base);
    n->src = std::move(src);
    n->tgt = std::move(tgt);
    return n;
}

Type inv(Type base, Term subject) {
    auto n = std::make_shared<TypeNode>();
    n->kind = TypeKind::Inv;
    n->dim = base->dim + 1;
    n->hash = mix(mix(0x1f1, base->hash), subject->hash);
    n->has_meta = base->has_meta || subject->has_meta;
    n->base = std::move(base);
    n->src = std::move(subject);
    return n;
}

namespace {

std::shared_ptr<TermNode> node(TermKind k) {
    auto n = std::make_shared<TermNode>();
    n->kind = k;
    return n;
}

void absorb(TermNode& n, const std::vector<Term>& args, std::size_t seed) {
    std::size_t h = seed;
    for (const auto& a : args) {
        h = mix(h, a->hash);
        n.has_meta = n.has_meta || a->has_meta;
        n.scope = std::max(n.scope, a->scope);
    }
    n.hash = h;
}

} // namespace

Term var(int level) {
    auto n = node(TermKind::Var);
    n->index = level;
    n->hash = mix(0x7a7, static_cast<std::size_t>(level));
    n->scope = level + 1;
    return n;
}

Term meta(int id) {
    auto n = node(TermKind::Meta);
    n->index = id;
    n->hash = mix(0x3e7a, static_cast<std::size_t>(id));
    n->has_meta = true;
    return n;
}

CohHeadPtr make_coh_head(Context ps, Type type, std::string label) {
    auto h = std::make_shared<CohHead>();
    h->hash = mix(hash_context(ps), type->hash);
    h->ps = std::move(ps);
    h->type = std::move(type);
    h->label = std::move(label);
    return h;
}

RecHeadPtr make_rec_head(int n, std::array<Term, 7> comps, std::string label) {
    auto h = std::make_shared<RecHead>();
    std::size_t hs = mix(0x7ec, static_cast<std::size_t>(n));
    for (const auto& c : comps) hs = mix(hs, c->hash);
    h->n = n;
    h->hash = hs;
    h->comps = std::move(comps);
    h->label = std::move(label);
    return h;
}

Term coh(CohHeadPtr head, Substitution sub) {
    auto n = node(TermKind::Coh);
    absorb(*n, sub, mix(0xc0, head->hash));
    n->coh = std::move(head);
    n->args = std::move(sub);
    return n;
}

Term coind(std::array<Term, 7> comps) {
    auto n = node(TermKind::Coind);
    n->args.assign(comps.begin(), comps.end());
    absorb(*n, n->args, 0xc01d);
    return n;
}

Term rec(RecHeadPtr head, Substitution sub) {
    auto n = node(TermKind::Rec);
    absorb(*n, sub, mix(0x2ec, head->hash));
    n->rec = std::move(head);
    n->args = std::move(sub);
    return n;
}

Term can(Term subject, std::vector<int> keys, std::vector<Term> witnesses) {
    auto n = node(TermKind::Can);
    n->args.reserve(witnesses.size() + 1);
    n->args.push_back(std::move(subject));
    for (auto& w : witnesses) n->args.push_back(std::move(w));
    std::size_t seed = 0xca9;
    for (int k : keys) seed = mix(seed, static_cast<std::size_t>(k));
    absorb(*n, n->args, seed);
    n->keys = std::move(keys);
    return n;
}

Term destr(Destructor d, Term arg) {
    auto n = node(TermKind::Destr);
    n->destr = d;
    n->args.push_back(std::move(arg));
    absorb(*n, n->args, mix(0xde5, static_cast<std::size_t>(d)));
    return n;
}

Substitution identity_sub(std::size_t n) {
    Substitution s;
    s.reserve(n);
    for (std::size_t i = 0; i < n; ++i) s.push_back(var(static_cast<int>(i)));
    return s;
}

// ---------------------------------------------------------------------------
// Equality

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<const void*, const void*>& p) const {
        return mix(std::hash<const void*>()(p.first), std::hash<const void*>()(p.second));
    }
};

// Shared subterms are compared once per top-level call.
struct EqualMemo {
    std::unordered_set<std::pair<const void*, const void*>, PairHash> seen;
    int depth = 0;
};

thread_local EqualMemo* equal_memo = nullptr;

bool equal_term_impl(const Term& a, const Term& b);
bool equal_type_impl(const Type& a, const Type& b);

bool equal_args(const std::vector<Term>& a, const std::vector<Term>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!equal_term_impl(a[i], b[i])) return false;
    return true;
}

bool equal_head_impl(const CohHead& a, const CohHead& b) {
    if (&a == &b) return true;
    if (a.hash != b.hash || a.ps.size() != b.ps.size()) return false;
    for (std::size_t i = 0; i < a.ps.size(); ++i)
        if (!equal_type_impl(a.ps.types[i], b.ps.types[i])) return false;
    return equal_type_impl(a.type, b.type);
}

bool equal_rec_impl(const RecHead& a, const RecHead& b) {
    if (&a == &b) return true;
    if (a.hash != b.hash || a.n != b.n) return false;
    for (std::size_t i = 0; i < 7; ++i)
        if (!equal_term_impl(a.comps[i], b.comps[i])) return false;
    return true;
}

bool equal_term_impl(const Term& a, const Term& b) {
    if (a == b) return true;
    if (a->hash != b->hash || a->kind != b->kind) return false;
    auto key = std::make_pair(static_cast<const void*>(a.get()), static_cast<const void*>(b.get()));
    if (equal_memo->seen.count(key)) return true;
    bool r = false;
    switch (a->kind) {
    case TermKind::Var:
    case TermKind::Meta:
        r = a->index == b->index;
        break;
    case TermKind::Coh:
        r = equal_head_impl(*a->coh, *b->coh) && equal_args(a->args, b->args);
        break;
    case TermKind::Rec:
        r = equal_rec_impl(*a->rec, *b->rec) && equal_args(a->args, b->args);
        break;
    case TermKind::Coind:
        r = equal_args(a->args, b->args);
        break;
    case TermKind::Can:
        r = a->keys == b->keys && equal_args(a->args, b->args);
        break;
    case TermKind::Destr:
        r = a->destr == b->destr && equal_args(a->args, b->args);
        break;
    }
    if (r) equal_memo->seen.insert(key);
    return r;
}

bool equal_type_impl(const Type& a, const Type& b) {
    if (a == b) return true;
    if (a->hash != b->hash || a->kind != b->kind) return false;
    switch (a->kind) {
    case TypeKind::Obj: return true;
    case TypeKind::Arr:
        return equal_type_impl(a->base, b->base) && equal_term_impl(a->src, b->src) &&
               equal_term_impl(a->tgt, b->tgt);
    case TypeKind::Inv:
        return equal_type_impl(a->base, b->base) && equal_term_impl(a->src, b->src);
    }
    return false;
}

template <class F>
auto with_memo(F&& f) {
    if (equal_memo) return f();
    EqualMemo memo;
    equal_memo = &memo;
    struct Reset { ~Reset() { equal_memo = nullptr; } } reset;
    return f();
}

} // namespace

bool equal(const Term& a, const Term& b) {
    return with_memo([&] { return equal_term_impl(a, b); });
}
bool equal(const Type& a, const Type& b) {
    return with_memo([&] { return equal_type_impl(a, b); });
}
bool equal(const CohHead& a, const CohHead& b) {
    return with_memo([&] { return equal_head_impl(a, b); });
}
bool equal(const RecHead& a, const RecHead& b) {
    return with_memo([&] { return equal_rec_impl(a, b); });
}
bool equal_ctx(const Context& a, const Context& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!equal(a.types[i], b.types[i])) return false;
    return true;
}
bool equal_sub(const Substitution& a, const Substitution& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!equal(a[i], b[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

struct Applier {
    const Substitution& s;
    std::unordered_map<const TermNode*, Term> memo;

    Term lookup(int level) const {
        if (level < 0 || static_cast<std::size_t>(level) >= s.size() || !s[level])
            fail(ErrorKind::IllFormed, "unbound variable at level " + std::to_string(level));
        return s[level];
    }

    std::vector<Term> map(const std::vector<Term>& v) {
        std::vector<Term> out;
        out.reserve(v.size());
        for (const auto& t : v) out.push_back(term(t));
        return out;
    }

    Term term(const Term& t) {
        if (t->kind == TermKind::Var) return lookup(t->index);
        if (t->kind == TermKind::Meta) return t;
        auto it = memo.find(t.get());
        if (it != memo.end()) return it->second;
        Term r;
        switch (t->kind) {
        case TermKind::Coh: r = coh(t->coh, map(t->args)); break;
        case TermKind::Rec: r = rec(t->rec, map(t->args)); break;
        case TermKind::Coind: {
            std::array<Term, 7> c;
            for (int i = 0; i < 7; ++i) c[i] = term(t->args[i]);
            r = coind(std::move(c));
            break;
        }
        case TermKind::Can: {
            std::vector<Term> w;
            for (std::size_t i = 1; i < t->args.size(); ++i) w.push_back(term(t->args[i]));
            r = can(term(t->args[0]), t->keys, std::move(w));
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
        case TypeKind::Obj: return a;
        case TypeKind::Arr: return arr(type(a->base), term(a->src), term(a->tgt));
        case TypeKind::Inv: return inv(type(a->base), term(a->src));
        }
        return a;
    }
};

} // namespace

Term subst(const Term& t, const Substitution& s) {
    Applier ap{s, {}};
    return ap.term(t);
}

Type subst(const Type& a, const Substitution& s) {
    Applier ap{s, {}};
    return ap.type(a);
}

Substitution compose(const Substitution& d, const Substitution& g) {
    Applier ap{g, {}};
    Substitution out;
    out.reserve(d.size());
    for (const auto& t : d) out.push_back(t ? ap.term(t) : Term());
    return out;
}

int dimension(const Context& c) {
    int d = -1;
    for (const auto& t : c.types) d = std::max(d, t->dim + 1);
    return d;
}

// ---------------------------------------------------------------------------
// Variables

namespace {

void collect(const Term& t, std::unordered_set<const TermNode*>& seen, std::vector<int>& out);

void collect_type(const Type& a, std::unordered_set<const TermNode*>& seen, std::vector<int>& out) {
    switch (a->kind) {
    case TypeKind::Obj: return;
    case TypeKind::Arr:
        collect_type(a->base, seen, out);
        collect(a->src, seen, out);
        collect(a->tgt, seen, out);
        return;
    case TypeKind::Inv:
        collect_type(a->base, seen, out);
        collect(a->src, seen, out);
        return;
    }
}

void collect(const Term& t, std::unordered_set<const TermNode*>& seen, std::vector<int>& out) {
    if (t->kind == TermKind::Var) {
        out.push_back(t->index);
        return;
    }
    if (!seen.insert(t.get()).second) return;
    for (const auto& a : t->args) collect(a, seen, out);
}

std::vector<int> normalise_set(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

std::vector<int> variables_used(const Term& t) {
    std::unordered_set<const TermNode*> seen;
    std::vector<int> out;
    collect(t, seen, out);
    return normalise_set(std::move(out));
}

std::vector<int> variables_used(const Type& a) {
    std::unordered_set<const TermNode*> seen;
    std::vector<int> out;
    collect_type(a, seen, out);
    return normalise_set(std::move(out));
}

std::vector<bool> closure(const Context& c, const std::vector<int>& levels) {
    std::vector<bool> used(c.size(), false);
    for (int l : levels)
        if (l >= 0 && static_cast<std::size_t>(l) < c.size()) used[l] = true;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        if (!used[i]) continue;
        for (int l : variables_used(c.types[i])) used[l] = true;
    }
    return used;
}

Term shift(const Term& t, int offset) {
    if (offset == 0) return t;
    Substitution s;
    s.reserve(t->scope);
    for (int i = 0; i < t->scope; ++i) s.push_back(var(i + offset));
    return subst(t, s);
}

Type shift(const Type& a, int offset) {
    if (offset == 0) return a;
    int scope = 0;
    for (int l : variables_used(a)) scope = std::max(scope, l + 1);
    Substitution s;
    for (int i = 0; i < scope; ++i) s.push_back(var(i + offset));
    return subst(a, s);
}

std::size_t term_size(const Term& t) {
    std::unordered_set<const TermNode*> seen;
    std::function<void(const Term&)> go = [&](const Term& u) {
        if (!seen.insert(u.get()).second) return;
        for (const auto& a : u->args) go(a);
    };
    go(t);
    return seen.size();
}

bool is_categorical(const Type& a) { return a->kind != TypeKind::Inv; }

} // namespace icatt
