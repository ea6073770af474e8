#include "icatt/elaborate.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>

#include "icatt/meta.hpp"
#include "icatt/normalize.hpp"
#include "icatt/printer.hpp"

namespace icatt {

Context ps_context(const PsGroup& root) {
    std::vector<std::string> names{root.names[0]};
    std::function<Shape(const PsGroup&)> go = [&](const PsGroup& g) {
        Shape s;
        for (std::size_t i = 0; i < g.children.size(); ++i) {
            names.push_back(g.names[i + 1]);
            names.push_back(g.children[i].names[0]);
            s.children.push_back(go(g.children[i]));
        }
        return s;
    };
    Shape shape = go(root);
    return build_ps(shape, [&](int level, int) { return names[level]; }).body;
}

namespace {

struct MetaInfo {
    Type type;
    Term solution;
    std::string origin;
};

struct Schema {
    std::string name;
    Context ctx;
    Term body;
    Type type;
    std::vector<int> explicit_levels;
};

struct Typed {
    Term term;
    Type type;
};

std::string where(const Span& s) { return std::to_string(s.line) + ":" + std::to_string(s.column); }

class Elab {
public:
    explicit Elab(const Environment& env) : env_(env) {}

    Elaborated run(const SurfaceDecl& d) {
        Elaborated out;
        out.decl.name = d.name;
        switch (d.keyword) {
        case DeclKeyword::Coh: coh_decl(d, out.decl); break;
        case DeclKeyword::Let: let_decl(d, out.decl); break;
        case DeclKeyword::Inv: inv_decl(d, out.decl); break;
        case DeclKeyword::Rec: rec_decl(d, out.decl); break;
        }
        for (auto& rec : instances_) {
            for (auto& t : rec.first.args) t = zonk(t);
            out.instances.push_back(std::move(rec.first));
            out.instance_contexts.push_back(std::move(rec.second));
        }
        return out;
    }

private:
    // ---- declarations ------------------------------------------------------

    void telescope(const SurfaceDecl& d) {
        ctx_ = Context{};
        if (d.ps) {
            ctx_ = ps_context(*d.ps);
            return;
        }
        for (const auto& b : d.telescope) {
            located(b.span, [&] {
                Type t = type(*b.type);
                finish();
                ctx_.push(b.name, zonk(t));
            });
        }
    }

    void coh_decl(const SurfaceDecl& d, Decl& out) {
        telescope(d);
        check_ps(ctx_);
        Type t = type(*d.type);
        finish();
        t = zonk(t);
        out.kind = DeclKind::Coh;
        out.ctx = ctx_;
        out.coh = make_coh_head(ctx_, t, d.name);
        out.body = coh(out.coh, identity_sub(ctx_.size()));
        out.type = t;
    }

    void let_decl(const SurfaceDecl& d, Decl& out) {
        telescope(d);
        out.kind = DeclKind::Let;
        Typed r;
        if (d.type) {
            r.type = type(*d.type);
            finish();
            r.type = zonk(r.type);
            r.term = check(*d.body, r.type);
        } else {
            r = infer(*d.body);
        }
        finish();
        out.ctx = ctx_;
        out.body = zonk(r.term);
        out.type = zonk(r.type);
    }

    std::array<Term, 7> components(const SurfaceDecl& d, const std::function<void()>& before_witnesses) {
        if (d.components.size() != 7)
            fail(ErrorKind::Arity, std::string(keyword_name(d.keyword)) + " " + d.name +
                                       " needs seven components, got " + std::to_string(d.components.size()));
        std::array<Term, 7> c;
        Typed seed = infer(*d.components[0]);
        finish();
        c[kT] = zonk(seed.term);
        Type b = zonk(seed.type);
        if (b->kind != TypeKind::Arr)
            fail(ErrorKind::TypeMismatch, "the first component of " + d.name +
                                              " must be a cell of positive dimension, but it has type " +
                                              show(b, ctx_));
        seed_type_ = b;
        seed_ = c[kT];
        Type back = arr(b->base, b->tgt, b->src);
        c[kTL] = check(*d.components[1], back);
        c[kTR] = check(*d.components[2], back);
        finish();
        c[kTL] = zonk(c[kTL]);
        c[kTR] = zonk(c[kTR]);
        ComponentTypes ct = component_types(c[kT], b, c[kTL], c[kTR], c[kTL], c[kTR]);
        c[kTLU] = check(*d.components[3], ct.tlu);
        c[kTRU] = check(*d.components[4], ct.tru);
        finish();
        c[kTLU] = zonk(c[kTLU]);
        c[kTRU] = zonk(c[kTRU]);
        ct = component_types(c[kT], b, c[kTL], c[kTR], c[kTLU], c[kTRU]);
        before_witnesses();
        ih_allowed_ = d.keyword == DeclKeyword::Rec;
        c[kTILU] = check(*d.components[5], ct.tilu);
        c[kTIRU] = check(*d.components[6], ct.tiru);
        finish();
        ih_allowed_ = false;
        c[kTILU] = zonk(c[kTILU]);
        c[kTIRU] = zonk(c[kTIRU]);
        return c;
    }

    void inv_decl(const SurfaceDecl& d, Decl& out) {
        telescope(d);
        auto c = components(d, [] {});
        out.kind = DeclKind::Inv;
        out.ctx = ctx_;
        out.body = coind(c);
        out.type = inv(seed_type_, c[kT]);
    }

    void rec_decl(const SurfaceDecl& d, Decl& out) {
        telescope(d);
        int m = static_cast<int>(ctx_.size()) / 2 - 1;
        if (ctx_.size() % 2 != 0 || m < 1 || !equal_ctx(ctx_, walking_equiv(m)))
            fail(ErrorKind::RecContext, "the context of rec " + d.name +
                                            " must be a walking equivalence such as "
                                            "(x : *) (y : *) (f : x -> y) (e : Inv (f))");
        Context params = ctx_;
        ih_n_ = m - 1;
        auto c = components(d, [&] {
            Context ind = equiv_ind_context(ih_n_, seed_, seed_type_);
            for (std::size_t i = 0; i < params.size(); ++i) ind.names[i] = params.names[i];
            ctx_ = ind;
        });
        out.kind = DeclKind::Rec;
        out.ctx = params;
        out.rec = make_rec_head(ih_n_, c, d.name);
        out.body = rec(out.rec, identity_sub(params.size()));
        out.type = inv(seed_type_, c[kT]);
        ctx_ = params;
    }

    // ---- types ---------------------------------------------------------------

    Type type(const TyExpr& t) {
        return located(t.span, [&]() -> Type {
            switch (t.kind) {
            case TyKind::Obj:
                return obj();
            case TyKind::Inv: {
                if (indeterminate(*t.src))
                    fail(ErrorKind::Unification, "cannot infer the subject of Inv; give it explicitly");
                Typed s = infer(*t.src);
                Type a = zonk(s.type);
                if (a->kind != TypeKind::Arr)
                    fail(ErrorKind::TypeMismatch, "Inv requires a cell of positive dimension, but " +
                                                      show(zonk(s.term), ctx_) + " has type " + show(a, ctx_));
                return inv(a, s.term);
            }
            case TyKind::Arr: {
                bool ls = indeterminate(*t.src), lt = indeterminate(*t.tgt);
                if (ls && lt) fail(ErrorKind::Unification, "cannot infer the type of either side of the arrow");
                Typed side = infer(ls ? *t.tgt : *t.src);
                Term other = check(ls ? *t.src : *t.tgt, side.type);
                Type base = zonk(side.type);
                if (base->kind == TypeKind::Inv)
                    fail(ErrorKind::TypeMismatch, "an arrow type needs categorical sides, but " +
                                                      show(zonk(side.term), ctx_) + " has type " + show(base, ctx_));
                return ls ? arr(base, other, side.term) : arr(base, side.term, other);
            }
            }
            return obj();
        });
    }

    // ---- terms ---------------------------------------------------------------

    bool indeterminate(const Expr& e) const {
        switch (e.kind) {
        case ExprKind::Wild: return true;
        case ExprKind::Can: return e.subject->kind == ExprKind::Wild;
        case ExprKind::Name:
            if (e.args.empty() || local(e.name) >= 0) return false;
            for (const auto& a : e.args)
                if (!indeterminate(*a)) return false;
            return true;
        default: return false;
        }
    }

    int local(const std::string& name) const {
        for (int l = static_cast<int>(ctx_.size()) - 1; l >= 0; --l)
            if (ctx_.names[l] == name) return l;
        return -1;
    }

    template <class F>
    auto located(const Span& s, F f) -> decltype(f()) {
        try {
            return f();
        } catch (Error& err) {
            if (!err.located() && s.line > 0) err.locate(s.line, s.column);
            throw;
        }
    }

    Typed infer(const Expr& e, std::optional<int> dim_hint = std::nullopt) {
        return located(e.span, [&]() -> Typed {
            switch (e.kind) {
            case ExprKind::Wild:
                fail(ErrorKind::Unification, "cannot infer the value of a wildcard here; give the argument explicitly");
            case ExprKind::IH: {
                if (!ih_allowed_)
                    fail(ErrorKind::IHOutsideRec,
                         "IHleft and IHright may only appear in the last two components of a rec");
                int l = e.right ? ih_right(ih_n_) : ih_left(ih_n_);
                return {var(l), ctx_.types[l]};
            }
            case ExprKind::Destr: {
                Typed a = infer(*e.args[0]);
                Type t = zonk(a.type);
                if (t->kind != TypeKind::Inv)
                    fail(ErrorKind::TypeMismatch, std::string(destructor_name(e.destr)) + " needs an invertibility "
                                                  "structure, but " + show(zonk(a.term), ctx_) + " has type " +
                                                  show(t, ctx_));
                return {destr(e.destr, a.term), destructor_type(e.destr, a.term, t)};
            }
            case ExprKind::Can: {
                if (e.subject->kind == ExprKind::Wild)
                    fail(ErrorKind::Unification, "cannot infer the subject of can here; write it explicitly");
                Typed s = infer(*e.subject);
                finish();
                return can_of(e, beta_reduce(zonk(s.term)), zonk(s.type));
            }
            case ExprKind::Name:
                return name(e, nullptr, dim_hint);
            }
            fail(ErrorKind::IllFormed, "unknown expression");
        });
    }

    Term check(const Expr& e, const Type& expected) {
        return located(e.span, [&]() -> Term {
            switch (e.kind) {
            case ExprKind::Wild:
                return fresh_meta(expected, "wildcard at " + where(e.span));
            case ExprKind::Can: {
                if (e.subject->kind != ExprKind::Wild) break;
                Type t = beta_reduce(zonk(expected));
                if (t->kind != TypeKind::Inv)
                    fail(ErrorKind::TypeMismatch, "can (_ {...}) used where " + show(t, ctx_) + " is expected");
                return can_of(e, t->src, t->base).term;
            }
            case ExprKind::Name:
                if (local(e.name) < 0) return name(e, expected, std::nullopt).term;
                break;
            default:
                break;
            }
            Typed r = infer(e, expected->dim);
            unify_types(r.type, expected, [&] { return "the term " + show(zonk(r.term), ctx_); });
            return r.term;
        });
    }

    Typed can_of(const Expr& e, const Term& subject, const Type& subject_type) {
        if (subject->kind != TermKind::Coh)
            fail(ErrorKind::CanWitness, "the subject of can must be a coherence, got " + show(subject, ctx_));
        const CohHead& h = *subject->coh;
        std::vector<int> keys = can_index(h);
        if (e.witnesses.size() < keys.size())
            fail(ErrorKind::CanWitness, "missing can witness for " +
                                            show(subject->args[keys[e.witnesses.size()]], ctx_) + " (variable " +
                                            h.ps.names[keys[e.witnesses.size()]] + "; expected " +
                                            std::to_string(keys.size()) + " witnesses, got " +
                                            std::to_string(e.witnesses.size()) + ")");
        if (e.witnesses.size() > keys.size())
            fail(ErrorKind::CanWitness, "too many can witnesses: expected " + std::to_string(keys.size()) +
                                            ", got " + std::to_string(e.witnesses.size()));
        std::vector<Term> ws;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            int l = keys[i];
            Type wt = inv(subst(h.ps.types[l], subject->args), subject->args[l]);
            ws.push_back(check(*e.witnesses[i], wt));
        }
        return {can(subject, keys, std::move(ws)), inv(subject_type, subject)};
    }

    // ---- applications --------------------------------------------------------

    std::optional<Schema> schema(const std::string& n) const {
        if (const Decl* d = env_.find(n)) return Schema{n, d->ctx, d->body, d->type, {}};
        if (n == "id") {
            auto h = id_head();
            return Schema{"id", h->ps, coh(h, identity_sub(1)), h->type, {}};
        }
        return std::nullopt;
    }

    const Schema& suspended(const std::string& n, int k) {
        auto key = std::make_pair(n, k);
        auto it = schemas_.find(key);
        if (it != schemas_.end()) return it->second;
        Schema s = *schema(n);
        if (k > 0) {
            s.ctx = suspend_n(s.ctx, k);
            s.body = suspend_n(s.body, k);
            s.type = suspend_n(s.type, k);
        }
        auto mask = explicit_mask(s.ctx);
        for (std::size_t l = 0; l < mask.size(); ++l)
            if (mask[l]) s.explicit_levels.push_back(static_cast<int>(l));
        return schemas_.emplace(key, std::move(s)).first->second;
    }

    Typed name(const Expr& e, const Type& expected, std::optional<int> dim_hint) {
        int l = local(e.name);
        if (l >= 0) {
            if (!e.args.empty())
                fail(ErrorKind::Arity, "the variable " + e.name + " cannot be applied to arguments");
            Typed r{var(l), ctx_.types[l]};
            if (expected) unify_types(r.type, expected, [&] { return "the variable " + e.name; });
            return r;
        }
        if (e.name == "comp" && !env_.find("comp")) return comp(e, expected, dim_hint);
        if (!schema(e.name)) fail(ErrorKind::UnknownName, "unknown name " + e.name);
        return app(e, expected, dim_hint);
    }

    Typed app(const Expr& e, const Type& expected, std::optional<int> dim_hint) {
        const Schema& base = suspended(e.name, 0);
        std::size_t nargs = base.explicit_levels.size();
        if (e.args.size() != nargs)
            fail(ErrorKind::Arity, e.name + " expects " + std::to_string(nargs) + " explicit argument" +
                                       (nargs == 1 ? "" : "s") + ", got " + std::to_string(e.args.size()));
        std::vector<std::optional<Typed>> given(nargs);
        std::optional<int> k;
        for (std::size_t i = 0; i < nargs; ++i) {
            if (indeterminate(*e.args[i])) continue;
            given[i] = infer(*e.args[i]);
            int ki = given[i]->type->dim - base.ctx.types[base.explicit_levels[i]]->dim;
            if (k && *k != ki)
                fail(ErrorKind::TypeMismatch, "the arguments of " + e.name +
                                                  " are not uniformly of higher dimension than its parameters");
            k = ki;
        }
        if (!k) {
            if (expected) k = expected->dim - base.type->dim;
            else if (dim_hint) k = *dim_hint - base.type->dim;
            else k = 0;
        }
        if (*k < 0)
            fail(ErrorKind::TypeMismatch, "the arguments of " + e.name + " have lower dimension than its parameters");
        const Schema& s = suspended(e.name, *k);
        Substitution sigma(s.ctx.size());
        std::size_t next = 0;
        for (std::size_t j = 0; j < s.ctx.size(); ++j) {
            Type tj = subst(s.ctx.types[j], sigma);
            bool is_explicit = next < nargs && s.explicit_levels[next] == static_cast<int>(j);
            if (!is_explicit) {
                sigma[j] = fresh_meta(tj, "implicit argument " + s.ctx.names[j] + " of " + e.name + " at " +
                                              where(e.span));
                continue;
            }
            std::size_t i = next++;
            if (given[i]) {
                sigma[j] = given[i]->term;
                unify_types(given[i]->type, tj, [&] {
                    return "argument " + std::to_string(i + 1) + " of " + e.name + " (" +
                           show(zonk(given[i]->term), ctx_) + ")";
                });
            } else {
                sigma[j] = check(*e.args[i], tj);
            }
        }
        Typed r{subst(s.body, sigma), subst(s.type, sigma)};
        if (expected) unify_types(r.type, expected, [&] { return "the application of " + e.name; });
        instances_.push_back({Instance{e.name, *k, s.ctx, sigma}, ctx_});
        solve_postponed();
        return r;
    }

    Typed comp(const Expr& e, const Type& expected, std::optional<int> dim_hint) {
        if (e.args.empty()) fail(ErrorKind::Arity, "comp expects at least one argument");
        if (e.args.size() == 1) {
            if (expected) return {check(*e.args[0], expected), expected};
            return infer(*e.args[0], dim_hint);
        }
        std::size_t m = e.args.size();
        std::vector<std::optional<Typed>> parts(m);
        std::optional<int> d;
        Type some_base;
        for (std::size_t i = 0; i < m; ++i) {
            if (indeterminate(*e.args[i])) continue;
            parts[i] = infer(*e.args[i]);
            Type t = zonk(parts[i]->type);
            if (t->kind != TypeKind::Arr)
                fail(ErrorKind::TypeMismatch, "comp argument " + show(zonk(parts[i]->term), ctx_) +
                                                  " is not a cell of positive dimension (its type is " +
                                                  show(t, ctx_) + ")");
            if (d && *d != t->dim) fail(ErrorKind::TypeMismatch, "the arguments of comp have different dimensions");
            d = t->dim;
            some_base = t->base;
        }
        if (!d) {
            if (expected) d = expected->dim;
            else if (dim_hint) d = *dim_hint;
            else fail(ErrorKind::Unification, "cannot infer the dimension of this composite");
        }
        if (!some_base && expected && expected->kind == TypeKind::Arr) some_base = expected->base;
        for (std::size_t i = 0; i < m; ++i) {
            if (parts[i]) continue;
            if (e.args[i]->kind == ExprKind::Wild) {
                if (!some_base) fail(ErrorKind::Unification, "cannot infer the type of a wildcard in comp");
                std::string origin = "wildcard at " + where(e.args[i]->span);
                Term s = fresh_meta(some_base, origin + " (source)");
                Term t = fresh_meta(some_base, origin + " (target)");
                Type a = arr(some_base, s, t);
                parts[i] = Typed{fresh_meta(a, origin), a};
            } else {
                parts[i] = infer(*e.args[i], d);
            }
        }
        for (std::size_t i = 0; i + 1 < m; ++i) {
            Type a = zonk(parts[i]->type), b = zonk(parts[i + 1]->type);
            if (a->kind != TypeKind::Arr || b->kind != TypeKind::Arr)
                fail(ErrorKind::TypeMismatch, "comp arguments must be cells of positive dimension");
            auto what = [&] {
                return "comp arguments " + show(zonk(parts[i]->term), ctx_) + " and " +
                       show(zonk(parts[i + 1]->term), ctx_);
            };
            unify_types(a->base, b->base, what);
            if (!unify(a->tgt, b->src))
                fail(ErrorKind::TypeMismatch, what() + " are not composable: " + show(zonk(a->tgt), ctx_) +
                                                  " is not " + show(zonk(b->src), ctx_));
        }
        std::vector<Term> cells;
        std::vector<Type> types;
        for (auto& p : parts) {
            cells.push_back(p->term);
            types.push_back(zonk(p->type));
        }
        Term t = make_comp(cells, types);
        Type a = arr(types.front()->base, types.front()->src, types.back()->tgt);
        if (expected) unify_types(a, expected, [&] { return std::string("the composite"); });
        solve_postponed();
        return {t, a};
    }

    // ---- metavariables and unification ---------------------------------------

    Term fresh_meta(const Type& t, std::string origin) {
        int id = static_cast<int>(metas_.size());
        metas_.push_back({t, nullptr, std::move(origin)});
        return meta(id);
    }

    Term zonk(const Term& t) {
        if (!t->has_meta) return t;
        switch (t->kind) {
        case TermKind::Meta: {
            auto& m = metas_[t->index];
            if (!m.solution) return t;
            m.solution = zonk(m.solution);
            return m.solution;
        }
        case TermKind::Coh: return coh(t->coh, zonk_all(t->args));
        case TermKind::Rec: return rec(t->rec, zonk_all(t->args));
        case TermKind::Coind: {
            auto a = zonk_all(t->args);
            std::array<Term, 7> c;
            for (int i = 0; i < 7; ++i) c[i] = a[i];
            return coind(c);
        }
        case TermKind::Can: {
            auto a = zonk_all(t->args);
            Term s = a[0];
            a.erase(a.begin());
            return can(s, t->keys, std::move(a));
        }
        case TermKind::Destr: return destr(t->destr, zonk(t->args[0]));
        default: return t;
        }
    }

    std::vector<Term> zonk_all(const std::vector<Term>& v) {
        std::vector<Term> out;
        out.reserve(v.size());
        for (const auto& t : v) out.push_back(zonk(t));
        return out;
    }

    Type zonk(const Type& a) {
        if (!a->has_meta) return a;
        switch (a->kind) {
        case TypeKind::Obj: return a;
        case TypeKind::Arr: return arr(zonk(a->base), zonk(a->src), zonk(a->tgt));
        case TypeKind::Inv: return inv(zonk(a->base), zonk(a->src));
        }
        return a;
    }

    bool occurs(int id, const Term& t) {
        if (!t->has_meta) return false;
        if (t->kind == TermKind::Meta) return t->index == id;
        for (const auto& a : t->args)
            if (occurs(id, a)) return true;
        return false;
    }

    Type light_type(const Term& t) {
        switch (t->kind) {
        case TermKind::Var: return ctx_.types[t->index];
        case TermKind::Meta: return metas_[t->index].type;
        case TermKind::Coh: return subst(t->coh->type, t->args);
        case TermKind::Destr: {
            Type a = light_type(t->args[0]);
            if (!a) return nullptr;
            a = zonk(a);
            if (a->kind != TypeKind::Inv) return nullptr;
            return destructor_type(t->destr, t->args[0], a);
        }
        case TermKind::Can: {
            Type a = light_type(t->args[0]);
            return a ? inv(a, t->args[0]) : nullptr;
        }
        case TermKind::Coind: {
            Type a = light_type(t->args[0]);
            return a ? inv(a, t->args[0]) : nullptr;
        }
        case TermKind::Rec: {
            Type b = validate_rec_head(t->rec);
            return inv(subst(b, t->args), subst(t->rec->comps[kT], t->args));
        }
        }
        return nullptr;
    }

    bool assign(int id, const Term& v) {
        if (occurs(id, v)) return false;
        metas_[id].solution = v;
        ++solved_;
        Type vt = light_type(v);
        if (vt && !unify_type(metas_[id].type, vt)) return false;
        return true;
    }

    bool same_head(const CohHeadPtr& a, const CohHeadPtr& b) { return a == b || equal(*a, *b); }
    bool same_head(const RecHeadPtr& a, const RecHeadPtr& b) { return a == b || equal(*a, *b); }

    bool unify_all(const std::vector<Term>& a, const std::vector<Term>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!unify(a[i], b[i])) return false;
        return true;
    }

    bool unify(const Term& x, const Term& y) {
        Term a = zonk(x), b = zonk(y);
        if (a == b) return true;
        if (!a->has_meta && !b->has_meta) return convertible(a, b);
        if (a->kind == TermKind::Meta) return assign(a->index, b);
        if (b->kind == TermKind::Meta) return assign(b->index, a);
        if (a->kind == b->kind) {
            bool decomposable = false;
            switch (a->kind) {
            case TermKind::Var: decomposable = a->index == b->index; break;
            case TermKind::Coh: decomposable = same_head(a->coh, b->coh); break;
            case TermKind::Rec: decomposable = same_head(a->rec, b->rec); break;
            case TermKind::Destr: decomposable = a->destr == b->destr; break;
            case TermKind::Can: decomposable = a->keys == b->keys; break;
            case TermKind::Coind: decomposable = true; break;
            default: break;
            }
            if (decomposable && unify_all(a->args, b->args)) return true;
        }
        Term ra = beta_reduce(a), rb = beta_reduce(b);
        if (ra != a || rb != b) return unify(ra, rb);
        postponed_.push_back({a, b});
        return true;
    }

    bool unify_type(const Type& x, const Type& y) {
        Type a = zonk(x), b = zonk(y);
        if (a == b) return true;
        if (a->kind != b->kind) return false;
        switch (a->kind) {
        case TypeKind::Obj: return true;
        case TypeKind::Arr: return unify_type(a->base, b->base) && unify(a->src, b->src) && unify(a->tgt, b->tgt);
        case TypeKind::Inv: return unify_type(a->base, b->base) && unify(a->src, b->src);
        }
        return false;
    }

    template <class What>
    void unify_types(const Type& actual, const Type& expected, What what) {
        if (!unify_type(actual, expected))
            fail(ErrorKind::TypeMismatch, what() + " has type " + brief(show(zonk(actual), ctx_)) + " but " +
                                              brief(show(zonk(expected), ctx_)) + " was expected");
    }

    void solve_postponed() {
        while (!postponed_.empty()) {
            int before = solved_;
            auto pending = std::move(postponed_);
            postponed_.clear();
            for (auto& [a, b] : pending) {
                Term za = zonk(a), zb = zonk(b);
                if (!za->has_meta && !zb->has_meta) {
                    if (!convertible(za, zb))
                        fail(ErrorKind::TypeMismatch, "cannot identify " + brief(show(za, ctx_)) + " with " +
                                                          brief(show(zb, ctx_)));
                    continue;
                }
                if (!unify(za, zb))
                    fail(ErrorKind::TypeMismatch, "cannot identify " + brief(show(za, ctx_)) + " with " +
                                                      brief(show(zb, ctx_)));
            }
            if (solved_ == before) break;
        }
    }

    // Solves what can be solved and reports any metavariable left open.
    void finish() {
        solve_postponed();
        for (auto& [a, b] : postponed_) {
            Term za = zonk(a), zb = zonk(b);
            if (!za->has_meta && !zb->has_meta && convertible(za, zb)) continue;
            fail(ErrorKind::Unification, "could not solve the constraint " + brief(show(za, ctx_)) + " = " +
                                             brief(show(zb, ctx_)));
        }
        postponed_.clear();
        for (std::size_t i = checked_; i < metas_.size(); ++i) {
            if (metas_[i].solution) continue;
            fail(ErrorKind::Unification, "could not infer the " + metas_[i].origin + " (?" + std::to_string(i) +
                                             "); give it explicitly");
        }
        checked_ = metas_.size();
    }

    const Environment& env_;
    Context ctx_;
    std::vector<MetaInfo> metas_;
    std::size_t checked_ = 0;
    int solved_ = 0;
    std::vector<std::pair<Term, Term>> postponed_;
    std::map<std::pair<std::string, int>, Schema> schemas_;
    std::vector<std::pair<Instance, Context>> instances_;
    bool ih_allowed_ = false;
    int ih_n_ = 0;
    Type seed_type_;
    Term seed_;
};

} // namespace

Elaborated elaborate_decl(const Environment& env, const SurfaceDecl& d) {
    try {
        return Elab(env).run(d);
    } catch (Error& err) {
        if (!err.located()) err.locate(d.span.line, d.span.column);
        throw;
    }
}

} // namespace icatt
