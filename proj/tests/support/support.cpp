#include "support.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_set>

#include "icatt/inverse.hpp"
#include "icatt/meta.hpp"
#include "icatt/parser.hpp"
#include "icatt/printer.hpp"
#include "icatt/ps.hpp"

#ifndef ICATT_SOURCE_DIR
#define ICATT_SOURCE_DIR "."
#endif

namespace icatt::testing {

std::string source_path(const std::string& relative) { return std::string(ICATT_SOURCE_DIR) + "/" + relative; }

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Corpus load(const std::string& text) {
    Corpus c;
    auto start = std::chrono::steady_clock::now();
    for (const auto& sd : parse(text)) {
        Elaborated el = elaborate_decl(c.env, sd);
        check_decl(c.env, el.decl);
        c.decls.push_back(std::move(el));
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return c;
}

const Corpus& corpus() {
    static const Corpus c = load(read_text(source_path("proofs/invertibility.catt")));
    return c;
}

Outcome check_text(const std::string& text) {
    Outcome out;
    Environment env;
    try {
        for (const auto& sd : parse(text)) {
            Elaborated el = elaborate_decl(env, sd);
            check_decl(env, el.decl);
            ++out.accepted;
        }
    } catch (const Error& e) {
        out.category = std::string(category_name(e.kind()));
        out.message = e.what();
    }
    return out;
}

Context rec_component_context(const RecHead& h, int component) {
    if (component < kTILU) return walking_equiv(h.n + 1);
    auto shared = std::make_shared<RecHead>(h);
    return equiv_ind_context(h.n, h.comps[kT], validate_rec_head(shared));
}

namespace {

void collect_cans(const Term& t, const Context& ctx, std::vector<Located>& out,
                  std::unordered_set<const RecHead*>& seen) {
    if (t->kind == TermKind::Can) out.push_back({t, ctx});
    if (t->kind == TermKind::Rec && seen.insert(t->rec.get()).second) {
        for (int i = 0; i < 7; ++i) collect_cans(t->rec->comps[i], rec_component_context(*t->rec, i), out, seen);
    }
    for (const auto& a : t->args) collect_cans(a, ctx, out, seen);
}

} // namespace

std::vector<Located> can_occurrences(const Decl& d) {
    std::vector<Located> all;
    std::unordered_set<const RecHead*> seen;
    collect_cans(d.body, d.ctx, all, seen);
    std::vector<Located> out;
    std::set<std::string> distinct;
    for (auto& loc : all)
        if (distinct.insert(show(loc.ctx) + " |- " + show(loc.term, loc.ctx)).second) out.push_back(std::move(loc));
    return out;
}

std::vector<Located> corpus_terms(const Elaborated& e) {
    std::vector<Located> out{{e.decl.body, e.decl.ctx}};
    for (std::size_t i = 0; i < e.instances.size(); ++i)
        for (const auto& a : e.instances[i].args) out.push_back({a, e.instance_contexts[i]});
    return out;
}

// ---------------------------------------------------------------------------
// Pasting schemes from the rules

bool ps_by_rules(const Context& c) {
    std::size_t n = c.size();
    if (n == 0) return false;
    // judgments[k]: variables x with (prefix of length k) |-ps x : type(x)
    std::vector<std::set<int>> judgments(n + 1);
    auto saturate = [&](std::size_t k, std::set<int> j) {
        std::vector<int> work(j.begin(), j.end());
        while (!work.empty()) {
            int f = work.back();
            work.pop_back();
            const Type& a = c.types[f];
            if (a->kind != TypeKind::Arr || a->tgt->kind != TermKind::Var) continue;
            if (j.insert(a->tgt->index).second) work.push_back(a->tgt->index);
        }
        judgments[k] = std::move(j);
    };
    if (c.types[0]->kind == TypeKind::Obj) saturate(1, {0});
    for (std::size_t k = 3; k <= n; k += 2) {
        int y = static_cast<int>(k) - 2, f = static_cast<int>(k) - 1;
        const Type& tf = c.types[f];
        if (tf->kind != TypeKind::Arr) continue;
        if (tf->src->kind != TermKind::Var || tf->tgt->kind != TermKind::Var || tf->tgt->index != y) continue;
        int x = tf->src->index;
        if (!judgments[k - 2].count(x)) continue;
        if (!equal(c.types[x], tf->base) || !equal(c.types[y], tf->base)) continue;
        saturate(k, {f});
    }
    for (int x : judgments[n])
        if (c.types[x]->kind == TypeKind::Obj) return true;
    return false;
}

namespace {

std::vector<Type> entry_options(const Context& c, int max_dim) {
    std::vector<Type> out{obj()};
    for (std::size_t a = 0; a < c.size(); ++a) {
        if (c.types[a]->dim + 2 > max_dim) continue;
        for (std::size_t b = 0; b < c.size(); ++b)
            if (equal(c.types[a], c.types[b]))
                out.push_back(arr(c.types[a], var(static_cast<int>(a)), var(static_cast<int>(b))));
    }
    return out;
}

} // namespace

std::vector<Context> all_contexts(int max_entries, int max_dim) {
    std::vector<Context> out;
    std::function<void(Context&)> go = [&](Context& c) {
        out.push_back(c);
        if (static_cast<int>(c.size()) == max_entries) return;
        for (const auto& t : entry_options(c, max_dim)) {
            c.push("v" + std::to_string(c.size()), t);
            go(c);
            c.names.pop_back();
            c.types.pop_back();
        }
    };
    Context c;
    go(c);
    return out;
}

Context random_context(std::mt19937_64& rng, int entries, int max_dim) {
    Context c;
    for (int i = 0; i < entries; ++i) {
        auto opts = entry_options(c, max_dim);
        // Bias towards extending a chain so that ps contexts appear often.
        std::size_t k;
        if (c.size() >= 2 && rng() % 3 != 0) {
            std::vector<std::size_t> fresh_target;
            for (std::size_t o = 1; o < opts.size(); ++o)
                if (opts[o]->tgt->index == static_cast<int>(c.size()) - 1) fresh_target.push_back(o);
            k = fresh_target.empty() ? rng() % opts.size() : fresh_target[rng() % fresh_target.size()];
        } else {
            k = rng() % opts.size();
        }
        c.push("v" + std::to_string(c.size()), opts[k]);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Neutrals by brute force

std::vector<Term> brute_force_neutrals(int n) {
    Context e = walking_equiv(1);
    Checker checker(e);
    std::vector<Term> found;
    std::set<std::string> seen;
    const Destructor all[] = {Destructor::LInv, Destructor::RInv, Destructor::LUnit,
                              Destructor::RUnit, Destructor::LWit, Destructor::RWit};
    std::vector<Term> frontier;
    for (int l = 0; l < static_cast<int>(e.size()); ++l) frontier.push_back(var(l));
    for (int length = 0; length <= n + 1; ++length) {
        std::vector<Term> next;
        for (const auto& t : frontier) {
            Type a;
            try {
                a = checker.infer(t);
            } catch (const Error&) {
                continue;
            }
            if (a->kind != TypeKind::Inv && a->dim + 1 == n && seen.insert(show(t, e)).second) found.push_back(t);
            for (auto d : all) next.push_back(destr(d, t));
        }
        frontier = std::move(next);
    }
    return found;
}

// ---------------------------------------------------------------------------
// Random invertible cells

RandomTerms::RandomTerms(std::uint64_t seed) : rng_(seed) {
    int objects = 3 + pick(2);
    for (int i = 0; i < objects; ++i) {
        objects_.push_back(static_cast<int>(ctx_.size()));
        ctx_.push("x" + std::to_string(i), obj());
    }
    out_.resize(objects);
    int arrows = 0;
    auto add = [&](int s, int t) {
        out_[s].push_back(static_cast<int>(ctx_.size()));
        ctx_.push("f" + std::to_string(arrows++), arr(obj(), var(objects_[s]), var(objects_[t])));
    };
    for (int i = 0; i + 1 < objects; ++i) {
        add(i, i + 1);
        if (pick(2)) add(i, i + 1);
    }
    for (int k = pick(3); k > 0; --k) {
        int s = pick(objects), t = pick(objects);
        add(s, t);
    }
}

int RandomTerms::pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

std::vector<int> RandomTerms::random_path() {
    std::vector<int> path;
    int at = pick(static_cast<int>(objects_.size()));
    int length = pick(4);
    for (int i = 0; i < length && !out_[at].empty(); ++i) {
        int f = out_[at][pick(static_cast<int>(out_[at].size()))];
        path.push_back(f);
        const Type& a = ctx_.types[f];
        at = a->tgt->index;
    }
    if (path.empty()) path.push_back(-1 - objects_[at]);  // encodes the start object
    return path;
}

namespace {

int object_level(int i) { return i == 0 ? 0 : 2 * i - 1; }

Type ps_arrow(int lo, int hi) { return arr(obj(), var(object_level(lo)), var(object_level(hi))); }

} // namespace

Term RandomTerms::bracket(const Context& ps, int lo, int hi, int depth) {
    (void)ps;
    if (hi == lo) {
        Term i = make_id(obj(), var(object_level(lo)));
        if (depth < 2 && pick(4) == 0) return make_comp({i, i}, {ps_arrow(lo, lo), ps_arrow(lo, lo)});
        return i;
    }
    if (hi - lo == 1) {
        Term f = var(2 * hi);
        switch (pick(6)) {
        case 0: return make_comp({make_id(obj(), var(object_level(lo))), f}, {ps_arrow(lo, lo), ps_arrow(lo, hi)});
        case 1: return make_comp({f, make_id(obj(), var(object_level(hi)))}, {ps_arrow(lo, hi), ps_arrow(hi, hi)});
        default: return f;
        }
    }
    if (hi - lo >= 3 && pick(3) == 0) {
        int a = lo + 1 + pick(hi - lo - 2);
        int b = a + 1 + pick(hi - a - 1);
        return make_comp({bracket(ps, lo, a, depth + 1), bracket(ps, a, b, depth + 1), bracket(ps, b, hi, depth + 1)},
                         {ps_arrow(lo, a), ps_arrow(a, b), ps_arrow(b, hi)});
    }
    int mid = lo + 1 + pick(hi - lo - 1);
    return make_comp({bracket(ps, lo, mid, depth + 1), bracket(ps, mid, hi, depth + 1)},
                     {ps_arrow(lo, mid), ps_arrow(mid, hi)});
}

Invertible RandomTerms::invertible() {
    std::vector<int> path = random_path();
    bool empty = path.size() == 1 && path[0] < 0;
    int m = empty ? 0 : static_cast<int>(path.size());
    Context ps = build_ps(linear_shape(m)).body;
    Substitution sigma(ps.size());
    if (empty) {
        sigma[0] = var(-1 - path[0]);
    } else {
        sigma[0] = ctx_.types[path[0]]->src;
        for (int i = 1; i <= m; ++i) {
            sigma[object_level(i)] = ctx_.types[path[i - 1]]->tgt;
            sigma[2 * i] = var(path[i - 1]);
        }
    }
    int stages = 1 + pick(3);
    std::vector<Term> brackets;
    for (int i = 0; i <= stages; ++i) brackets.push_back(bracket(ps, 0, m, 0));
    Type boundary = ps_arrow(0, m);
    std::vector<Term> cells, witnesses;
    std::vector<Type> types;
    for (int i = 0; i < stages; ++i) {
        auto head = make_coh_head(ps, arr(boundary, brackets[i], brackets[i + 1]), "rnd");
        Term c = coh(head, sigma);
        cells.push_back(c);
        types.push_back(subst(head->type, sigma));
        witnesses.push_back(can(c, {}, {}));
    }
    if (stages == 1) return {cells[0], types[0], witnesses[0]};
    Term comp = make_comp(cells, types);
    Type t = arr(types[0]->base, types[0]->src, types.back()->tgt);
    return {comp, t, can(comp, can_index(*comp->coh), witnesses)};
}

Term RandomTerms::categorical() {
    Invertible w = invertible();
    const Type& a = w.type;
    Type back = arr(a->base, a->tgt, a->src);
    switch (pick(11)) {
    case 0: return destr(Destructor::LInv, w.witness);
    case 1: return destr(Destructor::RInv, w.witness);
    case 2: return destr(Destructor::LUnit, w.witness);
    case 3: return destr(Destructor::RUnit, w.witness);
    case 4: return destr(Destructor::LInv, destr(Destructor::LWit, w.witness));
    case 5: return destr(Destructor::RInv, destr(Destructor::RWit, w.witness));
    case 6: return destr(Destructor::LUnit, destr(Destructor::LWit, w.witness));
    case 7: return destr(Destructor::RUnit, destr(Destructor::RWit, w.witness));
    case 8: return make_comp({w.cell, destr(Destructor::RInv, w.witness)}, {a, back});
    case 9: return make_comp({destr(Destructor::LInv, w.witness), w.cell}, {back, a});
    default: return destr(Destructor::LInv, eta_components(w));
    }
}

Term RandomTerms::coinductive() {
    Invertible w = invertible();
    auto side = [&](bool canonical, Destructor d) {
        return canonical ? canonical_component(w.witness, d) : destr(d, w.witness);
    };
    bool left = pick(2), right = pick(2);
    return coind({w.cell, side(left, Destructor::LInv), side(right, Destructor::RInv),
                  side(left, Destructor::LUnit), side(right, Destructor::RUnit), side(left, Destructor::LWit),
                  side(right, Destructor::RWit)});
}

Term eta_components(const Invertible& w) {
    auto d = [&](Destructor k) { return destr(k, w.witness); };
    return coind({w.cell, d(Destructor::LInv), d(Destructor::RInv), d(Destructor::LUnit), d(Destructor::RUnit),
                  d(Destructor::LWit), d(Destructor::RWit)});
}

} // namespace icatt::testing
