#include "icatt/inverse.hpp"

#include <cstdlib>
#include <functional>
#include <map>

#include "icatt/kernel.hpp"
#include "icatt/meta.hpp"

namespace icatt {

namespace {

int side_index(Side s) { return s == Side::Left ? 0 : 1; }

Destructor inverse_destr(Side s) { return s == Side::Left ? Destructor::LInv : Destructor::RInv; }
Destructor unit_destr(Side s) { return s == Side::Left ? Destructor::LUnit : Destructor::RUnit; }
Destructor witness_destr(Side s) { return s == Side::Left ? Destructor::LWit : Destructor::RWit; }

Substitution renaming(const std::vector<int>& iso) {
    Substitution r(iso.size());
    for (std::size_t l = 0; l < iso.size(); ++l) r[iso[l]] = var(static_cast<int>(l));
    return r;
}

// A depth-n node of the original ps: its stack of n-cells s_0..s_k and its
// k top-dimensional children x_1..x_k.
struct Column {
    std::vector<int> path;
    std::vector<int> s;
    std::vector<int> x;  // x[i-1] is x_i
};

// Layout of a depth-n column in an intermediate ps: the number of children
// and, optionally, one child carrying a cell of the next dimension.
struct ColumnLayout {
    int children = 0;
    int raised = 0;  // 1-based child index extended by one cell, 0 for none
};

class Construction {
public:
    explicit Construction(const CohHeadPtr& h) : h_(h), ps_(validate_coh_head(h)) {
        const Type& a = h->type;
        if (a->kind != TypeKind::Arr) fail(ErrorKind::TypeMismatch, "can requires a coherence of positive dimension");
        base_ = a->base;
        u_ = a->src;
        v_ = a->tgt;
        n_ = base_->dim + 1;
        top_ = n_ + 1;

        out_.gamma_inv = ps_.body;
        for (std::size_t l = 0; l < ps_.body.size(); ++l) {
            if (ps_.var_dim(static_cast<int>(l)) != top_) continue;
            int w = static_cast<int>(out_.gamma_inv.size());
            witness_of_[static_cast<int>(l)] = w;
            out_.top_vars.push_back(static_cast<int>(l));
            out_.gamma_inv.push(fresh_name("e" + ps_.body.names[l]),
                                inv(ps_.body.types[l], var(static_cast<int>(l))));
        }
        for (std::size_t g = 0; g < ps_.nodes.size(); ++g) {
            if (ps_.nodes[g].depth != n_) continue;
            Column c;
            c.path = ps_.path_of(static_cast<int>(g));
            c.s = ps_.nodes[g].cells;
            for (int ch : ps_.nodes[g].children) c.x.push_back(ps_.nodes[ch].cells[0]);
            columns_.push_back(std::move(c));
        }
    }

    GenericInverse build() {
        Checker ck(out_.gamma_inv);
        if (ps_.dim <= n_) {
            auto back = make_coh_head(ps_.body, arr(base_, v_, u_), label("inverse"));
            Term t = coh(h_, identity_sub(ps_.body.size()));
            Term ti = coh(back, identity_sub(ps_.body.size()));
            Type bt = h_->type;
            Type back_t = back->type;
            for (Side s : {Side::Left, Side::Right}) {
                int i = side_index(s);
                out_.inverse[i] = ti;
                Type ut = s == Side::Left
                              ? arr(arr(base_, v_, v_), make_comp({ti, t}, {back_t, bt}), make_id(base_, v_))
                              : arr(arr(base_, u_, u_), make_comp({t, ti}, {bt, back_t}), make_id(base_, u_));
                auto uh = make_coh_head(ps_.body, ut, label(s == Side::Left ? "cancel-left" : "cancel-right"));
                out_.unit[i] = coh(uh, identity_sub(ps_.body.size()));
                out_.witness[i] = can(out_.unit[i], {}, {});
            }
        } else {
            OppositePs op = opposite_ps(top_, ps_);
            op_iso_ = op.iso;
            auto op_head = make_coh_head(op.ps.body, subst(arr(base_, v_, u_), renaming(op.iso)), label("inverse"));
            op_head_ = op_head;
            for (Side s : {Side::Left, Side::Right}) {
                int i = side_index(s);
                Substitution g(op.iso.size());
                for (std::size_t l = 0; l < op.iso.size(); ++l) {
                    int y = op.iso[l];
                    auto it = witness_of_.find(y);
                    g[l] = it == witness_of_.end() ? var(y) : destr(inverse_destr(s), var(it->second));
                }
                out_.inverse[i] = coh(op_head, std::move(g));
                cancellator(s);
            }
        }
        for (Side s : {Side::Left, Side::Right}) {
            int i = side_index(s);
            Term t = coh(h_, identity_sub(ps_.body.size()));
            Type bt = h_->type;
            ck.check(out_.inverse[i], arr(base_, v_, u_), "generic inverse");
            Type ut = s == Side::Left
                          ? arr(arr(base_, v_, v_), make_comp({out_.inverse[i], t}, {arr(base_, v_, u_), bt}),
                                make_id(base_, v_))
                          : arr(arr(base_, u_, u_), make_comp({t, out_.inverse[i]}, {bt, arr(base_, v_, u_)}),
                                make_id(base_, u_));
            ck.check(out_.unit[i], ut, "generic cancellator");
            ck.check(out_.witness[i], inv(ut, out_.unit[i]), "generic cancellation witness");
        }
        return std::move(out_);
    }

private:
    std::string label(const std::string& what) const {
        return h_->label.empty() ? what : what + "(" + h_->label + ")";
    }

    std::string fresh_name(const std::string& base) const {
        auto taken = [&](const std::string& n) {
            for (const auto& m : out_.gamma_inv.names)
                if (m == n) return true;
            return false;
        };
        std::string n = base;
        for (int i = 0; taken(n); ++i) n = base + "'" + std::to_string(i);
        return n;
    }

    Term witness(int x) const { return var(witness_of_.at(x)); }

    // ---- intermediate pasting schemes ------------------------------------

    PsContext layout_ps(const std::vector<ColumnLayout>& layout) const {
        std::size_t ordinal = 0;
        std::function<Shape(int)> go = [&](int g) {
            Shape s;
            const auto& node = ps_.nodes[g];
            if (node.depth == n_) {
                const auto& c = layout[ordinal++];
                s.children.resize(c.children);
                if (c.raised > 0) s.children[c.raised - 1].children.resize(1);
                return s;
            }
            for (int ch : node.children) s.children.push_back(go(ch));
            return s;
        };
        return build_ps(go(0));
    }

    // Level in an intermediate ps of an original variable of dimension < n.
    int lower(const PsContext& p, int y) const {
        return p.level_at(ps_.path_of(ps_.node_of[y]), ps_.pos_of[y]);
    }

    static std::vector<int> child_path(const std::vector<int>& path, int j) {
        auto p = path;
        p.push_back(j);
        return p;
    }

    int cell(const PsContext& p, std::size_t col, int j) const { return p.level_at(columns_[col].path, j); }
    int child(const PsContext& p, std::size_t col, int j) const {
        return p.level_at(child_path(columns_[col].path, j), 0);
    }

    // Fills the entries of a substitution for the variables below dimension n.
    template <class F>
    void fill_lower(const PsContext& p, Substitution& s, F image) const {
        for (std::size_t y = 0; y < ps_.body.size(); ++y)
            if (ps_.var_dim(static_cast<int>(y)) < n_) s[lower(p, static_cast<int>(y))] = image(static_cast<int>(y));
    }

    // Stage with r[c] remaining pairs in each column.
    struct Stage {
        PsContext ps;
        Substitution to_gamma;
        CohHeadPtr head;   // the unbiased composite over ps
        Type type;         // its type over ps
    };

    int anchor(Side side, std::size_t col) const {
        return side == Side::Left ? static_cast<int>(columns_[col].x.size()) : 0;
    }

    // Image of the boundary cell b of the original ps in an intermediate one,
    // placing the anchor n-cell of every column at the given position.
    Substitution boundary(Side side, const PsContext& p, const std::vector<int>& positions) const {
        Substitution pi(ps_.body.size());
        for (std::size_t y = 0; y < ps_.body.size(); ++y)
            if (ps_.var_dim(static_cast<int>(y)) < n_) pi[y] = var(lower(p, static_cast<int>(y)));
        for (std::size_t c = 0; c < columns_.size(); ++c)
            pi[columns_[c].s[anchor(side, c)]] = var(cell(p, c, positions[c]));
        return pi;
    }

    Type composite_type(Side side, const PsContext& p, const std::vector<int>& last) const {
        std::vector<int> first(columns_.size(), 0);
        Substitution pf = boundary(side, p, first), pl = boundary(side, p, last);
        const Term& b = side == Side::Left ? v_ : u_;
        return arr(subst(base_, pf), subst(b, pf), subst(b, pl));
    }

    Stage stage(Side side, const std::vector<int>& r) const {
        Stage st;
        std::vector<ColumnLayout> layout;
        for (int ri : r) layout.push_back({2 * ri, 0});
        st.ps = layout_ps(layout);
        st.to_gamma.assign(st.ps.body.size(), nullptr);
        fill_lower(st.ps, st.to_gamma, [](int y) { return var(y); });
        std::vector<int> last;
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            const auto& col = columns_[c];
            int k = static_cast<int>(col.x.size());
            int rc = r[c];
            for (int j = 0; j <= 2 * rc; ++j) {
                int si = side == Side::Left ? (k - rc) + std::abs(rc - j) : rc - std::abs(rc - j);
                st.to_gamma[cell(st.ps, c, j)] = var(col.s[si]);
            }
            for (int j = 1; j <= 2 * rc; ++j) {
                Term t;
                if (side == Side::Left)
                    t = j <= rc ? destr(Destructor::LInv, witness(col.x[k - j])) : var(col.x[k - rc + (j - rc) - 1]);
                else
                    t = j <= rc ? var(col.x[j - 1]) : destr(Destructor::RInv, witness(col.x[2 * rc - j]));
                st.to_gamma[child(st.ps, c, j)] = t;
            }
            last.push_back(2 * rc);
        }
        st.type = composite_type(side, st.ps, last);
        st.head = make_coh_head(st.ps.body, st.type, label("composite"));
        return st;
    }

    // Image of the original ps (or its opposite) as one half of the doubled
    // stage: `first` selects the half starting at position 0.
    Substitution half(Side side, const PsContext& p0, bool opposite_half) const {
        std::size_t size = opposite_half ? op_iso_.size() : ps_.body.size();
        Substitution s(size);
        std::map<int, Term> orig;
        for (std::size_t y = 0; y < ps_.body.size(); ++y)
            if (ps_.var_dim(static_cast<int>(y)) < n_) orig[static_cast<int>(y)] = var(lower(p0, static_cast<int>(y)));
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            const auto& col = columns_[c];
            int k = static_cast<int>(col.x.size());
            bool first = (side == Side::Left) == opposite_half;
            for (int j = 0; j <= k; ++j) {
                int pos;
                if (side == Side::Left) pos = first ? k - j : k + j;
                else pos = first ? j : 2 * k - j;
                orig[col.s[j]] = var(cell(p0, c, pos));
            }
            for (int i = 1; i <= k; ++i) {
                int ci;
                if (side == Side::Left) ci = first ? k + 1 - i : k + i;
                else ci = first ? i : 2 * k + 1 - i;
                orig[col.x[i - 1]] = var(child(p0, c, ci));
            }
        }
        for (std::size_t l = 0; l < size; ++l) s[l] = orig.at(opposite_half ? op_iso_[l] : static_cast<int>(l));
        return s;
    }

    Term composite_in(const PsContext& p, const std::vector<int>& levels) const {
        std::vector<Term> cells;
        std::vector<Type> types;
        for (int l : levels) {
            cells.push_back(var(l));
            types.push_back(p.body.types[l]);
        }
        return make_comp(cells, types);
    }

    void cancellator(Side side) {
        std::vector<int> r;
        for (const auto& c : columns_) r.push_back(static_cast<int>(c.x.size()));
        std::vector<Term> cells;
        std::vector<std::pair<Term, std::vector<Term>>> witnesses;

        // Unbiasing: t^L * t (or t * t^R) to the composite of the doubled stage.
        Stage st = stage(side, r);
        {
            Checker cp(st.ps.body);
            Term t_half = coh(h_, half(side, st.ps, false));
            Term o_half = coh(op_head_, half(side, st.ps, true));
            Term lhs = side == Side::Left ? make_comp({o_half, t_half}, {cp.infer(o_half), cp.infer(t_half)})
                                          : make_comp({t_half, o_half}, {cp.infer(t_half), cp.infer(o_half)});
            Term rhs = coh(st.head, identity_sub(st.ps.body.size()));
            auto head = make_coh_head(st.ps.body, arr(st.type, lhs, rhs), label("unbias"));
            cells.push_back(coh(head, st.to_gamma));
            witnesses.push_back({cells.back(), {}});
        }

        for (std::size_t c = 0; c < columns_.size(); ++c) {
            const auto& col = columns_[c];
            int k = static_cast<int>(col.x.size());
            while (r[c] > 0) {
                int rc = r[c];
                int x = side == Side::Left ? col.x[k - rc] : col.x[rc - 1];

                // Regroup the innermost pair into a single cell d.
                std::vector<ColumnLayout> lay0;
                for (std::size_t c2 = 0; c2 < columns_.size(); ++c2) lay0.push_back({2 * r[c2], 0});
                lay0[c] = {2 * rc - 1, 0};
                PsContext p0 = layout_ps(lay0);
                Substitution rho(p0.body.size());
                fill_lower(p0, rho, [&](int y) { return var(lower(st.ps, y)); });
                for (std::size_t c2 = 0; c2 < columns_.size(); ++c2) {
                    int rr = r[c2];
                    if (c2 != c) {
                        for (int j = 0; j <= 2 * rr; ++j) rho[cell(p0, c2, j)] = var(cell(st.ps, c2, j));
                        for (int j = 1; j <= 2 * rr; ++j) rho[child(p0, c2, j)] = var(child(st.ps, c2, j));
                        continue;
                    }
                    for (int j = 0; j <= 2 * rr - 1; ++j)
                        rho[cell(p0, c2, j)] = var(cell(st.ps, c2, j < rr ? j : j + 1));
                    for (int j = 1; j <= 2 * rr - 1; ++j) {
                        if (j < rr) rho[child(p0, c2, j)] = var(child(st.ps, c2, j));
                        else if (j == rr)
                            rho[child(p0, c2, j)] = composite_in(st.ps, {child(st.ps, c2, rr), child(st.ps, c2, rr + 1)});
                        else rho[child(p0, c2, j)] = var(child(st.ps, c2, j + 1));
                    }
                }
                std::vector<int> last0;
                for (std::size_t c2 = 0; c2 < columns_.size(); ++c2) last0.push_back(lay0[c2].children);
                Type type0 = composite_type(side, p0, last0);
                auto head0 = make_coh_head(p0.body, type0, label("composite"));
                {
                    auto head = make_coh_head(
                        st.ps.body,
                        arr(st.type, coh(st.head, identity_sub(st.ps.body.size())), coh(head0, rho)),
                        label("regroup"));
                    cells.push_back(coh(head, st.to_gamma));
                    witnesses.push_back({cells.back(), {}});
                }
                Substitution sigma0 = compose(rho, st.to_gamma);

                // Cancel d against an identity using the unit of the witness.
                std::vector<ColumnLayout> lay1 = lay0;
                lay1[c].raised = rc;
                PsContext p1 = layout_ps(lay1);
                std::vector<int> raised_path = child_path(child_path(col.path, rc), 1);
                int d2 = p1.level_at(child_path(col.path, rc), 1);
                int alpha = p1.level_at(raised_path, 0);
                Substitution in_minus(p0.body.size()), in_plus(p0.body.size());
                fill_lower(p0, in_minus, [&](int y) { return var(lower(p1, y)); });
                fill_lower(p0, in_plus, [&](int y) { return var(lower(p1, y)); });
                Substitution theta(p1.body.size());
                fill_lower(p1, theta, [](int y) { return var(y); });
                for (std::size_t c2 = 0; c2 < columns_.size(); ++c2) {
                    for (int j = 0; j <= lay0[c2].children; ++j) {
                        in_minus[cell(p0, c2, j)] = var(cell(p1, c2, j));
                        in_plus[cell(p0, c2, j)] = var(cell(p1, c2, j));
                        theta[cell(p1, c2, j)] = sigma0[cell(p0, c2, j)];
                    }
                    for (int j = 1; j <= lay0[c2].children; ++j) {
                        int tgt = child(p1, c2, j);
                        in_minus[child(p0, c2, j)] = var(tgt);
                        in_plus[child(p0, c2, j)] = var(c2 == c && j == rc ? d2 : tgt);
                        theta[tgt] = sigma0[child(p0, c2, j)];
                    }
                }
                int s_mid = side == Side::Left ? col.s[k - rc + 1] : col.s[rc - 1];
                theta[d2] = make_id(ps_.body.types[s_mid], var(s_mid));
                theta[alpha] = destr(unit_destr(side), witness(x));
                {
                    auto head = make_coh_head(p1.body, arr(subst(type0, in_minus), coh(head0, in_minus), coh(head0, in_plus)),
                                              label("whisker"));
                    cells.push_back(coh(head, theta));
                    witnesses.push_back({cells.back(), {destr(witness_destr(side), witness(x))}});
                }

                // Collapse the identity into the next stage.
                r[c] = rc - 1;
                Stage next = stage(side, r);
                Substitution kappa(p0.body.size());
                fill_lower(p0, kappa, [&](int y) { return var(lower(next.ps, y)); });
                for (std::size_t c2 = 0; c2 < columns_.size(); ++c2) {
                    int rr = r[c2];
                    if (c2 != c) {
                        for (int j = 0; j <= 2 * rr; ++j) kappa[cell(p0, c2, j)] = var(cell(next.ps, c2, j));
                        for (int j = 1; j <= 2 * rr; ++j) kappa[child(p0, c2, j)] = var(child(next.ps, c2, j));
                        continue;
                    }
                    for (int j = 0; j <= 2 * rc - 1; ++j)
                        kappa[cell(p0, c2, j)] = var(cell(next.ps, c2, j < rc ? j : j - 1));
                    for (int j = 1; j <= 2 * rc - 1; ++j) {
                        if (j < rc) kappa[child(p0, c2, j)] = var(child(next.ps, c2, j));
                        else if (j == rc) {
                            int q = cell(next.ps, c2, rc - 1);
                            kappa[child(p0, c2, j)] = make_id(next.ps.body.types[q], var(q));
                        } else kappa[child(p0, c2, j)] = var(child(next.ps, c2, j - 1));
                    }
                }
                bool done = true;
                for (int rr : r) done = done && rr == 0;
                Term target = coh(next.head, identity_sub(next.ps.body.size()));
                if (done) {
                    std::vector<int> zero(columns_.size(), 0);
                    Substitution pi = boundary(side, next.ps, zero);
                    const Term& b = side == Side::Left ? v_ : u_;
                    target = make_id(subst(base_, pi), subst(b, pi));
                }
                {
                    auto head = make_coh_head(next.ps.body, arr(next.type, coh(head0, kappa), target), label("unit"));
                    cells.push_back(coh(head, next.to_gamma));
                    witnesses.push_back({cells.back(), {}});
                }
                st = std::move(next);
            }
        }

        std::vector<Type> types;
        for (const auto& t : cells) types.push_back(ck_type(t));
        int i = side_index(side);
        out_.unit[i] = make_comp(cells, types);

        // The composite is a coherence whose top-dimensional arguments are the cells.
        const Term& comp = out_.unit[i];
        std::vector<int> keys = can_index(*comp->coh);
        std::vector<Term> ws;
        for (std::size_t j = 0; j < witnesses.size(); ++j) {
            const Term& cellj = witnesses[j].first;
            std::vector<int> ck = can_index(*cellj->coh);
            ws.push_back(can(cellj, ck, witnesses[j].second));
        }
        out_.witness[i] = can(comp, keys, ws);
    }

    Type ck_type(const Term& t) {
        Checker ck(out_.gamma_inv);
        return ck.infer(t);
    }

    CohHeadPtr h_;
    const PsContext& ps_;
    Type base_;
    Term u_, v_;
    int n_ = 0, top_ = 0;
    std::map<int, int> witness_of_;
    std::vector<Column> columns_;
    std::vector<int> op_iso_;
    CohHeadPtr op_head_;
    GenericInverse out_;
};

struct InverseCache {
    std::unordered_multimap<std::size_t, std::pair<CohHeadPtr, GenericInverse>> entries;
};

} // namespace

const GenericInverse& generic_inverse(const CohHeadPtr& h) {
    thread_local InverseCache cache;
    auto range = cache.entries.equal_range(h->hash);
    for (auto it = range.first; it != range.second; ++it)
        if (it->second.first == h || equal(*it->second.first, *h)) return it->second.second;
    GenericInverse g = Construction(h).build();
    return cache.entries.emplace(h->hash, std::make_pair(h, std::move(g)))->second.second;
}

Substitution gamma_inverse(const PsContext& ps, const Substitution& gamma, Side side,
                           const std::vector<Term>& witnesses, int n) {
    if (ps.dim < n) return gamma;
    OppositePs op = opposite_ps(n, ps);
    Substitution out(op.iso.size());
    std::map<int, std::size_t> index;
    for (std::size_t l = 0; l < ps.body.size(); ++l)
        if (ps.var_dim(static_cast<int>(l)) == n) index.emplace(static_cast<int>(l), index.size());
    for (std::size_t l = 0; l < op.iso.size(); ++l) {
        int y = op.iso[l];
        auto it = index.find(y);
        out[l] = it == index.end() ? gamma[y] : destr(inverse_destr(side), witnesses.at(it->second));
    }
    return out;
}

namespace {

Substitution instance(const Term& c, const std::vector<Term>& witnesses) {
    Substitution s = c->args;
    s.insert(s.end(), witnesses.begin(), witnesses.end());
    return s;
}

} // namespace

Term coh_inverse(const Term& c, Side side, const std::vector<Term>& witnesses) {
    const auto& g = generic_inverse(c->coh);
    return subst(g.inverse[side_index(side)], instance(c, witnesses));
}

Term coh_cancellator(const Term& c, Side side, const std::vector<Term>& witnesses) {
    const auto& g = generic_inverse(c->coh);
    return subst(g.unit[side_index(side)], instance(c, witnesses));
}

Term canonical_component(const Term& can_term, Destructor d) {
    const Term& c = can_term->args[0];
    std::vector<Term> w(can_term->args.begin() + 1, can_term->args.end());
    const auto& g = generic_inverse(c->coh);
    Substitution s = instance(c, w);
    switch (d) {
    case Destructor::LInv: return subst(g.inverse[0], s);
    case Destructor::RInv: return subst(g.inverse[1], s);
    case Destructor::LUnit: return subst(g.unit[0], s);
    case Destructor::RUnit: return subst(g.unit[1], s);
    case Destructor::LWit: return subst(g.witness[0], s);
    case Destructor::RWit: return subst(g.witness[1], s);
    }
    return nullptr;
}

} // namespace icatt
