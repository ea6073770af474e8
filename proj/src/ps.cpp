#include "icatt/ps.hpp"

#include <algorithm>

namespace icatt {

int PsContext::level_at(const std::vector<int>& path, int j) const {
    int n = 0;
    for (int c : path) n = nodes[n].children.at(c - 1);
    return nodes[n].cells.at(j);
}

std::vector<int> PsContext::path_of(int node) const {
    std::vector<int> path;
    while (nodes[node].parent >= 0) {
        path.push_back(nodes[node].index_in_parent);
        node = nodes[node].parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

Shape PsContext::shape() const {
    std::function<Shape(int)> go = [&](int n) {
        Shape s;
        for (int c : nodes[n].children) s.children.push_back(go(c));
        return s;
    };
    return go(0);
}

namespace {

std::string default_name(int level, int depth) {
    static const char letters[] = "xfabcdeg";
    return std::string(1, letters[depth % 8]) + std::to_string(level);
}

void compute_boundaries(PsContext& ps) {
    std::vector<bool> is_src(ps.body.size(), false), is_tgt(ps.body.size(), false);
    for (const auto& t : ps.body.types) {
        if (t->kind != TypeKind::Arr) continue;
        if (t->src->kind == TermKind::Var) is_src[t->src->index] = true;
        if (t->tgt->kind == TermKind::Var) is_tgt[t->tgt->index] = true;
    }
    ps.sources.clear();
    ps.targets.clear();
    for (std::size_t l = 0; l < ps.body.size(); ++l) {
        if (!is_tgt[l]) ps.sources.push_back(static_cast<int>(l));
        if (!is_src[l]) ps.targets.push_back(static_cast<int>(l));
    }
}

} // namespace

PsContext build_ps(const Shape& shape, const NameFn& names) {
    PsContext ps;
    auto name_of = [&](int level, int depth) {
        return names ? names(level, depth) : default_name(level, depth);
    };
    auto emit = [&](int node, Type type) {
        int level = static_cast<int>(ps.body.size());
        ps.body.push(name_of(level, ps.nodes[node].depth), std::move(type));
        ps.node_of.push_back(node);
        ps.pos_of.push_back(static_cast<int>(ps.nodes[node].cells.size()));
        ps.nodes[node].cells.push_back(level);
        ps.dim = std::max(ps.dim, ps.nodes[node].depth);
        return level;
    };
    ps.nodes.push_back(PsNode{});
    emit(0, obj());
    std::function<void(int, const Shape&)> go = [&](int n, const Shape& s) {
        int i = 0;
        for (const auto& child : s.children) {
            ++i;
            int prev = ps.nodes[n].cells.back();
            Type cell_type = ps.body.types[prev];
            int next = emit(n, cell_type);
            PsNode c;
            c.parent = n;
            c.depth = ps.nodes[n].depth + 1;
            c.index_in_parent = i;
            int id = static_cast<int>(ps.nodes.size());
            ps.nodes.push_back(c);
            ps.nodes[n].children.push_back(id);
            emit(id, arr(cell_type, var(prev), var(next)));
            go(id, child);
        }
    };
    go(0, shape);
    compute_boundaries(ps);
    return ps;
}

PsContext check_ps(const Context& c) {
    if (c.empty()) fail(ErrorKind::NotPs, "the empty context is not a pasting scheme");
    if (c.types[0]->kind != TypeKind::Obj)
        fail(ErrorKind::NotPs, "not a pasting scheme: entry 0 (" + c.names[0] + ") must be an object");

    struct Dyn {
        int parent;
        int index;
        std::vector<int> children;
        std::vector<int> cells;
    };
    std::vector<Dyn> nodes{{-1, 0, {}, {0}}};
    int dangling_node = 0;
    auto dangling_level = [&] { return nodes[dangling_node].cells.back(); };

    std::size_t i = 1;
    while (i < c.size()) {
        auto where = [&](std::size_t at) {
            return "not a pasting scheme: entry " + std::to_string(at) + " (" + c.names[at] + ")";
        };
        if (i + 1 >= c.size()) fail(ErrorKind::NotPs, where(i) + " is not followed by a cell");
        const Type& a = c.types[i];
        if (a->kind == TypeKind::Inv) fail(ErrorKind::NotPs, where(i) + " has an invertibility type");
        while (c.types[dangling_level()]->dim > a->dim && nodes[dangling_node].parent >= 0) {
            dangling_node = nodes[dangling_node].parent;
        }
        int x = dangling_level();
        if (!equal(c.types[x], a))
            fail(ErrorKind::NotPs, where(i) + " does not extend the dangling variable " + c.names[x]);
        Type expected = arr(a, var(x), var(static_cast<int>(i)));
        if (!equal(c.types[i + 1], expected))
            fail(ErrorKind::NotPs, where(i + 1) + " is not a cell from " + c.names[x] + " to " + c.names[i]);
        nodes[dangling_node].cells.push_back(static_cast<int>(i));
        int id = static_cast<int>(nodes.size());
        nodes[dangling_node].children.push_back(id);
        nodes.push_back(Dyn{dangling_node, static_cast<int>(nodes[dangling_node].children.size()), {},
                            {static_cast<int>(i + 1)}});
        dangling_node = id;
        i += 2;
    }

    std::function<Shape(int)> to_shape = [&](int n) {
        Shape s;
        for (int ch : nodes[n].children) s.children.push_back(to_shape(ch));
        return s;
    };
    PsContext ps = build_ps(to_shape(0), [&](int level, int) { return c.names[level]; });
    if (!equal_ctx(ps.body, c)) fail(ErrorKind::NotPs, "not a pasting scheme: entries out of order");
    ps.body = c;
    return ps;
}

bool full_type(const PsContext& ps, const Type& a, std::string* why) {
    auto report = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (a->kind != TypeKind::Arr) return report("only arrow types can be full");
    const auto& ctx = ps.body;
    auto cu = closure(ctx, variables_used(a->src));
    auto cv = closure(ctx, variables_used(a->tgt));
    auto missing = [&](const std::vector<bool>& used, const std::vector<int>& required) {
        for (int l : required)
            if (!used[l]) return l;
        return -1;
    };
    std::vector<int> all;
    for (std::size_t l = 0; l < ctx.size(); ++l) all.push_back(static_cast<int>(l));
    int mu = missing(cu, all), mv = missing(cv, all);
    if (mu < 0 && mv < 0) return true;

    int side_dim = a->dim;
    if (side_dim == ps.dim - 1) {
        std::vector<int> src_req, tgt_req;
        for (int l : ps.sources)
            if (ps.var_dim(l) <= ps.dim - 1) src_req.push_back(l);
        for (int l : ps.targets)
            if (ps.var_dim(l) <= ps.dim - 1) tgt_req.push_back(l);
        int ms = missing(cu, src_req), mt = missing(cv, tgt_req);
        if (ms < 0 && mt < 0) return true;
        if (ms >= 0) return report("source does not use the source variable " + ctx.names[ms]);
        return report("target does not use the target variable " + ctx.names[mt]);
    }
    if (mu >= 0) return report("source does not use the variable " + ctx.names[mu]);
    return report("target does not use the variable " + ctx.names[mv]);
}

std::vector<bool> explicit_mask(const Context& c) {
    std::vector<bool> used_later(c.size(), false);
    for (std::size_t j = 0; j < c.size(); ++j)
        for (int l : variables_used(c.types[j])) used_later[l] = true;
    std::vector<bool> mask(c.size());
    for (std::size_t l = 0; l < c.size(); ++l) mask[l] = !used_later[l];
    return mask;
}

OppositePs opposite_ps(int n, const PsContext& ps) {
    std::function<Shape(int)> flip = [&](int node) {
        Shape s;
        for (int ch : ps.nodes[node].children) s.children.push_back(flip(ch));
        if (ps.nodes[node].depth == n - 1) std::reverse(s.children.begin(), s.children.end());
        return s;
    };
    OppositePs out;
    out.ps = build_ps(flip(0));
    out.iso.assign(out.ps.body.size(), -1);
    std::function<void(int, int)> match = [&](int orig, int op) {
        const auto& o = ps.nodes[orig];
        const auto& p = out.ps.nodes[op];
        bool flipped = o.depth == n - 1;
        int c = static_cast<int>(o.children.size());
        for (int j = 0; j <= c; ++j) out.iso[p.cells[j]] = o.cells[flipped ? c - j : j];
        for (int i = 0; i < c; ++i) match(o.children[flipped ? c - 1 - i : i], p.children[i]);
    };
    match(0, 0);
    for (std::size_t l = 0; l < out.iso.size(); ++l) out.ps.body.names[l] = ps.body.names[out.iso[l]];
    return out;
}

Shape linear_shape(int n) {
    Shape s;
    s.children.resize(n);
    return s;
}

} // namespace icatt
