#pragma once

// Pasting schemes as Batanin trees. A node at depth d with c children is a
// stack of c+1 d-cells; its i-th child (1-based) is a stack of (d+1)-cells
// going from cell i-1 to cell i of the parent. Contexts are emitted in the
// unique order produced by the ps derivation rules.

#include <functional>
#include <string>
#include <vector>

#include "icatt/syntax.hpp"

namespace icatt {

struct Shape {
    std::vector<Shape> children;
};

struct PsNode {
    int parent = -1;
    int depth = 0;
    int index_in_parent = 0;       // 1-based position among siblings
    std::vector<int> children;     // node ids
    std::vector<int> cells;        // levels of the stack, size children+1
};

struct PsContext {
    Context body;
    std::vector<PsNode> nodes;     // node 0 is the root
    std::vector<int> node_of;      // level -> node id
    std::vector<int> pos_of;       // level -> position in the node's stack
    int dim = 0;
    std::vector<int> sources;      // levels that are not the target of another
    std::vector<int> targets;      // levels that are not the source of another

    // Level of the cell at position j of the node reached by following the
    // given 1-based child indices from the root.
    int level_at(const std::vector<int>& path, int j) const;
    std::vector<int> path_of(int node) const;
    Shape shape() const;
    int var_dim(int level) const { return body.types[level]->dim + 1; }
};

using NameFn = std::function<std::string(int level, int depth)>;

PsContext build_ps(const Shape& shape, const NameFn& names = {});
PsContext check_ps(const Context& c);

// Fullness of a type over a ps-context. On failure, `why` names the problem.
bool full_type(const PsContext& ps, const Type& a, std::string* why = nullptr);

// Locally maximal variables (not used in the type of any later entry).
std::vector<bool> explicit_mask(const Context& c);

// Opposite at dimension n: the children of every depth-(n-1) node are
// reversed. `iso[l]` is the level in the original context corresponding
// to level l of the opposite one.
struct OppositePs {
    PsContext ps;
    std::vector<int> iso;
};
OppositePs opposite_ps(int n, const PsContext& ps);

Shape linear_shape(int n);

} // namespace icatt
