#pragma once

// Translation of surface declarations into kernel declarations: implicit
// arguments by first-order unification, wildcards, implicit suspension of
// schemas, the built-in id and n-ary comp, inlining of let definitions and
// resolution of the IHleft/IHright markers in rec bodies.

#include <string>
#include <vector>

#include "icatt/kernel.hpp"
#include "icatt/surface.hpp"

namespace icatt {

// One application of a declared schema: the (suspended) parameter context
// and the substitution chosen for it.
struct Instance {
    std::string schema;
    int suspension = 0;
    Context params;
    Substitution args;
};

struct Elaborated {
    Decl decl;
    std::vector<Instance> instances;  // over decl.ctx, or the rec induction context
    std::vector<Context> instance_contexts;
};

// Elaborates one declaration against the environment (which is not
// modified). Errors carry the source location of the innermost expression.
Elaborated elaborate_decl(const Environment& env, const SurfaceDecl& d);

// Builds the context of a pasting-scheme shorthand.
Context ps_context(const PsGroup& g);

} // namespace icatt
