#pragma once

// The beta/eta rewrite system: full beta-reduction, eta-expansion of
// invertibility structures guarded by dimension and blocked under
// destructors, and the conservativity erasure check.

#include <vector>

#include "icatt/syntax.hpp"

namespace icatt {

Term beta_reduce(const Term& t);
Type beta_reduce(const Type& a);

// One-step reducts at every redex position (for confluence tests).
std::vector<Term> one_step_reducts(const Term& t);

bool convertible(const Term& a, const Term& b);
bool convertible(const Type& a, const Type& b);

// Normal form of a term over c; Inv-typed positions (not under a
// destructor) whose subject has dimension at most `guard` are expanded
// once into a coind and their components normalised.
Term nf(const Context& c, const Term& t, int guard);
Type nf(const Context& c, const Type& a);
// Guard defaults to the dimension of the entity.
Term nf(const Context& c, const Term& t);

// coind(t, L(e), R(e), LU(e), RU(e), LW(e), RW(e)) for e : Inv(t).
Term eta_expand(const Term& e, const Type& inv_type);

// True iff the normal form lies in the CaTT fragment.
bool erase_check(const Context& c, const Term& t);
bool erase_check(const Context& c, const Type& a);
bool is_catt(const Term& t);
bool is_catt(const Type& a);

int component_index(Destructor d);

} // namespace icatt
