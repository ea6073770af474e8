#pragma once

// Meta-operations: suspension, opposites, disks and spheres, the walking
// equivalence, classifying substitutions and the rec-induction context.
// With level-based variables, suspension prepends the two base objects and
// shifts every level by two, so suspend(disk(n)) is literally disk(n+1).

#include "icatt/syntax.hpp"

namespace icatt {

Term suspend(const Term& t);
Type suspend(const Type& a);
Context suspend(const Context& c);
Substitution suspend(const Substitution& s);
CohHeadPtr suspend(const CohHeadPtr& h);
RecHeadPtr suspend(const RecHeadPtr& h);

Term suspend_n(const Term& t, int k);
Type suspend_n(const Type& a, int k);
Context suspend_n(const Context& c, int k);
CohHeadPtr suspend_n(const CohHeadPtr& h, int k);

// Opposite at dimension n on CaTT syntax (raises on Inv-bearing syntax).
Term opposite(int n, const Term& t);
Type opposite(int n, const Type& a);

Context sphere(int n);             // n >= -1
Context disk(int n);               // n >= 0
Substitution sphere_inclusion(int n);   // disk(n) |- _ : sphere(n-1)
Context walking_equiv(int m);      // E^m, m >= 1
Substitution equiv_display(int m); // E^m |- _ : disk(m)

// Levels of the distinguished variables.
inline int disk_top(int n) { return 2 * n; }
inline int equiv_cell(int m) { return 2 * m + 1; }

// chi_A : Gamma |- _ : sphere(dim A) for categorical A, disk(n+1) for
// A = Inv(t) with t an (n+1)-cell.
Substitution classify_type(const Type& a);
// chi_{t,A} : Gamma |- _ : disk(dim A + 1) or walking_equiv(n+1).
Substitution classify_term(const Term& t, const Type& a);

// E_Ind(t) for a categorical t over E^{n+1} of the given type.
Context equiv_ind_context(int n, const Term& t, const Type& t_type);
inline int ih_left(int n) { return 2 * (n + 1) + 2; }
inline int ih_right(int n) { return 2 * (n + 1) + 3; }
// <r> : E^{n+1} |- _ : E_Ind(t) for r : Inv(t) over E^{n+1}.
Substitution instantiation(int n, const Term& r);

// The type of a destructor applied to e : Inv(B, t) with B = Arr(A,u,v).
Type destructor_type(Destructor d, const Term& e, const Type& inv_type);

// Built-in coherences.
CohHeadPtr id_head();
CohHeadPtr comp_head(int arity);
// id_A(a) for a : A.
Term make_id(const Type& a_type, const Term& a);
// Composite of cells t_i : Arr(A, a_{i-1}, a_i) along A.
Term make_comp(const std::vector<Term>& cells, const std::vector<Type>& types);

} // namespace icatt
