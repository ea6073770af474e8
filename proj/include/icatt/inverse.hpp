#pragma once

// Inverses and cancellators of coherence cells, powering the computation
// rules of can. Everything is built once per coherence head over the
// context Gamma,(e_x : Inv(x)) for its top-dimensional variables x and then
// instantiated, which makes the construction stable under substitution.

#include <vector>

#include "icatt/ps.hpp"
#include "icatt/syntax.hpp"

namespace icatt {

enum class Side { Left, Right };

struct GenericInverse {
    Context gamma_inv;          // ps followed by one witness per top variable
    std::vector<int> top_vars;  // ps levels of the witnessed variables
    Term inverse[2];            // t^L, t^R
    Term unit[2];               // t^LU, t^RU
    Term witness[2];            // LWit / RWit reducts
};

const GenericInverse& generic_inverse(const CohHeadPtr& h);

// op^Gamma composed with gamma^L/gamma^R when the ps has cells of dimension
// n (the dimension of the coherence term); otherwise gamma itself. The
// result is indexed by the levels of the opposite ps.
Substitution gamma_inverse(const PsContext& ps, const Substitution& gamma, Side side,
                           const std::vector<Term>& witnesses, int n);

Term coh_inverse(const Term& c, Side side, const std::vector<Term>& witnesses);
Term coh_cancellator(const Term& c, Side side, const std::vector<Term>& witnesses);
Term canonical_component(const Term& can_term, Destructor d);

} // namespace icatt
