#pragma once

// Finitary content of the walking equivalence E^1: its neutral categorical
// terms, the truncations E^{1,n} built by pullbacks along display maps, and
// the comparison maps gamma^n : E^{1,n} -> E^1.

#include <string>
#include <vector>

#include "icatt/syntax.hpp"

namespace icatt {

// Neutral categorical terms of exact dimension n over walking_equiv(1):
// variables and destructor chains over the equivalence variable.
std::vector<Term> enumerate_neutrals(int n);

// 3 * 2^(n-1) for n >= 2, 3 for n = 1, 2 for n = 0.
long long neutral_count_formula(int n);

// Pullback of the display map gamma_ext -> gamma (gamma_ext extends gamma by
// its trailing entries) along f : delta -> gamma.
struct Pullback {
    Context ctx;             // delta extended by the substituted entries
    Substitution to_delta;   // ctx -> delta (weakening)
    Substitution to_ext;     // ctx -> gamma_ext
};
Pullback pullback_along_display(const Context& delta, const Substitution& f, const Context& gamma_ext,
                                std::size_t gamma_size, const std::string& suffix = "");

// E^{1,n} with i^n : E^{1,n} -> E^{1,n-1} and f^n, g^n : E^{1,n} -> Sigma E^{1,n-1}.
struct Truncation {
    int n = 0;
    Context ctx;
    Substitution i, f, g;  // empty for n = 0
};

constexpr int kDefaultTruncationBound = 5;

// Raises Error(Bound) when n exceeds bound.
Truncation equiv_truncation(int n, int bound = kDefaultTruncationBound);

// Concrete-syntax telescope of a context, e.g. "(x : *) (y : *) (u : x -> y)".
std::string telescope_text(const Context& c);

struct GammaReport {
    int n = 0;
    bool ok = true;
    Substitution gamma;                   // E^{1,n} -> E^1
    std::vector<std::string> mappings;    // "u -> d1", one per variable
    std::vector<std::string> problems;    // empty iff ok
    bool well_typed = false;
    bool bijective = false;
    bool restricts = false;               // gamma^n agrees with gamma^{n-1} along i^n
    bool left_compatible = false;         // f^n equation
    bool right_compatible = false;        // g^n equation
};

// Builds gamma^n, kernel-checks it and compares its variable image with the
// neutrals of dimension <= n.
GammaReport check_gamma(int n, int bound = kDefaultTruncationBound);

std::string format_report(const GammaReport& r);

} // namespace icatt
