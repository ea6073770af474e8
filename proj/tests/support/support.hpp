#pragma once

// Shared test fixtures: the verified corpus, independent oracles and random
// generators of well-typed terms.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "icatt/elaborate.hpp"
#include "icatt/kernel.hpp"

namespace icatt::testing {

std::string source_path(const std::string& relative);
std::string read_text(const std::string& path);

// The proof corpus, elaborated and kernel-checked declaration by declaration.
struct Corpus {
    Environment env;
    std::vector<Elaborated> decls;
    double seconds = 0;
};
const Corpus& corpus();
Corpus load(const std::string& text);

// Result of checking a source text: the category of the first error, or
// empty when every declaration was accepted.
struct Outcome {
    int accepted = 0;
    std::string category;
    std::string message;
};
Outcome check_text(const std::string& text);

// A term together with the context it lives in.
struct Located {
    Term term;
    Context ctx;
};

// Every can subterm of a declaration, including those inside rec heads.
std::vector<Located> can_occurrences(const Decl& d);

// Declaration body and every argument of every schema instance.
std::vector<Located> corpus_terms(const Elaborated& e);

// Contexts of rec components (0-4 over E^{n+1}, 5-6 over E_Ind).
Context rec_component_context(const RecHead& h, int component);

// Pasting-scheme recognition by saturating the four derivation rules.
bool ps_by_rules(const Context& c);

// All well-formed contexts of Obj/Arr entries with at most max_entries
// entries and entry dimension at most max_dim.
std::vector<Context> all_contexts(int max_entries, int max_dim);
Context random_context(std::mt19937_64& rng, int entries, int max_dim);

// Neutral categorical terms of dimension n over walking_equiv(1), found by
// typing every destructor string over the variables.
std::vector<Term> brute_force_neutrals(int n);

// Random invertible 2-cells over an Inv-free context, with their canonical
// invertibility structures, and categorical terms built from them.
struct Invertible {
    Term cell;
    Type type;
    Term witness;
};

// coind(t, L(w), R(w), ...) for a structure w on t.
Term eta_components(const Invertible& w);

class RandomTerms {
public:
    explicit RandomTerms(std::uint64_t seed);

    const Context& context() const { return ctx_; }
    Invertible invertible();
    Term categorical();
    // A coind over a random invertible cell, mixing left and right data of
    // two structures on the same cell.
    Term coinductive();

private:
    Term bracket(const Context& ps, int lo, int hi, int depth);
    std::vector<int> random_path();

    std::mt19937_64 rng_;
    Context ctx_;
    std::vector<std::vector<int>> out_;  // object level -> arrows leaving it
    std::vector<int> objects_;
    int pick(int n);
};

} // namespace icatt::testing
