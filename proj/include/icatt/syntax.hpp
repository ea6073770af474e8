#pragma once

// Raw syntax of ICaTT. Variables are de Bruijn levels: a variable is the
// position of its entry in the ambient context, so contexts compare up to
// alpha-renaming by comparing their types only. Names are kept for printing.

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "icatt/error.hpp"

namespace icatt {

enum class Destructor : std::uint8_t { LInv, RInv, LUnit, RUnit, LWit, RWit };

inline constexpr std::array<Destructor, 6> all_destructors = {
    Destructor::LInv, Destructor::RInv, Destructor::LUnit,
    Destructor::RUnit, Destructor::LWit, Destructor::RWit};

std::string_view destructor_name(Destructor d);
inline bool is_witness(Destructor d) {
    return d == Destructor::LWit || d == Destructor::RWit;
}

struct TermNode;
struct TypeNode;
struct CohHead;
struct RecHead;

using Term = std::shared_ptr<const TermNode>;
using Type = std::shared_ptr<const TypeNode>;
using CohHeadPtr = std::shared_ptr<const CohHead>;
using RecHeadPtr = std::shared_ptr<const RecHead>;

// Assignments indexed by the level of the codomain variable. The codomain
// context is carried alongside by callers; null entries are undefined and
// raise an error when looked up.
using Substitution = std::vector<Term>;

enum class TypeKind : std::uint8_t { Obj, Arr, Inv };

struct TypeNode {
    TypeKind kind = TypeKind::Obj;
    Type base;   // Arr, Inv
    Term src;    // Arr: source; Inv: subject
    Term tgt;    // Arr: target
    int dim = -1;
    std::size_t hash = 0;
    bool has_meta = false;
};

struct Context {
    std::vector<std::string> names;
    std::vector<Type> types;

    std::size_t size() const { return types.size(); }
    bool empty() const { return types.empty(); }
    void push(std::string name, Type type) {
        names.push_back(std::move(name));
        types.push_back(std::move(type));
    }
};

enum class TermKind : std::uint8_t { Var, Meta, Coh, Coind, Rec, Can, Destr };

struct TermNode {
    TermKind kind = TermKind::Var;
    Destructor destr = Destructor::LInv;
    int index = 0;                 // Var: level; Meta: id
    CohHeadPtr coh;                // Coh
    RecHeadPtr rec;                // Rec
    std::vector<Term> args;        // Coh/Rec: substitution; Coind: seven
                                   // components; Can: subject then
                                   // witnesses; Destr: argument
    std::vector<int> keys;         // Can: ps levels of witnessed variables
    std::size_t hash = 0;
    bool has_meta = false;
    int scope = 0;                 // one more than the largest level used
};

struct CohHead {
    Context ps;
    Type type;
    std::string label;
    std::size_t hash = 0;
};

enum RecComponent { kT = 0, kTL, kTR, kTLU, kTRU, kTILU, kTIRU };

struct RecHead {
    int n = 0;                     // seed context is E^{n+1}
    std::array<Term, 7> comps;
    std::string label;
    std::size_t hash = 0;
};

// Construction.
Type obj();
Type arr(Type base, Term src, Term tgt);
Type inv(Type base, Term subject);
Term var(int level);
Term meta(int id);
CohHeadPtr make_coh_head(Context ps, Type type, std::string label = "");
RecHeadPtr make_rec_head(int n, std::array<Term, 7> comps, std::string label = "");
Term coh(CohHeadPtr head, Substitution sub);
Term coind(std::array<Term, 7> comps);
Term rec(RecHeadPtr head, Substitution sub);
Term can(Term subject, std::vector<int> keys, std::vector<Term> witnesses);
Term destr(Destructor d, Term arg);

Substitution identity_sub(std::size_t n);

// Alpha-equality (levels make this structural equality; labels ignored).
bool equal(const Term& a, const Term& b);
bool equal(const Type& a, const Type& b);
bool equal(const CohHead& a, const CohHead& b);
bool equal(const RecHead& a, const RecHead& b);
bool equal_ctx(const Context& a, const Context& b);
bool equal_sub(const Substitution& a, const Substitution& b);

// Substitution calculus.
Term subst(const Term& t, const Substitution& s);
Type subst(const Type& a, const Substitution& s);
Substitution compose(const Substitution& d, const Substitution& g);

// Dimension of a type; dim(Inv(A,t)) = dim A + 1.
inline int dimension(const Type& a) { return a->dim; }
int dimension(const Context& c);

// Free variables (sorted, distinct levels).
std::vector<int> variables_used(const Term& t);
std::vector<int> variables_used(const Type& a);

// Downward closure of a set of levels through the types of the variables.
std::vector<bool> closure(const Context& c, const std::vector<int>& levels);

// Weakening: a term over a prefix of a context is also a term over it, so
// weakening is the identity on syntax. Shifting adds an offset to levels.
Term shift(const Term& t, int offset);
Type shift(const Type& a, int offset);

std::size_t term_size(const Term& t);
bool is_categorical(const Type& a);

} // namespace icatt
