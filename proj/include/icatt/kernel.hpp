#pragma once

// The judgments of ICaTT: well-formed contexts, types, terms and
// substitutions, including the introduction rules for coherences, the
// invertibility type, its destructors and the coind/can/rec constructors.

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "icatt/ps.hpp"
#include "icatt/syntax.hpp"

namespace icatt {

class Checker {
public:
    explicit Checker(Context ctx);

    const Context& context() const { return ctx_; }

    void check_type(const Type& a);
    Type infer(const Term& t);
    void check(const Term& t, const Type& expected, const std::string& what = "term");
    void check_sub(const Substitution& s, const Context& target);

private:
    Type infer_uncached(const Term& t);
    Type infer_coind(const Term& t);
    Type infer_can(const Term& t);

    Context ctx_;
    std::unordered_map<const TermNode*, std::pair<Term, Type>> memo_;
};

void check_ctx(const Context& c);

// Validation of coherence and rec heads (cached per structure).
const PsContext& validate_coh_head(const CohHeadPtr& h);
// Returns the type of the seed term t over E^{n+1}.
Type validate_rec_head(const RecHeadPtr& h);

// Expected types of the seven coind/rec components for a seed t : b.
struct ComponentTypes {
    Type tl, tr, tlu, tru, tilu, tiru;
};
ComponentTypes component_types(const Term& t, const Type& b, const Term& tl, const Term& tr,
                               const Term& tlu, const Term& tru);

// Levels of the variables that a can witness family must cover.
std::vector<int> can_index(const CohHead& h);

std::string brief(const std::string& s, std::size_t limit = 600);

// Environment of checked top-level declarations.
enum class DeclKind { Coh, Let, Inv, Rec };

struct Decl {
    DeclKind kind = DeclKind::Let;
    std::string name;
    Context ctx;        // parameters
    Term body;          // Coh(head, id), inlined body, Coind, or Rec(head, id)
    Type type;          // type of body over ctx
    CohHeadPtr coh;     // for coh declarations
    RecHeadPtr rec;     // for rec declarations
};

class Environment {
public:
    const Decl* find(const std::string& name) const;
    void add(Decl d);
    const std::vector<Decl>& decls() const { return decls_; }

private:
    std::vector<Decl> decls_;
    std::map<std::string, std::size_t> index_;
};

// Re-checks an elaborated declaration from scratch and adds it.
void check_decl(Environment& env, Decl d);

} // namespace icatt
