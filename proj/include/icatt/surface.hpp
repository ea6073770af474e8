#pragma once

// Surface syntax of .catt files, as produced by the parser and consumed by
// the elaborator.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "icatt/syntax.hpp"

namespace icatt {

struct Span {
    int line = 0;
    int column = 0;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind { Name, Wild, Destr, Can, IH };

struct Expr {
    ExprKind kind = ExprKind::Wild;
    Span span;
    std::string name;             // Name: identifier
    std::vector<ExprPtr> args;    // Name: explicit arguments; Destr: one argument
    Destructor destr = Destructor::LInv;
    ExprPtr subject;              // Can: subject (Wild when omitted)
    std::vector<ExprPtr> witnesses;
    bool right = false;           // IH: IHright
};

enum class TyKind { Obj, Arr, Inv };

struct TyExpr;
using TyExprPtr = std::shared_ptr<const TyExpr>;

struct TyExpr {
    TyKind kind = TyKind::Obj;
    Span span;
    ExprPtr src;   // Arr: source; Inv: subject
    ExprPtr tgt;   // Arr: target
};

// A pasting-scheme shorthand group: cell names with sub-groups between them.
struct PsGroup {
    std::vector<std::string> names;
    std::vector<PsGroup> children;
};

struct Binder {
    std::string name;
    TyExprPtr type;
    Span span;
};

enum class DeclKeyword { Coh, Let, Inv, Rec };

struct SurfaceDecl {
    DeclKeyword keyword = DeclKeyword::Let;
    std::string name;
    Span span;
    std::optional<PsGroup> ps;      // ps shorthand, when used
    std::vector<Binder> telescope;  // explicit telescope otherwise
    TyExprPtr type;                 // coh, let (optional)
    ExprPtr body;                   // let
    std::vector<ExprPtr> components;  // inv, rec
};

std::string_view keyword_name(DeclKeyword k);

// Concrete-syntax printing (inverse of parsing up to layout).
std::string print(const Expr& e);
std::string print(const TyExpr& t);
std::string print(const SurfaceDecl& d);
std::string print(const std::vector<SurfaceDecl>& decls);

// Structural equality ignoring spans.
bool same(const Expr& a, const Expr& b);
bool same(const TyExpr& a, const TyExpr& b);
bool same(const SurfaceDecl& a, const SurfaceDecl& b);

} // namespace icatt
