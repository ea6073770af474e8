#include "icatt/printer.hpp"

#include <unordered_map>

#include "icatt/ps.hpp"

namespace icatt {

namespace {

const std::vector<bool>& mask_of(const CohHeadPtr& h) {
    thread_local std::unordered_map<const CohHead*, std::pair<CohHeadPtr, std::vector<bool>>> cache;
    auto it = cache.find(h.get());
    if (it == cache.end()) it = cache.emplace(h.get(), std::make_pair(h, explicit_mask(h->ps))).first;
    return it->second.second;
}

bool atomic(const Term& t) {
    switch (t->kind) {
    case TermKind::Var:
    case TermKind::Meta:
        return true;
    case TermKind::Coh: {
        const auto& m = mask_of(t->coh);
        for (bool b : m)
            if (b) return false;
        return true;
    }
    default:
        return false;
    }
}

struct Printer {
    const Context& c;

    std::string name(int level) const {
        if (level >= 0 && static_cast<std::size_t>(level) < c.size()) return c.names[level];
        return "#" + std::to_string(level);
    }

    std::string arg(const Term& t) const {
        std::string s = term(t);
        return atomic(t) ? s : "(" + s + ")";
    }

    std::string term(const Term& t) const {
        switch (t->kind) {
        case TermKind::Var: return name(t->index);
        case TermKind::Meta: return "?" + std::to_string(t->index);
        case TermKind::Coh: {
            std::string s = t->coh->label.empty() ? "coh" : t->coh->label;
            const auto& m = mask_of(t->coh);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i]) s += " " + arg(t->args[i]);
            return s;
        }
        case TermKind::Rec: {
            std::string s = t->rec->label.empty() ? "rec" : t->rec->label;
            return s + " " + arg(t->args.back());
        }
        case TermKind::Coind: {
            std::string s = "coind {";
            for (std::size_t i = 0; i < t->args.size(); ++i) s += (i ? " , " : " ") + term(t->args[i]);
            return s + " }";
        }
        case TermKind::Can: {
            std::string s = "can (" + term(t->args[0]) + " {";
            for (std::size_t i = 1; i < t->args.size(); ++i) s += (i > 1 ? " , " : " ") + term(t->args[i]);
            return s + (t->args.size() > 1 ? " })" : "})");
        }
        case TermKind::Destr:
            return std::string(destructor_name(t->destr)) + " (" + term(t->args[0]) + ")";
        }
        return "?";
    }

    std::string type(const Type& a) const {
        switch (a->kind) {
        case TypeKind::Obj: return "*";
        case TypeKind::Arr: return term(a->src) + " -> " + term(a->tgt);
        case TypeKind::Inv: return "Inv (" + term(a->src) + ")";
        }
        return "?";
    }
};

} // namespace

std::string show(const Term& t, const Context& c) { return Printer{c}.term(t); }
std::string show(const Type& a, const Context& c) { return Printer{c}.type(a); }

std::string show(const Context& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += " ";
        s += "(" + c.names[i] + " : " + Printer{c}.type(c.types[i]) + ")";
    }
    return s;
}

std::string show(const Substitution& s, const Context& domain, const Context& codomain) {
    std::string out = "<";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        std::string n = i < codomain.size() ? codomain.names[i] : "#" + std::to_string(i);
        out += n + " := " + (s[i] ? show(s[i], domain) : std::string("_"));
    }
    return out + ">";
}

} // namespace icatt
