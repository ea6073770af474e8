#pragma once

// Printing of kernel syntax in the concrete surface notation.

#include <string>

#include "icatt/syntax.hpp"

namespace icatt {

std::string show(const Term& t, const Context& c);
std::string show(const Type& a, const Context& c);
std::string show(const Context& c);
std::string show(const Substitution& s, const Context& domain, const Context& codomain);

} // namespace icatt
