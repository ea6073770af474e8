#pragma once

// Parser for the concrete .catt syntax.

#include <string>
#include <vector>

#include "icatt/surface.hpp"

namespace icatt {

// Raises a located Error(Syntax) on malformed input.
std::vector<SurfaceDecl> parse(const std::string& text);

} // namespace icatt
