#pragma once

#include <string>
#include <string_view>

#include "poislin/multivector.hpp"

namespace poislin {

/// Line-oriented structure file:
///
///     coords x11 x12 x21 x22 ; y1 y2
///     bracket x11 y1 : y1
///
/// `#` starts a comment. Pairs without an entry have zero bracket.
/// Throws ParseError (with line number) on syntax errors, duplicate pairs,
/// and unknown labels.
PolyVector parse_poisson_file(std::string_view text);

/// Canonical form: the coords line, then one bracket line per nonzero
/// component in canonical index order.
std::string serialize_poisson_file(const PolyVector& Pi);

PolyVector read_poisson_file(const std::string& path);

}  // namespace poislin
