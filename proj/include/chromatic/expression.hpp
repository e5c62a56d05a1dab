#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chromatic/module_algebra.hpp"

namespace chromatic {

// Grammar (whitespace insensitive):
//   expr := term ("+" term)*
//   term := ["S^" int] inv* ("R" | "BP") ["/" ("(" gen ("," gen)* ")" | "I" nat)]
//   inv  := ("p" | "v" idx) "^-1"
//   gen  := ("p" | "v" idx) ["^" (nat | "inf")]
// "/I k" expands to the quotient by (p, v1, ..., v_{k-1}); "0" parses to the
// zero module.  Summands that normalize to zero are dropped with a warning.
struct ParseResult {
    ModuleSum module;
    std::vector<std::string> warnings;
};

ParseResult parse_expression(const RingDescriptor& ring, std::string_view text);

}  // namespace chromatic
